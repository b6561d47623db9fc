#!/usr/bin/env python3
"""Populate the on-disk oracle cache used by the test suite.

Generates the 20-config certification panel at n_max = 1e7 and the
100-config agreement suite at n_max = 1e5, both at 60 significant digits.
Expensive (roughly an hour on two cores); results are content-addressed, so
re-runs are no-ops.  Run from the repository root:

    python3 scripts/generate_oracle_cache.py [--workers N]
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from resint.oracle import (  # noqa: E402
    agreement_suite,
    brute_force_sum,
    certification_panel,
)

PANEL_N_MAX = 10_000_000
SUITE_N_MAX = 100_000
DIGITS = 60


def _job(tag, kind, config, n_max):
    t0 = time.time()
    rep = brute_force_sum(kind, config, n_max=n_max, precision_digits=DIGITS)
    return tag, time.time() - t0, rep.value[:24]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--workers", type=int, default=2)
    ap.add_argument("--skip-panel", action="store_true")
    ap.add_argument("--skip-suite", action="store_true")
    args = ap.parse_args()

    jobs = []
    if not args.skip_panel:
        for i, (kind, cfg) in enumerate(certification_panel()):
            jobs.append((f"panel[{i:02d}] a={cfg.a_r:g}", kind, cfg, PANEL_N_MAX))
    if not args.skip_suite:
        for i, (kind, cfg) in enumerate(agreement_suite()):
            jobs.append((f"suite[{i:03d}] a={cfg.a_r:.3g}", kind, cfg, SUITE_N_MAX))

    t0 = time.time()
    done = 0
    with ProcessPoolExecutor(max_workers=args.workers) as ex:
        futures = [ex.submit(_job, *j) for j in jobs]
        for fut in as_completed(futures):
            tag, dt, head = fut.result()
            done += 1
            print(f"[{done}/{len(jobs)}] {tag}: {dt:.1f}s {head}...", flush=True)
    print(f"total {time.time() - t0:.0f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
