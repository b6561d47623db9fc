#!/usr/bin/env python3
"""Emit every parameter-study preset as CSV (and plot them if matplotlib is
available).  Run from the repository root:

    python3 scripts/make_figures.py [--outdir figures] [--no-plots]
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from resint.cli import FIGURE_NAMES, figure_preset  # noqa: E402


def _plot(csv_paths: list[Path], outdir: Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    by_fig: dict[str, list[Path]] = {}
    for p in csv_paths:
        by_fig.setdefault(p.name.split("_")[0], []).append(p)
    for fig_name, paths in sorted(by_fig.items()):
        plt.figure(figsize=(6, 4))
        for p in sorted(paths):
            xs, ys = [], []
            for line in p.read_text().splitlines()[2:]:
                parts = line.split(",")
                xs.append(float(parts[1]))
                ys.append(float(parts[3]))
            plt.plot(xs, ys, label=p.stem.split("_", 1)[1])
        plt.xlabel(paths[0].read_text().splitlines()[2].split(",")[0])
        plt.ylabel("normalized value")
        plt.legend(fontsize=7)
        plt.tight_layout()
        png = outdir / f"{fig_name}.png"
        plt.savefig(png, dpi=150)
        plt.close()
        print(f"plotted {png}")


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", type=Path, default=Path("figures"))
    ap.add_argument("--no-plots", action="store_true")
    args = ap.parse_args()
    emitted: list[Path] = []
    for name in FIGURE_NAMES:
        paths = figure_preset(name, outdir=args.outdir)
        emitted.extend(paths)
        for p in paths:
            print(f"wrote {p}")
    if not args.no_plots:
        try:
            _plot(emitted, args.outdir)
        except ImportError:
            print("matplotlib not available; skipped plots")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
