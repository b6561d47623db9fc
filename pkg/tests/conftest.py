import os
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent

# Oracle reports live in the repository; tests must find them regardless of
# the pytest invocation directory.
os.environ.setdefault("RESINT_ORACLE_CACHE", str(REPO_ROOT / "data" / "oracle_cache"))


@pytest.fixture(scope="session")
def cache_dir() -> Path:
    return Path(os.environ["RESINT_ORACLE_CACHE"])
