import numpy as np
import pytest

from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"


@pytest.fixture(scope="session")
def camera256() -> np.ndarray:
    from csimrec.pgmio import read_pgm

    return read_pgm(DATA_DIR / "camera256.pgm")


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
