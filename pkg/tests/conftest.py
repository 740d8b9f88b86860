from datetime import date, timedelta
from pathlib import Path

import numpy as np
import pytest

from robustts.series import Series

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


def make_series(values, start=date(2020, 1, 22)) -> Series:
    """Series with consecutive calendar dates starting at `start`."""
    values = np.asarray(values, dtype=float)
    dates = tuple(start + timedelta(days=i) for i in range(len(values)))
    return Series(dates, values)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20210322)
