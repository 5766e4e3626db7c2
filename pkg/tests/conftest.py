import numpy as np
import pytest
from hypothesis import settings

from freqloc.fields import BumpSpec, GridSpec, build_cauchy_data
from freqloc.spectral import transform_spectrum, window_split

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def standard_grid():
    return GridSpec(half_width=4.0, count=4096)


@pytest.fixture(scope="session")
def modulated_data(standard_grid):
    """The shift-scenario workhorse: width-0.5 bump modulated at zeta=8."""
    bump = BumpSpec(center=0.0, width=0.5, modulation_frequency=8.0)
    return build_cauchy_data(bump, standard_grid)


@pytest.fixture(scope="session")
def modulated_split(modulated_data):
    return transform_spectrum(modulated_data, k_max=438.0, k_count=1024)


@pytest.fixture(scope="session")
def low_band_window(modulated_data, modulated_split):
    """Fine re-sampling of the near-zero band, where certificates apply.

    The wide grid's spacing (about 0.86) steps over every admissible band,
    so band assertions against modulated_split would be vacuously true.
    """
    return window_split(modulated_data, modulated_split, k_top=0.29, k_count=1161)
