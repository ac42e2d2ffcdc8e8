import numpy as np
import pytest

from lwlab import burgers_flux, make_shock_config


@pytest.fixture(scope="session")
def cfg():
    return make_shock_config(burgers_flux(), 0.5, -0.5, 0.5)


@pytest.fixture(scope="session")
def params(cfg):
    return cfg.spectral_params()


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


def random_triple(rng, interior=True):
    """Courant triple with alpha_m between the end values (convex-flux case)."""
    al = rng.uniform(0.05, 0.95)
    ar = rng.uniform(-0.95, -0.05)
    if interior:
        am = rng.uniform(ar + 0.01, al - 0.01)
    else:
        am = rng.uniform(-3.0, 3.0)
    return al, ar, am
