import numpy as np
import pytest

from heunrh.fuchsian import make_system


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


def random_system(rng, spread=0.1):
    """Non-resonant system with moderate parameters; resamples until valid."""
    for _ in range(100):
        try:
            return make_system(
                delta=complex(rng.uniform(0.15, 0.45), rng.uniform(-spread, spread)),
                alpha=tuple(complex(rng.uniform(0.1, 0.45), rng.uniform(-spread, spread))
                            for _ in range(3)),
                x=complex(rng.uniform(0.35, 0.75), rng.uniform(0.05, 0.35)),
                y=complex(rng.uniform(0.15, 0.55), rng.uniform(0.15, 0.55)),
                z=complex(rng.normal(0, 0.3), rng.normal(0, 0.3)),
                kappa=complex(rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5)),
            )
        except Exception:
            continue
    raise RuntimeError("could not sample a valid system")


def moderate_monodromy_fixture(rng, norm_cap=200.0, **kwargs):
    """(system, monodromy set) with representation entries below norm_cap.

    Absolute tolerances like 1e-8 on the cyclic product presuppose O(1)
    monodromy entries; nearly-reducible systems have entries ~1e6 where
    double precision can only deliver relative accuracy. Fixtures for the
    absolute criteria are therefore drawn at moderate scale."""
    from heunrh.monodromy import monodromy_matrices

    for _ in range(40):
        sys = random_system(rng)
        ms = monodromy_matrices(sys, **kwargs)
        if max(np.max(np.abs(M)) for M in ms.matrices) <= norm_cap:
            return sys, ms
    raise RuntimeError("could not sample a moderate-monodromy system")
