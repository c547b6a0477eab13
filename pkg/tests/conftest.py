"""Shared fixtures: the published working point of the spinning-cavity model."""

import numpy as np
import pytest

from spinpb import HilbertConfig, SystemParams

TWO_PI = 2.0 * np.pi

GAMMA = TWO_PI * 0.55e6        # rad/s
OMEGA_B = TWO_PI * 11.0308e6   # rad/s
J = TWO_PI * 7.37e6            # rad/s

# published six-digit optimal pairs (delta/omega_b, Lambda/omega_b) per
# drive direction, delta_F = +/- 0.5 gamma
PAIRS_CW = [(-0.684495, 2.46157e-6), (0.654639, 2.45563e-6)]
PAIRS_CCW = [(0.679535, 2.46105e-6), (-0.659796, 2.47275e-6)]


@pytest.fixture(scope="session")
def working_params() -> SystemParams:
    """CW working point: K = 0.1 gamma, E = 0.005 gamma, delta_F = +0.5 gamma."""
    return SystemParams(
        gamma=GAMMA,
        omega_b=OMEGA_B,
        J=J,
        K=0.1 * GAMMA,
        E=0.005 * GAMMA,
        delta_F=0.5 * GAMMA,
    )


@pytest.fixture(scope="session")
def cfg55() -> HilbertConfig:
    return HilbertConfig(5, 5)
