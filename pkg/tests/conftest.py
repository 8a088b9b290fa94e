"""Shared independent oracles (mpmath) used across the test modules."""

import mpmath as mp
import pytest

mp.mp.dps = 40


def mp_dawson(x):
    """Dawson function from its Maclaurin series, summed at high precision."""
    # the alternating terms peak near exp(x^2); carry enough extra digits
    with mp.workdps(40 + int(float(x) ** 2 / 2.3)):
        x = mp.mpf(x)
        term = x
        total = x
        n = 0
        while True:
            n += 1
            term = term * (-2 * x * x) / (2 * n + 1)
            total += term
            if n > x * x and abs(term) < mp.mpf(10) ** (-40) * abs(total):
                return +total


def mp_erfc(x):
    """1 - (2/sqrt(pi)) * int_0^x exp(-t^2) dt by tanh-sinh quadrature."""
    # 1 - erf cancels down to exp(-x^2); carry enough extra digits
    with mp.workdps(40 + int(float(x) ** 2 / 2.3)):
        x = mp.mpf(x)
        return +(1 - 2 / mp.sqrt(mp.pi) * mp.quad(lambda t: mp.exp(-t * t), [0, x]))


@pytest.fixture(scope="session")
def dawson_oracle():
    return mp_dawson


@pytest.fixture(scope="session")
def erfc_oracle():
    return mp_erfc
