import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from landau_spectra import DomainError, FieldConfig, UnsupportedError
from landau_spectra.asymptotics import (AsymptoticLaw, coefficient, coefficient_inverse, prime_pi,
                                        quasi_classical_2d, quasi_classical_3d)
from landau_spectra.potentials import SquareWell
from landau_spectra.profiles import Disk, PowerLaw, SuperGaussian, Tabulated

B1 = FieldConfig(1.0)


def law(beta, mu=1.0, b=1.0):
    return AsymptoticLaw(beta, mu, FieldConfig(b))


def test_coefficient_examples():
    assert coefficient(law(1.0, 0.5), 10.0) == pytest.approx(10 / math.log(2), rel=1e-14)
    assert coefficient(law(math.inf), math.e ** 2) == pytest.approx(math.e ** 2 / 2, rel=1e-14)
    assert coefficient(law(2.0), 100.0) == pytest.approx(200 / math.log(100), rel=1e-14)
    assert coefficient(law(0.5, 2.0, 3.0), 8.0) == pytest.approx(1.5 * 16.0, rel=1e-14)


@pytest.mark.parametrize("kappa", [math.e, 1.0, -3.0])
def test_coefficient_domain(kappa):
    with pytest.raises(DomainError):
        coefficient(law(1.0), kappa)


@pytest.mark.parametrize("beta", [0.3, 0.5, 1.0, 1.5, 2.0, 7.0, math.inf])
def test_coefficient_strictly_increasing(beta):
    ks = np.geomspace(math.e * (1 + 1e-9), 1e8, 400)
    vals = [coefficient(law(beta, 0.7, 1.3), k) for k in ks]
    assert np.all(np.diff(vals) > 0)


def test_inverse_examples():
    assert coefficient_inverse(law(1.0, 0.5), 7).exact == pytest.approx(7 * math.log(2), rel=1e-14)
    assert coefficient_inverse(law(0.5, 3.0, 2.0), 4).exact == pytest.approx(6.0, rel=1e-14)
    inv = coefficient_inverse(law(2.0), 500)
    assert coefficient(law(2.0), inv.exact) == pytest.approx(500, rel=1e-9)


@given(st.sampled_from([0.4, 1.0, 1.7, 3.0, math.inf]), st.floats(20, 1e7))
def test_inverse_round_trip(beta, k):
    lw = law(beta, 0.8, 1.0)
    inv = coefficient_inverse(lw, k)
    assert coefficient(lw, inv.exact) == pytest.approx(k, rel=1e-12)


def test_inverse_below_range_is_nan():
    assert math.isnan(coefficient_inverse(law(2.0), 1.0).exact)
    with pytest.raises(DomainError):
        coefficient_inverse(law(2.0), 0.5)


@pytest.mark.parametrize("beta, target", [(2.0, 0.5), (math.inf, 1.0)])
def test_surrogate_consistency(beta, target):
    devs = [abs(coefficient_inverse(law(beta), k).exact / (k * math.log(k)) - target) / target
            for k in (1e5, 1e6)]
    assert devs[0] <= 0.05
    assert devs[1] < devs[0]


def test_law_for_profile():
    assert law(1.0).regime == "gaussian"
    assert AsymptoticLaw.for_profile(Disk(1.0), B1).regime == "compact"
    assert AsymptoticLaw.for_profile(SuperGaussian(1.0, 3.0), B1).regime == "super-gaussian"
    with pytest.raises(UnsupportedError):
        AsymptoticLaw.for_profile(PowerLaw(2.0, 1.0), B1)


@pytest.mark.parametrize("lam, n", [(10, 4), (1.9, 0), (100, 25), (2, 1), (7919, 1000), (1e7, 664579)])
def test_prime_pi(lam, n):
    assert prime_pi(lam) == n


def test_prime_pi_budget():
    with pytest.raises(UnsupportedError):
        prime_pi(1e7 + 1)


def test_prime_number_theorem_window():
    for lam in np.geomspace(1e3, 1e6, 25):
        assert 0.9 <= prime_pi(lam) * math.log(lam) / lam <= 1.25


@given(st.floats(0.1, 3), st.floats(0.3, 3), st.floats(1e-12, 0.9))
def test_quasi_classical_super_gaussian(mu, beta, E):
    got = quasi_classical_2d(SuperGaussian(mu, beta), B1, E)
    assert got == pytest.approx(0.5 * (abs(math.log(E)) / mu) ** (1 / beta), rel=1e-9)


def test_quasi_classical_other_profiles():
    assert quasi_classical_2d(Disk(2.0), FieldConfig(3.0), 0.5) == pytest.approx(6.0)
    assert quasi_classical_2d(PowerLaw(2.0, 0.1), B1, 0.01) == pytest.approx(0.5 * 100.0, rel=1e-12)
    t = Tabulated((0.0, 1.0, 2.0), (1.0, 0.5, 0.0))
    assert quasi_classical_2d(t, B1, 0.5) == pytest.approx(0.5, rel=1e-8)


def test_quasi_classical_3d():
    v = SquareWell(1.0)  # integral 2
    E = 1e-8
    got = quasi_classical_3d(SuperGaussian(0.5, 1.0), v, B1, E)
    assert got == pytest.approx(0.5 * abs(math.log(math.sqrt(E))) / 0.5, rel=1e-9)
    assert quasi_classical_3d(Disk(1.5), v, B1, 1e-12) == pytest.approx(0.5 * 2.25)
    assert quasi_classical_3d(SuperGaussian(0.5, 1.0), v, B1, 4.0) == 0.0


@pytest.mark.parametrize("beta", [2.0, 5.0, math.inf])
def test_exact_and_surrogate_inverse_converge(beta):
    gaps = []
    for k in (1e3, 1e5, 1e7):
        inv = coefficient_inverse(law(beta), k)
        gaps.append(abs(inv.exact / inv.surrogate - 1))
    assert gaps[0] > gaps[1] > gaps[2]
