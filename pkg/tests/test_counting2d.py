import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from landau_spectra import DomainError, FieldConfig, LogValue
from landau_spectra.asymptotics import AsymptoticLaw
from landau_spectra.counting2d import (CountBracket, LevelCounter, count_near_level, n_plus, theorem_ratio_2d)
from landau_spectra.profiles import Disk, Scaled, SuperGaussian, Tabulated, super_gaussian_envelopes
from landau_spectra.special_fns import log_reg_inc_gamma_lower

B1 = FieldConfig(1.0)
GAUSS = SuperGaussian(0.5, 1.0)  # eigenvalues 2^-(k+1) at q = 0


def geometric(n):
    return [LogValue.from_log(-j * math.log(2)) for j in range(n)]


def test_n_plus_examples():
    seq = geometric(40)
    assert n_plus(2.0 ** -10, seq) == 10
    assert n_plus(1.0, seq) == 0
    assert n_plus(5.0, seq, scale=3.0) == 0
    assert n_plus(0.25, seq) == 2  # equality excluded


@given(st.floats(1e-9, 2.0), st.floats(0.1, 3.0), st.floats(0.1, 3.0))
def test_n_plus_monotone(E, c1, c2):
    seq = geometric(60)
    lo, hi = sorted((c1, c2))
    assert n_plus(E, seq, lo) <= n_plus(E, seq, hi)
    assert n_plus(E * 1.5, seq, lo) <= n_plus(E, seq, lo)


def test_bracket_rejects_inversion():
    with pytest.raises(ValueError):
        CountBracket(3, 2, 0.01, True, 10)


@settings(max_examples=40, deadline=None)
@given(st.floats(-35.0, -1.0))
def test_gaussian_closed_form_count(log10E):
    E = 10.0 ** log10E
    br = count_near_level(0, GAUSS, GAUSS, B1, E, epsilon=0.0)
    expected = sum(1 for k in range(200) if 2.0 ** -(k + 1) > E)
    assert br.lower == br.upper == expected
    assert br.tail_certified
    if not float(math.log2(E)).is_integer():
        assert expected == math.ceil(abs(math.log2(E))) - 1


def test_above_sup_is_empty():
    br = count_near_level(1, GAUSS, GAUSS, B1, 1.02, epsilon=0.01)
    assert (br.lower, br.upper, br.tail_certified) == (0, 0, True)


@pytest.mark.parametrize("r, b", [(1.0, 1.0), (2.0, 1.0), (1.5, 3.0)])
@pytest.mark.parametrize("E", [1e-3, 1e-8, 1e-14])
def test_disk_matches_incomplete_gamma(r, b, E):
    br = count_near_level(0, Disk(r), Disk(r), FieldConfig(b), E, epsilon=0.0)
    t = b * r * r / 2
    expected = sum(1 for k in range(2000) if log_reg_inc_gamma_lower(k + 1.0, t).log > math.log(E))
    assert br.lower == br.upper == expected


@settings(max_examples=15, deadline=None)
@given(st.floats(-14, -2), st.floats(0.001, 0.5), st.floats(0.0, 0.5))
def test_sandwich_and_nesting(log10E, eps_big, frac):
    E = 10.0 ** log10E
    eps_small = eps_big * frac
    prof = SuperGaussian(1.0, 2.0)
    a = count_near_level(1, prof, prof, B1, E, epsilon=eps_small)
    c = count_near_level(1, prof, prof, B1, E, epsilon=eps_big)
    assert a.lower <= a.upper and c.lower <= c.upper
    assert c.lower <= a.lower and a.upper <= c.upper


def test_envelope_bracket():
    lo, hi = super_gaussian_envelopes(1.0, 1.0, 0.2, 1.0, 2.0)
    counter = LevelCounter(0, lo, hi, B1, 1e-12)
    prev = (0, 0)
    for E in (1e-3, 1e-6, 1e-9, 1e-12):
        br = counter.count(E, 0.01)
        assert br.lower <= br.upper and br.tail_certified
        assert br.lower >= prev[0] and br.upper >= prev[1]
        prev = (br.lower, br.upper)


def test_geometric_certificate_for_q1():
    br = count_near_level(1, SuperGaussian(1.0, 0.5), SuperGaussian(1.0, 0.5), B1, 1e-6, 0.01)
    assert br.tail_certified and br.k_scanned > br.upper


def test_budget_exhaustion_marks_uncertified():
    prof = Tabulated((0.0, 50.0, 60.0), (1.0, 1.0, 0.0))
    br = count_near_level(1, prof, prof, B1, 1e-6, 0.01, k_budget=40)
    assert not br.tail_certified


def test_theorem_ratio_closed_form():
    grid = [1e-4, 1e-6, 1e-8, 1e-10, 1e-12]
    rows = theorem_ratio_2d(0, GAUSS, B1, grid, epsilon=0.0)
    for row in rows:
        n = math.ceil(abs(math.log2(row.E))) - 1
        assert row.lower == row.upper == n
        assert row.ratio_lower == pytest.approx(n * math.log(2) / abs(math.log(row.E)), rel=1e-14)


def test_theorem_ratio_rejects_bad_grids():
    with pytest.raises(DomainError):
        theorem_ratio_2d(0, GAUSS, B1, [1e-6, 1e-4])
    with pytest.raises(DomainError):
        theorem_ratio_2d(0, GAUSS, B1, [0.5, 1e-4])
    with pytest.raises(DomainError):
        theorem_ratio_2d(0, GAUSS, B1, [])


def test_explicit_law_override():
    law = AsymptoticLaw(1.0, 0.5, B1)
    rows = theorem_ratio_2d(0, (Scaled(0.5, GAUSS), GAUSS), B1, [1e-5], 0.01, law=law)
    assert rows[0].lower <= rows[0].upper
