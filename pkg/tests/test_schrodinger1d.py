import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from landau_spectra import DomainError
from landau_spectra.potentials import Exponential1D, Gaussian1D, SquareWell, TabulatedWell, potential_from_dict
from landau_spectra.schrodinger1d import BirmanSchwinger, bs_count, ground_state_energy, weak_coupling_ratio

from oracles import square_well_count, square_well_ground_energy

WELL = SquareWell(1.0)


# ---- potentials

def test_analytic_moments():
    assert WELL.moment0 == pytest.approx(2.0) and WELL.moment1_abs == pytest.approx(1.0)
    g = Gaussian1D(0.7)
    assert g.moment0 == pytest.approx(0.7 * math.sqrt(2 * math.pi), rel=1e-12)
    assert g.moment1_abs == pytest.approx(2 * 0.49, rel=1e-12)
    e = Exponential1D(2.0)
    assert (e.moment0, e.moment1_abs) == pytest.approx((1.0, 0.5), rel=1e-12)


def test_tabulated_moments_by_quadrature():
    z = np.linspace(-9, 9, 721)
    t = TabulatedWell(tuple(z), tuple(np.exp(-z * z / 2)))
    ref = Gaussian1D(1.0)
    assert t.moment0 == pytest.approx(ref.moment0, rel=1e-6)
    assert t.moment1_abs == pytest.approx(ref.moment1_abs, rel=1e-6)


def test_potential_validation_and_round_trip():
    with pytest.raises(DomainError):
        SquareWell(1.0, amplitude=0.0)
    with pytest.raises(DomainError):
        Gaussian1D(-1.0)
    for v in (WELL, Gaussian1D(0.5, 2.0), Exponential1D(3.0)):
        assert potential_from_dict(v.to_dict()) == v


# ---- counts

def test_count_examples():
    assert bs_count(1e-10, 1.0, WELL) == 1
    assert bs_count(1e-10, 20.0, WELL) == square_well_count(20.0, 1.0, 1e-10) == 3
    assert bs_count(1.5, 1.0, Gaussian1D(1.0)) == 0


GRID = [(g, E) for g in (0.05, 0.5, 2.0, 5.0, 12.0) for E in (1e-8, 1e-3, 0.3, 3.0)]


@pytest.mark.parametrize("g, E", GRID)
def test_count_matches_square_well_oracle(g, E):
    assert bs_count(E, g, WELL) == square_well_count(g, 1.0, E)


@pytest.mark.parametrize("v", [WELL, Gaussian1D(1.0), Exponential1D(1.5)])
@pytest.mark.parametrize("g", [0.01, 0.3, 2.0, 8.0])
def test_number_of_states_sandwich(v, g):
    n = bs_count(1e-14, g, v)
    assert 1 <= n <= g * v.moment1_abs + 1


def test_count_monotone_in_g_and_E():
    v = Gaussian1D(0.8)
    Es = [3.0, 1.0, 0.1, 1e-3, 1e-6]
    bs = {E: BirmanSchwinger(v, E, 10.0) for E in Es}
    gs = np.linspace(0.1, 10.0, 25)
    table = np.array([[bs[E].count(g) for g in gs] for E in Es])
    assert np.all(np.diff(table, axis=1) >= 0)
    assert np.all(np.diff(table, axis=0) >= 0)


def test_coupling_above_reference_rejected():
    with pytest.raises(DomainError):
        BirmanSchwinger(WELL, 1e-3, 1.0).count(2.0)


# ---- ground state

@pytest.mark.parametrize("g", [1e-4, 1e-3, 0.01, 0.1, 0.5, 0.9])
def test_ground_state_matches_oracle(g):
    assert ground_state_energy(g, WELL) == pytest.approx(square_well_ground_energy(g, 1.0), rel=1e-6)


def test_ground_state_grid_converged():
    v = Gaussian1D(1.0)
    a = ground_state_energy(0.2, v, n_grid=512)
    b = ground_state_energy(0.2, v, n_grid=1024)
    assert abs(a - b) <= 1e-7 * a


def test_ground_state_increasing_in_g():
    v = Exponential1D(1.0)
    gs = [0.02, 0.05, 0.1, 0.2, 0.4]
    es = [ground_state_energy(g, v) for g in gs]
    assert all(b > a for a, b in zip(es[:-1], es[1:]))


def test_ground_state_refuses_outside_regime():
    with pytest.raises(DomainError):
        ground_state_energy(1.0, WELL)


@pytest.mark.parametrize("v", [WELL, Gaussian1D(1.0)])
def test_weak_coupling_law(v):
    g_small = 1e-3 / v.moment0
    rows = weak_coupling_ratio([0.1, 0.01, g_small], v)
    assert abs(rows[-1].ratio - 1) <= 0.02
    assert abs(rows[-1].ratio - 1) < abs(rows[0].ratio - 1)


def test_weak_coupling_rejects_bad_grids():
    with pytest.raises(DomainError):
        weak_coupling_ratio([0.01, 0.1], WELL)
    with pytest.raises(DomainError):
        weak_coupling_ratio([5.0, 0.1], WELL)
