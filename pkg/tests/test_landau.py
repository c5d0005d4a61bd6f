import math

import numpy as np
import pytest
from scipy.integrate import quad

from landau_spectra import DomainError, FieldConfig, kernel_diagonal, weight_log_density
from landau_spectra.landau import log_weight
from landau_spectra.quadrature import locate_peak


def test_field_config_rejects_nonpositive():
    with pytest.raises(DomainError):
        FieldConfig(0.0)


def test_levels_spaced_by_2b():
    cfg = FieldConfig(1.7)
    es = [cfg.level(q).energy for q in range(6)]
    assert es[0] == 1.7
    assert np.allclose(np.diff(es), 3.4)


@pytest.mark.parametrize("b, expected", [(2 * math.pi, 1.0), (1.0, 1 / (2 * math.pi)), (4.0, 2 / math.pi)])
def test_kernel_diagonal(b, expected):
    assert kernel_diagonal(FieldConfig(b)) == pytest.approx(expected, rel=1e-15)


def test_weight_examples():
    assert weight_log_density(0, 0, 1.0).to_real() == pytest.approx(math.exp(-1), rel=1e-14)
    assert weight_log_density(0, 2, 2.0).to_real() == pytest.approx(2 * math.exp(-2), rel=1e-14)


def test_weight_domain():
    with pytest.raises(DomainError):
        weight_log_density(1, -2, 1.0)
    with pytest.raises(DomainError):
        weight_log_density(0, 0, 0.0)


@pytest.mark.parametrize("q", [0, 1, 2, 3])
@pytest.mark.parametrize("k", [-3, 0, 1, 5, 40, 200])
def test_weight_normalized(q, k):
    if k < -q:
        pytest.skip("k below -q")
    f = lambda x: math.exp(float(log_weight(q, k, x)[0]))
    top = k + 2 * q + 1
    pts = [0, max(top - 10 * math.sqrt(top), 0), top, top + 10 * math.sqrt(top), top + 60 * math.sqrt(top) + 60]
    total = sum(quad(f, a, b, limit=200, epsabs=0, epsrel=1e-13)[0] for a, b in zip(pts[:-1], pts[1:]))
    assert total == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("k", [10, 100, 1000])
def test_weight_peak_at_k_for_lowest_level(k):
    peak = locate_peak(lambda x: log_weight(0, k, x), 0.0, 3.0 * k)
    assert peak == pytest.approx(k, rel=1e-8)
