"""Independent reference implementations used only by the tests."""
from __future__ import annotations

import math

import mpmath
from landau_spectra.reference import square_well_count, square_well_ground_energy  # noqa: F401


def gamma_beta1_double_sum(q: int, k: int, mu: float, b: float) -> float:
    """gamma_{q,k}(mu) at beta = 1 by term-wise integration of the Laguerre square (mpmath)."""
    lam = mpmath.mpf(2 * mu) / b
    coeffs = [mpmath.binomial(q + k, q - m) * (-1) ** m / mpmath.factorial(m) for m in range(q + 1)]
    total = mpmath.mpf(0)
    for m, cm in enumerate(coeffs):
        for l, cl in enumerate(coeffs):
            if cm == 0 or cl == 0:
                continue
            p = k + m + l
            total += cm * cl * mpmath.gamma(p + 1) / (1 + lam) ** (p + 1)
    return float(total * mpmath.factorial(q) / mpmath.factorial(k + q))


def linear_simpson_eigenvalue(q: int, k: int, f_of_r, b: float, xi_max: float = 400.0, n: int = 200_001) -> float:
    """Composite Simpson in linear space over t = sqrt(xi); only usable for small k.

    The substitution xi = t^2 keeps profiles that depend on sqrt(xi) smooth.
    """
    import numpy as np
    from scipy.integrate import simpson
    from scipy.special import binom, factorial, gammaln

    t = np.linspace(0.0, math.sqrt(xi_max), n)
    xi = t * t
    # explicit sum; scipy's eval_genlaguerre rejects alpha <= -1
    lag = sum(binom(q + k, q - m) * (-xi) ** m / factorial(m) for m in range(q + 1))
    with np.errstate(divide="ignore", invalid="ignore"):
        # xi^k L^2 -> 0 at the origin unless k = 0 (for k < 0, L vanishes to order -k)
        log_w = gammaln(q + 1) - gammaln(k + q + 1) - xi + k * np.log(xi) + 2 * np.log(np.abs(lag))
        w = np.where(xi > 0, np.exp(log_w), lag ** 2 if k == 0 else 0.0)
    return float(simpson(f_of_r(np.sqrt(2 * xi / b)) * w * 2 * t, x=t))
