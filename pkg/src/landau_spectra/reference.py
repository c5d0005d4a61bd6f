"""Closed-form and transcendental reference solutions, independent of the numerical solvers."""
from __future__ import annotations

import math

from scipy.optimize import brentq


def square_well_count(g: float, a: float, E: float) -> int:
    """Bound states of -d2/dz2 - g*1_{|z|<a} below -E, by the quantization conditions.

    Even states: eta tan(eta a) = kappa, odd states: -eta cot(eta a) = kappa,
    with eta^2 + kappa^2 = g. Along each branch the left side grows from 0
    (resp. from -inf) to +inf as eta crosses the branch; a state lies below
    -E iff its kappa exceeds kappa0, i.e. iff eta0 = sqrt(g - E) lies past
    the crossing point on that branch.
    """
    if E >= g:
        return 0
    k0 = math.sqrt(E)
    eta0 = math.sqrt(g - E)
    count = 0
    n = 0
    while n * math.pi / a < eta0:  # even branch [n pi, (n+1/2) pi)/a
        if eta0 >= (n + 0.5) * math.pi / a or eta0 * math.tan(eta0 * a) > k0:
            count += 1
        n += 1
    n = 0
    while (n + 0.5) * math.pi / a < eta0:  # odd branch [(n+1/2) pi, (n+1) pi)/a
        if eta0 >= (n + 1) * math.pi / a or -eta0 / math.tan(eta0 * a) > k0:
            count += 1
        n += 1
    return count


def square_well_ground_energy(g: float, a: float) -> float:
    """Binding energy of the lowest even state, root of eta tan(eta a) = kappa."""
    top = min(math.sqrt(g), 0.5 * math.pi / a) * (1 - 1e-15)

    def f(eta):
        return eta * math.tan(eta * a) - math.sqrt(g - eta * eta)

    eta = brentq(f, 1e-300, top, xtol=1e-300, rtol=1e-15)
    return g - eta * eta
