"""Every numeric default in one place. Experiments snapshot this table into their JSON sidecar."""
from __future__ import annotations

QUAD_TOL = 1e-12           # |delta log| target for Toeplitz eigenvalues
QUAD_TOL_LARGE_K = 1e-8    # acceptable relaxation for k > 1e5
EPSILON = 0.01             # (1 +/- eps) scaling in the counting sandwich
K_BUDGET = 20_000          # max angular momenta scanned per 2D count
CHANNEL_BUDGET = 5_000     # max channels summed per 3D count
CERT_WINDOW = 3            # consecutive decreasing ratios required by the tail certificate
CERT_MARGIN = 0.5          # headroom below threshold required by the tail certificate
N_GRID = 512               # initial Nystrom nodes for the 1D operator
MAX_DOUBLINGS = 3          # grid doublings before a 1D count is declared unstable
GROUND_STATE_RTOL = 1e-9   # grid-convergence target for the 1D ground state
SIEVE_LIMIT = 10_000_000   # prime_pi table size
SEED = 0


def snapshot() -> dict:
    return {k: v for k, v in globals().items() if k.isupper()}
