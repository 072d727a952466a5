"""Root-system data for SL(d,R) and projections to the closed Weyl chamber.

The Cartan subspace is the sum-zero hyperplane of R^d; the closed
positive chamber consists of the sum-zero vectors with non-increasing
coordinates.  `cartan_projection` and `jordan_projection` send a matrix
to the log singular values resp. log eigenvalue moduli, sorted
descending and re-centered to sum zero (numerically det is only
approximately 1; the drift is logged at debug level).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .linalg import (ComputationError, LogScaledMatrix, as_matrix,
                     eigenvalue_moduli, singular_values, word_product)

log = logging.getLogger(__name__)

#: Eigenvalue-modulus gaps below this (in log scale) count as degenerate;
#: below the double-precision resolution of moduli for d <= 8.
DEFAULT_GAP_TOLERANCE = 1e-6

#: Squaring past this log-spread would underflow the base matrix spectrum.
_MAX_LOG_SPREAD = 600.0


def project_sum_zero(v):
    """Subtract the mean so the vector lies in the Cartan subspace."""
    u = np.asarray(v, dtype=float)
    drift = float(u.sum()) / len(u)
    if abs(drift) > 1e-12:
        log.debug("sum-zero drift %.3e re-centered", drift)
    return u - drift


def is_chamber_sorted(v, slack=1e-9):
    u = np.asarray(v, dtype=float)
    return bool(np.all(u[:-1] >= u[1:] - slack))


def cartan_projection(m):
    """Chamber vector of log singular values of ``m``.

    The result is sorted descending and re-centered to sum zero.
    """
    if isinstance(m, LogScaledMatrix):
        return project_sum_zero(np.log(singular_values(m.base)))
    return project_sum_zero(np.log(singular_values(as_matrix(m))))


def jordan_projection(m):
    """Chamber vector of log eigenvalue moduli of ``m``.

    Conjugation invariant and additive along powers:
    ``jordan_projection(matrix_power(g, n)) == n * jordan_projection(g)``.
    """
    if isinstance(m, LogScaledMatrix):
        return project_sum_zero(np.log(eigenvalue_moduli(m.base)))
    return project_sum_zero(np.log(eigenvalue_moduli(as_matrix(m))))


def jordan_projection_stable(generators, word, squarings=12):
    """Power-iteration estimate of the Jordan projection of a word.

    Evaluates the word as a `LogScaledMatrix`, squares it repeatedly and
    estimates the Jordan projection from the difference of Cartan
    projections of consecutive powers,

        (mu(g^(2^j)) - mu(g^(2^(j-1)))) / 2^(j-1),

    which converges exponentially in 2^j because the conjugation
    constants in mu(g^n) = n*lambda(g) + O(1) cancel.  Squaring stops
    early once the log-spread of the spectrum would underflow float64;
    the requested ``squarings`` is an upper bound.

    This is an oracle for `jordan_projection` that never forms the
    eigendecomposition.
    """
    if squarings < 1:
        raise ValueError("squarings must be >= 1")
    g = word_product(generators, word)
    mu_prev = cartan_projection(g)
    power = 1
    estimate = mu_prev.copy()
    for _ in range(squarings):
        spread = float(mu_prev[0] - mu_prev[-1])
        if spread * 2 * power > _MAX_LOG_SPREAD:
            break
        g = g.square()
        if not np.all(np.isfinite(g.base)):
            raise ComputationError("power iteration unstable")
        mu_next = cartan_projection(g)
        estimate = (mu_next - mu_prev) / power
        mu_prev = mu_next
        power *= 2
    return project_sum_zero(estimate)


def simple_root_value(v, k):
    """Value of the k-th simple root, u_k - u_{k+1}, 1-indexed."""
    u = np.asarray(v, dtype=float)
    if not 1 <= k <= len(u) - 1:
        raise ValueError(f"root index k={k} out of range for d={len(u)}")
    return float(u[k - 1] - u[k])


def root_values(v):
    """All simple-root values (u_1-u_2, ..., u_{d-1}-u_d) as an array."""
    u = np.asarray(v, dtype=float)
    return u[:-1] - u[1:]


def opposition_involution(v):
    """Coordinate reversal with sign flip: (u_1,...,u_d) -> (-u_d,...,-u_1).

    Involutive, and maps the k-th simple root to the (d-k)-th.
    """
    u = np.asarray(v, dtype=float)
    return -u[::-1]


@dataclass(frozen=True)
class Loxodromy:
    """Outcome of a loxodromy check with the witnessing root gaps."""

    ok: bool
    gaps: np.ndarray

    def __bool__(self):
        return self.ok


def is_loxodromic(m, gap_tolerance=DEFAULT_GAP_TOLERANCE):
    """Check that all eigenvalue moduli of ``m`` are distinct.

    Returns a `Loxodromy` carrying the vector of simple-root gaps of the
    Jordan projection; truthy iff every gap exceeds ``gap_tolerance``.
    """
    base = m.base if isinstance(m, LogScaledMatrix) else as_matrix(m)
    lam = jordan_projection(base)
    gaps = root_values(lam)
    return Loxodromy(bool(np.all(gaps > gap_tolerance)), gaps)


def sl2_translation_length(m):
    """2*log of the top eigenvalue modulus: the single root value in SL(2)."""
    lam = jordan_projection(m)
    return float(lam[0] - lam[1])
