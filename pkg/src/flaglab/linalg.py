"""Dense real linear algebra kernel.

Singular values and eigenvalue moduli of square matrices, exterior
(compound) powers, and overflow-free evaluation of long matrix words
through the `LogScaledMatrix` representation, which keeps an operator-norm-1
base matrix together with the factored-out natural-log magnitude.

All functions are pure and operate on plain float64 numpy arrays.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np


class ComputationError(RuntimeError):
    """A numerical operation could not produce a reliable result."""


def as_matrix(m):
    """Coerce input to a square float64 array and check finiteness."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def check_unimodular(m, tol=1e-6):
    """Raise if |det m| differs from 1 beyond a condition-scaled tolerance."""
    a = as_matrix(m)
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= 0.0:
        raise ComputationError("degenerate matrix")
    cond = s[0] / s[-1]
    det = np.linalg.det(a)
    if abs(abs(det) - 1.0) > tol * max(1.0, cond):
        raise ValueError(f"matrix is not unimodular: |det| = {abs(det)!r}")
    return a


def singular_values(m):
    """Return the singular values of ``m``, sorted descending.

    Parameters
    ----------
    m : array_like
        Nonsingular square matrix.

    Returns
    -------
    ndarray
        Positive singular values in non-increasing order.

    Raises
    ------
    ComputationError
        If the matrix is singular to working precision
        ("degenerate matrix").
    """
    a = as_matrix(m)
    try:
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ComputationError("degenerate matrix") from exc
    if s[-1] <= 0.0 or not np.all(np.isfinite(s)):
        raise ComputationError("degenerate matrix")
    return s


def eigenvalue_moduli(m):
    """Return the moduli of the complex spectrum of ``m``, sorted descending.

    Complex conjugate pairs contribute two equal moduli.  The product of
    the moduli equals |det m| up to roundoff.

    Raises
    ------
    ComputationError
        If the eigenvalue iteration fails to converge
        ("spectrum not resolved").
    """
    a = as_matrix(m)
    try:
        vals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise ComputationError("spectrum not resolved") from exc
    mod = np.abs(vals)
    if not np.all(np.isfinite(mod)) or np.any(mod <= 0.0):
        raise ComputationError("spectrum not resolved")
    # stable sort so that ties keep the solver's output order
    order = np.argsort(-mod, kind="stable")
    return mod[order]


def wedge_indices(d, k):
    """Sorted k-subsets of range(d) in lexicographic order.

    This fixes the coordinate order of all wedge-power constructions;
    reports and CSV files rely on it being reproducible.
    """
    return list(itertools.combinations(range(d), k))


def wedge_dim(d, k):
    return math.comb(d, k)


def exterior_power(m, k):
    """k-th exterior (compound) power of a square matrix.

    The result is indexed by sorted k-subsets in lexicographic order;
    entry (I, J) is the k x k minor of ``m`` with rows I and columns J.
    Functorial: ``exterior_power(a @ b, k) == exterior_power(a, k) @
    exterior_power(b, k)`` up to roundoff (Cauchy-Binet).

    Parameters
    ----------
    m : array_like
        d x d matrix.
    k : int
        Degree, 1 <= k <= d-1.

    Returns
    -------
    ndarray
        C(d,k) x C(d,k) matrix.
    """
    a = as_matrix(m)
    d = a.shape[0]
    if not 1 <= k <= d - 1:
        raise ValueError(f"exterior power degree k={k} out of range for d={d}")
    if k == 1:
        return a.copy()
    idx = np.array(wedge_indices(d, k))  # (C, k)
    # (C, C, k, k) stack of minors, determinant over the last two axes
    sub = a[idx[:, None, :, None], idx[None, :, None, :]]
    return np.linalg.det(sub)


def plucker_batch(bases):
    """Wedge coordinates of a batch of subspace bases.

    Parameters
    ----------
    bases : ndarray
        Shape (n, d, k); each slice holds k basis column vectors.

    Returns
    -------
    ndarray
        Shape (n, C(d,k)); row i holds the k x k minors of ``bases[i]``
        over row subsets in lexicographic order (not normalized).
    """
    b = np.asarray(bases, dtype=float)
    n, d, k = b.shape
    if k == 1:
        return b[:, :, 0].copy()
    idx = np.array(wedge_indices(d, k))
    sub = b[:, idx, :]  # (n, C, k, k)
    return np.linalg.det(sub)


def plucker_from_basis(basis):
    """Unit-norm wedge coordinates of a single subspace basis (d x k)."""
    b = np.asarray(basis, dtype=float)
    if b.ndim != 2:
        raise ValueError("basis must be a d x k matrix")
    p = plucker_batch(b[None])[0]
    nrm = np.linalg.norm(p)
    if nrm <= 0.0 or not np.isfinite(nrm):
        raise ComputationError("degenerate matrix")
    return p / nrm


def operator_norm(m):
    """Spectral norm (largest singular value)."""
    return float(np.linalg.svd(np.asarray(m, dtype=float), compute_uv=False)[0])


@dataclass(frozen=True)
class LogScaledMatrix:
    """A matrix stored as ``exp(log_scale) * base`` with ||base||_2 = 1.

    Words of length >= 40 with eigenvalue ratios >= 4 overflow the useful
    precision of a naive product; renormalizing after every factor keeps
    the base representable while the magnitude accumulates in
    ``log_scale``.
    """

    base: np.ndarray
    log_scale: float

    @staticmethod
    def from_matrix(m):
        a = as_matrix(m)
        nrm = operator_norm(a)
        if nrm <= 0.0 or not np.isfinite(nrm):
            raise ComputationError("degenerate matrix")
        return LogScaledMatrix(a / nrm, math.log(nrm))

    @staticmethod
    def identity(d):
        return LogScaledMatrix(np.eye(d), 0.0)

    @property
    def dim(self):
        return self.base.shape[0]

    def matmul(self, other):
        """Product with another LogScaledMatrix, renormalized."""
        prod = self.base @ other.base
        nrm = operator_norm(prod)
        if not np.isfinite(nrm) or nrm <= 0.0:
            raise ComputationError("power iteration unstable")
        return LogScaledMatrix(prod / nrm,
                               self.log_scale + other.log_scale + math.log(nrm))

    def __matmul__(self, other):
        if isinstance(other, LogScaledMatrix):
            return self.matmul(other)
        return self.matmul(LogScaledMatrix.from_matrix(other))

    def square(self):
        return self.matmul(self)

    def matrix(self):
        """The represented matrix; may overflow for large log_scale."""
        return math.exp(self.log_scale) * self.base


def word_product(generators, word):
    """Evaluate a word in named generators as a LogScaledMatrix.

    Letters are single lower-case generator names; the matching
    upper-case letter denotes the inverse, which is computed from the
    generator matrix.  The product is renormalized after every letter.

    Parameters
    ----------
    generators : dict
        Maps lower-case single-letter names to square matrices.
    word : str
        Possibly empty word over the letters and their inverses.

    Raises
    ------
    KeyError
        If a letter of the word has no assigned generator.
    """
    table = letter_table(generators)
    dims = {m.shape[0] for m in table.values()}
    if len(dims) > 1:
        raise ValueError("generators have mixed dimensions")
    d = dims.pop() if dims else _infer_dim_from_word(word)
    acc = LogScaledMatrix.identity(d)
    for letter in word:
        if letter not in table:
            raise KeyError(f"unknown letter {letter!r} in word {word!r}")
        acc = acc @ LogScaledMatrix.from_matrix(table[letter])
    return acc


def letter_table(generators):
    """Expand a generator map with inverse letters (upper-case names)."""
    table = {}
    for name, mat in generators.items():
        if len(name) != 1 or not name.islower():
            raise ValueError(f"generator names must be single lower-case letters, got {name!r}")
        a = as_matrix(mat)
        table[name] = a
        table[name.upper()] = np.linalg.inv(a)
    return table


def _infer_dim_from_word(word):
    if word:
        raise KeyError(f"unknown letter {word[0]!r}: no generators supplied")
    raise ValueError("cannot infer dimension for the empty word without generators")
