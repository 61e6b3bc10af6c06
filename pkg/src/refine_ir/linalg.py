"""Dense matrix/vector containers and the core arithmetic everything else uses.

All values are binary64.  Reductions that feed reproducibility guarantees
(matrix-vector products, substitution sweeps) accumulate in a fixed index
order, so repeated runs produce bit-identical results.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, NonFiniteEntryError, SvdConvergenceError

EPS: float = float(np.finfo(np.float64).eps)

# Largest n for which the one-sided Jacobi SVD is allowed to run; it is an
# O(n^3)-per-sweep method and this library targets desk-scale experiments.
SVD_MAX_ORDER: int = 512

_SWEEP_LIMIT = 60
_SVD_TOL = 100.0 * EPS


def _as_finite_f64(data, what: str) -> np.ndarray:
    arr = np.array(data, dtype=np.float64, copy=True)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteEntryError(f"{what} entries must be finite")
    return arr


class DenseVector:
    """Immutable 1-D array of finite binary64 entries."""

    __slots__ = ("_a",)

    def __init__(self, data):
        arr = _as_finite_f64(data, "vector")
        if arr.ndim != 1 or arr.size == 0:
            raise ContractViolationError("vector needs at least one entry")
        arr.flags.writeable = False
        self._a = arr

    @classmethod
    def ones(cls, n: int) -> DenseVector:
        return cls(np.ones(n))

    @classmethod
    def zeros(cls, n: int) -> DenseVector:
        return cls(np.zeros(n))

    def __len__(self) -> int:
        return self._a.size

    @property
    def data(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    # ``array`` and ``data`` are the same thing for vectors; both names are
    # kept so vector and matrix call sites read alike.
    array = data

    def __getitem__(self, i: int) -> float:
        return float(self._a[i])

    def __add__(self, other: DenseVector) -> DenseVector:
        return DenseVector(self._a + other._a)

    def __sub__(self, other: DenseVector) -> DenseVector:
        return DenseVector(self._a - other._a)

    def __mul__(self, c: float) -> DenseVector:
        return DenseVector(self._a * c)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseVector):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):  # immutable, but hashing by value is not needed
        return id(self)

    def __repr__(self) -> str:
        return f"DenseVector(len={len(self)})"


class DenseMatrix:
    """Immutable rows x cols matrix of finite binary64 entries.

    The element order of the flat ``data`` field is column-major, which is
    also the order matrix files store their values in.
    """

    __slots__ = ("_a",)

    def __init__(self, rows: int, cols: int, data):
        if rows <= 0 or cols <= 0:
            raise ContractViolationError("matrix dimensions must be positive")
        arr = _as_finite_f64(data, "matrix")
        if arr.ndim != 1 or arr.size != rows * cols:
            raise ContractViolationError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {arr.size}"
            )
        a = arr.reshape((rows, cols), order="F")
        a.flags.writeable = False
        self._a = a

    @classmethod
    def from_array(cls, array) -> DenseMatrix:
        """Build from any 2-D array-like (row-major semantics)."""
        arr = np.asarray(array, dtype=np.float64)
        if arr.ndim != 2:
            raise ContractViolationError("expected a 2-D array")
        return cls(arr.shape[0], arr.shape[1], arr.reshape(-1, order="F"))

    @classmethod
    def from_rows(cls, rows) -> DenseMatrix:
        return cls.from_array(np.array(rows, dtype=np.float64))

    @classmethod
    def identity(cls, n: int) -> DenseMatrix:
        return cls.from_array(np.eye(n))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def array(self) -> np.ndarray:
        """Read-only 2-D view."""
        return self._a

    @property
    def data(self) -> np.ndarray:
        """Read-only flat view in column-major order."""
        return self._a.reshape(-1, order="F")

    def at(self, i: int, j: int) -> float:
        return float(self._a[i, j])

    def transpose(self) -> DenseMatrix:
        return DenseMatrix.from_array(self._a.T)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return id(self)

    def __repr__(self) -> str:
        return f"DenseMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class SvdResult:
    """Singular values (nonincreasing) and the sweep count that produced them."""

    singular_values: tuple[float, ...]
    sweep_count: int

    def __post_init__(self):
        vals = self.singular_values
        if any(v < 0.0 for v in vals):
            raise ContractViolationError("singular values must be nonnegative")
        if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
            raise ContractViolationError("singular values must be nonincreasing")


def mat_vec(matrix: DenseMatrix, vector: DenseVector) -> DenseVector:
    """Product A*x with a pinned summation order.

    Each result entry accumulates the column contributions in increasing
    column index, one rounded multiply and one rounded add per term, so the
    result is reproducible bit-for-bit across runs and thread counts.
    """
    if matrix.cols != len(vector):
        raise ContractViolationError(
            f"dimension mismatch: {matrix.rows}x{matrix.cols} matrix times length-{len(vector)} vector"
        )
    a = matrix.array
    x = vector.array
    acc = np.zeros(matrix.rows)
    for j in range(matrix.cols):
        acc += a[:, j] * x[j]
    return DenseVector(acc)


def vector_norm2(vector: DenseVector) -> float:
    """Euclidean norm, guarded against overflow of the squared sum.

    When the largest magnitude is big enough that the raw sum of squares
    could exceed the binary64 range, entries are scaled by that magnitude
    first; the result is then finite for every finite input.
    """
    a = vector.array
    m = float(np.max(np.abs(a)))
    if m == 0.0:
        return 0.0
    if m > math.sqrt(sys.float_info.max / a.size):
        t = a / m
        return m * math.sqrt(float(np.sum(t * t)))
    return math.sqrt(float(np.sum(a * a)))


def jacobi_svd(matrix: DenseMatrix) -> SvdResult:
    """Singular values by the one-sided Jacobi method.

    Columns are repeatedly rotated in cyclic (p, q) order until every
    off-diagonal Gram entry satisfies |g_pq| <= 100*eps*sqrt(g_pp*g_qq);
    the singular values are then the column norms.  Matrices that are wider
    than tall are transposed first (the singular values are unchanged).

    ``sweep_count`` counts executed sweeps including the final sweep that
    observed no rotation.  Raises SvdConvergenceError after 60 sweeps.
    """
    if min(matrix.rows, matrix.cols) > SVD_MAX_ORDER:
        raise ContractViolationError(
            f"jacobi_svd supports min(rows, cols) <= {SVD_MAX_ORDER}"
        )
    if matrix.rows < matrix.cols:
        a = np.array(matrix.array.T, dtype=np.float64, order="F")
    else:
        a = np.array(matrix.array, dtype=np.float64, order="F")
    cols = a.shape[1]

    sweeps = 0
    converged = False
    while sweeps < _SWEEP_LIMIT:
        sweeps += 1
        rotated = False
        for p in range(cols - 1):
            for q in range(p + 1, cols):
                ap = a[:, p]
                aq = a[:, q]
                gpp = float(np.dot(ap, ap))
                gqq = float(np.dot(aq, aq))
                gpq = float(np.dot(ap, aq))
                # sqrt(gpp)*sqrt(gqq) instead of sqrt(gpp*gqq): same test,
                # no spurious overflow for large entries.
                if abs(gpq) <= _SVD_TOL * math.sqrt(gpp) * math.sqrt(gqq):
                    continue
                rotated = True
                tau = (gqq - gpp) / (2.0 * gpq)
                sign = 1.0 if tau >= 0.0 else -1.0
                t = sign / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                newp = c * ap - s * aq
                newq = s * ap + c * aq
                a[:, p] = newp
                a[:, q] = newq
        if not rotated:
            converged = True
            break
    if not converged:
        raise SvdConvergenceError(
            f"one-sided Jacobi did not converge within {_SWEEP_LIMIT} sweeps"
        )

    svals = []
    for j in range(cols):
        col = a[:, j]
        m = float(np.max(np.abs(col)))
        if m == 0.0:
            svals.append(0.0)
        elif m > math.sqrt(sys.float_info.max / col.size):
            t = col / m
            svals.append(m * math.sqrt(float(np.sum(t * t))))
        else:
            svals.append(math.sqrt(float(np.sum(col * col))))
    svals.sort(reverse=True)
    return SvdResult(singular_values=tuple(svals), sweep_count=sweeps)


def matrix_norm2(matrix: DenseMatrix) -> float:
    """Spectral norm: the largest singular value."""
    return jacobi_svd(matrix).singular_values[0]


def cond2(matrix: DenseMatrix) -> float:
    """Two-norm condition number; +inf when the smallest singular value is 0."""
    if not matrix.is_square():
        raise ContractViolationError("cond2 requires a square matrix")
    svals = jacobi_svd(matrix).singular_values
    smin = svals[-1]
    if smin == 0.0:
        return math.inf
    return svals[0] / smin
