"""Dense square-matrix kernels shared by every other module.

Conventions
-----------
* ``Mat`` is a square float64 ndarray with finite entries.
* ``IntMat`` is a square int64 ndarray carrying exact integers; exact
  questions (unimodularity, group membership) never go through floats.
* ``ComplexMat`` keeps real and imaginary parts as two separate ``Mat``
  values end to end.

The symmetric eigensolver is cyclic Jacobi (robust and plenty fast for
dimensions up to 32); matrix square roots go through it so the output is
symmetric by construction.  Determinants of integer matrices use Bareiss
fraction-free elimination over Python ints, so unimodularity checks are
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NotIntegral, NotSPD, NotSymmetric, NumericalBreakdown, Singular

DEFAULT_TOL = 1e-9

#: Jacobi convergence: off-diagonal Frobenius mass below this times ||s||_F.
JACOBI_REL_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def as_mat(a) -> np.ndarray:
    """Validate and return ``a`` as a square float64 matrix."""
    arr = np.array(a, dtype=np.float64, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def as_intmat(a) -> np.ndarray:
    """Validate and return ``a`` as a square int64 matrix."""
    arr = np.array(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        flo = np.asarray(arr, dtype=np.float64)
        if not np.array_equal(flo, np.round(flo)):
            raise ValueError("integer matrix has non-integer entries")
        arr = np.round(flo)
    return arr.astype(np.int64)


@dataclass(frozen=True)
class ComplexMat:
    """Complex square matrix stored as an explicit (re, im) pair."""

    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "re", as_mat(self.re))
        object.__setattr__(self, "im", as_mat(self.im))
        if self.re.shape != self.im.shape:
            raise ValueError("re and im must have the same dimension")

    @property
    def dim(self) -> int:
        return self.re.shape[0]


def kron(a, b) -> np.ndarray:
    """Kronecker (tensor) product; entry ((i*db+k),(j*db+l)) = a[i,j]*b[k,l]."""
    return np.kron(as_mat(a), as_mat(b))


def kron_pow(a, n: int) -> np.ndarray:
    """n-fold Kronecker power a (x) a (x) ... with n >= 1 factors."""
    if n < 1:
        raise ValueError("kron_pow needs n >= 1")
    a = as_mat(a)
    out = a
    for _ in range(n - 1):
        out = np.kron(out, a)
    return out


def kron_complex(a: ComplexMat, b: ComplexMat) -> ComplexMat:
    """Kronecker product on (re, im) pairs."""
    re = np.kron(a.re, b.re) - np.kron(a.im, b.im)
    im = np.kron(a.re, b.im) + np.kron(a.im, b.re)
    return ComplexMat(re, im)


def sym_eig(s, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (q, d) with orthogonal q and eigenvalues d sorted descending,
    so q @ diag(d) @ q.T reconstructs the input.  Raises NotSymmetric when
    the asymmetry exceeds ``tol``.
    """
    s = as_mat(s)
    asym = float(np.max(np.abs(s - s.T)))
    if asym > tol:
        raise NotSymmetric(f"asymmetry {asym:.3e} exceeds tolerance {tol:.3e}")
    a = 0.5 * (s + s.T)
    q = np.eye(a.shape[0])
    _, status = _kernels.jacobi_core(a, q, JACOBI_REL_TOL, JACOBI_MAX_SWEEPS)
    if status != _kernels.OK:
        raise NumericalBreakdown("Jacobi sweeps did not converge within the sweep cap")
    d = np.diag(a).copy()
    order = np.argsort(-d, kind="stable")
    return q[:, order], d[order]


def sqrt_spd(y, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Symmetric positive definite square root via the eigendecomposition."""
    q, d = sym_eig(y, tol)
    if d[-1] <= tol:
        raise NotSPD(f"smallest eigenvalue {d[-1]:.3e} is not above tolerance {tol:.3e}")
    root = (q * np.sqrt(d)) @ q.T
    return 0.5 * (root + root.T)


def det(a) -> float:
    """Determinant of a real matrix (pivoted LU under the hood)."""
    return float(np.linalg.det(as_mat(a)))


def det_int(a) -> int:
    """Exact determinant of an integer matrix by Bareiss elimination."""
    arr = as_intmat(a)
    n = arr.shape[0]
    m = [[int(x) for x in row] for row in arr]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Matrix inverse; raises Singular when |det| is not above ``tol``."""
    a = as_mat(a)
    d = abs(float(np.linalg.det(a)))
    if d <= tol:
        raise Singular(f"|det| = {d:.3e} is not above tolerance {tol:.3e}")
    return np.linalg.inv(a)


def is_orthogonal(a, tol: float = DEFAULT_TOL) -> bool:
    """True iff ||a^T a - Id||_inf <= tol."""
    a = as_mat(a)
    return float(np.max(np.abs(a.T @ a - np.eye(a.shape[0])))) <= tol


def round_to_int(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Entrywise nearest-integer matrix; NotIntegral if any entry is off by > tol."""
    a = as_mat(a)
    rounded = np.round(a)
    err = np.abs(a - rounded)
    worst = np.unravel_index(np.argmax(err), err.shape)
    if err[worst] > tol:
        raise NotIntegral(
            f"entry ({worst[0]},{worst[1]}) = {a[worst]!r} is {err[worst]:.3e} from an integer"
        )
    return rounded.astype(np.int64)


def lgamma_int(n: int) -> float:
    """log(n!) without overflow."""
    return math.lgamma(n + 1)


# -- JSON object forms -------------------------------------------------------
# Matrices travel as {"dim": d, "rows": [[...], ...]} everywhere in the repo.

def mat_to_obj(a) -> dict:
    a = as_mat(a)
    return {"dim": int(a.shape[0]), "rows": [[float(x) for x in row] for row in a]}


def intmat_to_obj(a) -> dict:
    a = as_intmat(a)
    return {"dim": int(a.shape[0]), "rows": [[int(x) for x in row] for row in a]}


def _rows_from_obj(obj, what: str):
    from .errors import SchemaError

    if not isinstance(obj, dict):
        raise SchemaError(f"{what}: expected an object, got {type(obj).__name__}")
    if "dim" not in obj or "rows" not in obj:
        raise SchemaError(f"{what}: missing required field 'dim' or 'rows'")
    dim = obj["dim"]
    rows = obj["rows"]
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError(f"{what}.dim: expected a positive integer, got {dim!r}")
    if not isinstance(rows, list) or len(rows) != dim:
        raise SchemaError(f"{what}.rows: expected {dim} rows, got {len(rows) if isinstance(rows, list) else rows!r}")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise SchemaError(f"{what}.rows[{i}]: expected {dim} entries")
        for j, x in enumerate(row):
            if not isinstance(x, (int, float)) or isinstance(x, bool):
                raise SchemaError(f"{what}.rows[{i}][{j}]: expected a number, got {x!r}")
    return dim, rows


def mat_from_obj(obj, what: str = "matrix") -> np.ndarray:
    from .errors import SchemaError

    _, rows = _rows_from_obj(obj, what)
    arr = np.array(rows, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"{what}: entries must be finite")
    return arr


def intmat_from_obj(obj, what: str = "integer matrix") -> np.ndarray:
    from .errors import SchemaError

    _, rows = _rows_from_obj(obj, what)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if not isinstance(x, int):
                raise SchemaError(f"{what}.rows[{i}][{j}]: expected an integer, got {x!r}")
    return np.array(rows, dtype=np.int64)
