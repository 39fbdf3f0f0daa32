"""
Small dense complex linear algebra for boundary matrices (N <= 64).

LU factorization with partial pivoting via scipy.linalg; determinant is the
product of the U diagonal times the pivot-swap sign.
"""
import logging
import warnings
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from shellscatter.core.errors import MatrixShapeError, SingularMatrixError

logger = logging.getLogger(__name__)

MAX_DIMENSION = 64
PIVOT_TOLERANCE = 1e-14


def _as_square(matrix: ArrayLike) -> NDArray[np.complex128]:
    arr = np.asarray(matrix, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise MatrixShapeError(f"expected a square matrix, got shape {arr.shape}")
    if arr.shape[0] > MAX_DIMENSION:
        raise MatrixShapeError(f"matrix dimension {arr.shape[0]} exceeds {MAX_DIMENSION}")
    return arr


def _factor(arr: NDArray[np.complex128]):
    with warnings.catch_warnings():
        # Singular factors are reported through the pivots, not warnings.
        warnings.simplefilter("ignore", LinAlgWarning)
        return lu_factor(arr, check_finite=False)


def determinant(matrix: ArrayLike) -> complex:
    """
    Determinant of a square complex matrix by LU decomposition.

    The empty (0 x 0) matrix has determinant 1.

    Raises:
        MatrixShapeError: matrix not square or larger than 64 x 64
    """
    arr = _as_square(matrix)
    n = arr.shape[0]
    if n == 0:
        return 1.0 + 0.0j

    lu, piv = _factor(arr)
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    det = complex(np.prod(np.diag(lu)))
    return -det if swaps % 2 else det


def solve(matrix: ArrayLike, rhs: ArrayLike) -> NDArray[np.complex128]:
    """
    Solve M x = b.

    Raises:
        MatrixShapeError: matrix not square, too large, or rhs length mismatch
        SingularMatrixError: smallest pivot below 1e-14 * max|M|
    """
    arr = _as_square(matrix)
    b = np.asarray(rhs, dtype=np.complex128)
    n = arr.shape[0]
    if b.shape[0] != n:
        raise MatrixShapeError(f"right-hand side length {b.shape[0]} does not match dimension {n}")
    if n == 0:
        return b.copy()

    lu, piv = _factor(arr)
    scale = float(np.max(np.abs(arr)))
    smallest = float(np.min(np.abs(np.diag(lu))))
    if not np.isfinite(smallest) or smallest <= PIVOT_TOLERANCE * scale:
        raise SingularMatrixError(
            f"matrix is numerically singular (min pivot {smallest:.3e}, max entry {scale:.3e})"
        )
    return lu_solve((lu, piv), b, check_finite=False)


def max_row_sum(matrix: ArrayLike) -> float:
    """Infinity norm: max_i sum_j |M_ij|."""
    arr = np.asarray(matrix)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(arr), axis=1)))


def hadamard_bound(matrix: ArrayLike) -> float:
    """Product of row 2-norms, an upper bound for |det M|."""
    arr = _as_square(matrix)
    if arr.shape[0] == 0:
        return 1.0
    return float(np.prod(np.linalg.norm(arr, axis=1)))


def neumann_inverse(
    operator: ArrayLike,
    max_terms: int = 200,
    tolerance: float = 1e-14,
) -> Optional[NDArray[np.complex128]]:
    """
    (I + A)^-1 as the series sum_n (-A)^n.

    Returns None when the row-sum norm of A is >= 1, where the series is not
    guaranteed to converge. Terms stop once their max-row-sum drops below
    tolerance.
    """
    a = _as_square(operator)
    n = a.shape[0]
    if max_row_sum(a) >= 1.0:
        logger.debug("Neumann series skipped: ||A||_inf = %.3e", max_row_sum(a))
        return None

    total = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    for _ in range(max_terms):
        term = -term @ a
        total += term
        if max_row_sum(term) < tolerance:
            break
    return total
