"""
Spherical Bessel and Hankel functions of integer order.

Evaluates j_l, y_l, h1_l and their derivatives for l = 0..ell_max at a single
real or complex argument. The model only needs the real axis (k*r) and the
positive imaginary axis (i*kappa*r); other arguments are accepted but not
tuned for.

- j_l: Miller downward recurrence normalized against the closed forms of
  j_0 or j_1, upward recurrence when the argument dominates the order
- y_l: upward recurrence from y_0, y_1
- h1_l: j_l + i*y_l on the real axis; upward recurrence from the closed
  forms of h1_0, h1_1 elsewhere (j + i*y cancels catastrophically on the
  imaginary axis)
- |z| < 1e-4: three-term ascending series
"""
import cmath
import math
from dataclasses import dataclass
from typing import List, Union

import numpy as np
from numpy.typing import NDArray

from shellscatter.core.errors import ArgumentOverflowError, OrderTooLargeError, ZeroArgumentError

MAX_ORDER = 64
SMALL_ARGUMENT = 1e-4
MILLER_MARGIN = 16
_RESCALE_LIMIT = 1e250

Number = Union[float, complex]


@dataclass(frozen=True)
class BesselTable:
    """Spherical Bessel values and derivatives at one argument, orders 0..ell_max."""
    ell_max: int
    argument: complex
    j: NDArray[np.complex128]
    y: NDArray[np.complex128]
    jp: NDArray[np.complex128]
    yp: NDArray[np.complex128]
    h1: NDArray[np.complex128]
    h1p: NDArray[np.complex128]

    @property
    def h2(self) -> NDArray[np.complex128]:
        """Incoming Hankel function h2_l = j_l - i*y_l."""
        return 2.0 * self.j - self.h1

    @property
    def h2p(self) -> NDArray[np.complex128]:
        return 2.0 * self.jp - self.h1p


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2))


def _series_j(order: int, z: Number) -> List[Number]:
    """Three-term ascending series for j_l, |z| small."""
    values = []
    u = -z * z / 2.0
    for ell in range(order + 1):
        t1 = u / (2 * ell + 3)
        t2 = t1 * u / (2.0 * (2 * ell + 5))
        values.append(z**ell / _double_factorial(2 * ell + 1) * (1.0 + t1 + t2))
    return values


def _series_y(order: int, z: Number) -> List[Number]:
    """Three-term ascending series for y_l, |z| small."""
    values = []
    u = -z * z / 2.0
    for ell in range(order + 1):
        t1 = u / (1 - 2 * ell)
        t2 = t1 * u / (2.0 * (3 - 2 * ell))
        values.append(-_double_factorial(2 * ell - 1) / z ** (ell + 1) * (1.0 + t1 + t2))
    return values


def _j_upward(order: int, z: Number, sin_z: Number, cos_z: Number) -> List[Number]:
    values = [sin_z / z, sin_z / (z * z) - cos_z / z]
    for ell in range(1, order):
        values.append((2 * ell + 1) / z * values[ell] - values[ell - 1])
    return values[: order + 1]


def _j_downward(order: int, z: Number, sin_z: Number, cos_z: Number) -> List[Number]:
    """Miller recurrence, started at order + 16 + ceil(|z|)."""
    start = order + MILLER_MARGIN + math.ceil(abs(z))
    values: List[Number] = [0.0] * (order + 1)
    f_next = 0.0 * z
    f = 1.0 + 0.0 * z
    for n in range(start, 0, -1):
        f_prev = (2 * n + 1) / z * f - f_next
        f_next, f = f, f_prev
        if n - 1 <= order:
            values[n - 1] = f
        if abs(f) > _RESCALE_LIMIT:
            f /= _RESCALE_LIMIT
            f_next /= _RESCALE_LIMIT
            for i in range(n - 1, order + 1):
                values[i] /= _RESCALE_LIMIT

    j0 = sin_z / z
    j1 = sin_z / (z * z) - cos_z / z
    # Normalize on whichever of j_0, j_1 is farther from a zero.
    if abs(j0) >= abs(j1):
        scale = j0 / values[0]
    else:
        scale = j1 / values[1]
    return [value * scale for value in values]


def _y_upward(order: int, z: Number, sin_z: Number, cos_z: Number) -> List[Number]:
    values = [-cos_z / z, -cos_z / (z * z) - sin_z / z]
    for ell in range(1, order):
        values.append((2 * ell + 1) / z * values[ell] - values[ell - 1])
    return values[: order + 1]


def _h1_upward(order: int, z: complex) -> List[complex]:
    phase = cmath.exp(1j * z)
    values = [-1j * phase / z, -(z + 1j) * phase / (z * z)]
    for ell in range(1, order):
        values.append((2 * ell + 1) / z * values[ell] - values[ell - 1])
    return values[: order + 1]


def _derivatives(values: NDArray[np.complex128], z: complex) -> NDArray[np.complex128]:
    """f'_l = f_{l-1} - (l+1)/z f_l, with f'_0 = -f_1."""
    derivs = np.empty_like(values)
    derivs[0] = -values[1]
    ells = np.arange(1, len(values))
    derivs[1:] = values[:-1] - (ells + 1) / z * values[1:]
    return derivs


def bessel_basis(ell_max: int, z: Number) -> BesselTable:
    """
    Evaluate j_l, y_l, h1_l and their derivatives for l = 0..ell_max.

    Raises:
        ZeroArgumentError: z == 0
        OrderTooLargeError: ell_max outside 0..64
        ArgumentOverflowError: |Im z| too large for unscaled values
    """
    if ell_max < 0 or ell_max > MAX_ORDER:
        raise OrderTooLargeError(f"order {ell_max} outside supported range 0..{MAX_ORDER}")
    if z == 0:
        raise ZeroArgumentError("spherical Bessel functions evaluated at z = 0")

    z = complex(z)
    is_real = z.imag == 0.0
    arg: Number = z.real if is_real else z
    # Orders up to 1 are always needed for the l = 0 derivative.
    order = max(ell_max, 1)

    if abs(arg) < SMALL_ARGUMENT:
        j_vals = _series_j(order, arg)
        y_vals = _series_y(order, arg)
        h_vals = None
    else:
        if is_real:
            sin_z, cos_z = math.sin(arg), math.cos(arg)
        else:
            try:
                sin_z, cos_z = cmath.sin(arg), cmath.cos(arg)
            except OverflowError as e:
                raise ArgumentOverflowError(
                    f"sin and cos overflow at z = {z}; |Im z| must stay below about 710"
                ) from e
        if not is_real or abs(arg) < order:
            j_vals = _j_downward(order, arg, sin_z, cos_z)
        else:
            j_vals = _j_upward(order, arg, sin_z, cos_z)
        y_vals = _y_upward(order, arg, sin_z, cos_z)
        h_vals = None if is_real else _h1_upward(order, arg)

    with np.errstate(over="ignore", invalid="ignore"):
        j = np.array(j_vals, dtype=np.complex128)
        y = np.array(y_vals, dtype=np.complex128)
        h1 = j + 1j * y if h_vals is None else np.array(h_vals, dtype=np.complex128)
        jp = _derivatives(j, arg)
        yp = _derivatives(y, arg)
        h1p = _derivatives(h1, arg)

    if is_real:
        # Real path: keep imaginary parts exactly zero.
        jp = jp.real.astype(np.complex128)
        yp = yp.real.astype(np.complex128)

    size = ell_max + 1
    return BesselTable(
        ell_max=ell_max,
        argument=z,
        j=j[:size],
        y=y[:size],
        jp=jp[:size],
        yp=yp[:size],
        h1=h1[:size],
        h1p=h1p[:size],
    )


def hankel(kind: int, ell: int, z: Number) -> complex:
    """Spherical Hankel function h1_l(z) (kind=1) or h2_l(z) (kind=2)."""
    if kind not in (1, 2):
        raise ValueError(f"Hankel kind must be 1 or 2, got {kind}")
    table = bessel_basis(ell, z)
    if kind == 1:
        return complex(table.h1[ell])
    return complex(table.h2[ell])
