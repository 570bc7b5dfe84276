"""Shared numerical kernels: grids, quadratures, root finding, fits.

All reductions go through a fixed left-to-right pairwise scheme so results are
bitwise reproducible regardless of how callers chunk their work.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DegenerateDesignError,
    NoConvergenceError,
    NonFiniteEntryError,
    NonFiniteSampleError,
    PoleOnBoundaryError,
)

DEFAULT_NK = 4096
MIN_NK = 64


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform closed grid of `count` samples on [start, stop]."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if not self.stop > self.start:
            raise ValueError(f"grid needs stop > start, got [{self.start}, {self.stop}]")
        if self.count < 2:
            raise ValueError(f"grid needs at least 2 samples, got {self.count}")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    @property
    def spacing(self) -> float:
        return (self.stop - self.start) / (self.count - 1)


@dataclass(frozen=True)
class ComplexSpectrum:
    """Complex-valued samples attached to the frequency grid they live on."""

    grid: FrequencyGrid
    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        if samples.shape != (self.grid.count,):
            raise ValueError(
                f"expected {self.grid.count} samples, got shape {samples.shape}"
            )
        object.__setattr__(self, "samples", samples)


def pairwise_sum(values: np.ndarray, axis: int | None = None):
    """Sum by repeated adjacent pairing (deterministic reduction order).

    With axis=None the array is flattened first. An odd tail element is
    carried into the next round unchanged, so the bracketing is a pure
    function of the input length.
    """
    a = np.asarray(values)
    if axis is None:
        a = a.reshape(-1)
        axis = 0
    a = np.moveaxis(a, axis, -1)
    if a.shape[-1] == 0:
        return np.zeros(a.shape[:-1], dtype=a.dtype) if a.ndim > 1 else a.dtype.type(0)
    while a.shape[-1] > 1:
        n = a.shape[-1]
        m = n // 2
        paired = a[..., 0 : 2 * m : 2] + a[..., 1 : 2 * m : 2]
        if n % 2:
            paired = np.concatenate([paired, a[..., -1:]], axis=-1)
        a = paired
    return a[..., 0]


def _check_finite_samples(samples: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(samples)):
        bad = int(np.flatnonzero(~np.isfinite(np.asarray(samples).ravel()))[0])
        raise NonFiniteSampleError(f"{what}: non-finite sample at flat index {bad}")


def bz_integrate(f: Callable[[np.ndarray], np.ndarray], n_k: int = DEFAULT_NK):
    """(1/2pi) * trapezoid of f over the periodic zone [-pi, pi].

    `f` must accept an ndarray of momenta. Exact for constants; spectrally
    accurate for smooth periodic integrands.
    """
    if n_k < MIN_NK:
        raise ValueError(f"n_k must be >= {MIN_NK}, got {n_k}")
    nodes = np.linspace(-np.pi, np.pi, n_k + 1)
    samples = np.asarray(f(nodes))
    _check_finite_samples(samples, "bz_integrate")
    h = 2.0 * np.pi / n_k
    weights = np.full(n_k + 1, h)
    weights[0] = weights[-1] = 0.5 * h
    return pairwise_sum(samples * weights) / (2.0 * np.pi)


def simpson_integrate(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int):
    """Composite Simpson rule on [a, b] with n subintervals (rounded up to even)."""
    if not b > a:
        raise ValueError(f"simpson_integrate needs b > a, got [{a}, {b}]")
    n = max(2, n + (n % 2))
    nodes = np.linspace(a, b, n + 1)
    samples = np.asarray(f(nodes))
    _check_finite_samples(samples, "simpson_integrate")
    h = (b - a) / n
    weights = np.full(n + 1, 2.0)
    weights[1::2] = 4.0
    weights[0] = weights[-1] = 1.0
    return pairwise_sum(samples * weights) * h / 3.0


def principal_value(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    pole: float,
    n_k: int = DEFAULT_NK,
):
    """Cauchy principal value of int_a^b f(x)/(x - pole) dx.

    Inside the range the pole is handled by symmetric exclusion: on the
    largest subinterval symmetric about the pole the odd 1/(x - pole) part
    cancels pairwise, leaving the smooth difference quotient
    (f(pole+u) - f(pole-u))/u, which is integrated with Simpson; the excluded
    point shrinks with the grid. A pole outside [a, b] degrades to plain
    quadrature.
    """
    if not b > a:
        raise ValueError(f"principal_value needs b > a, got [{a}, {b}]")
    span = b - a
    if min(abs(pole - a), abs(pole - b)) < 1e-9 * span:
        raise PoleOnBoundaryError(f"pole {pole} sits on an integration endpoint")

    def plain(lo: float, hi: float):
        return simpson_integrate(lambda x: np.asarray(f(x)) / (x - pole), lo, hi, n_k)

    if pole < a or pole > b:
        return plain(a, b)

    radius = min(pole - a, b - pole)

    def difference_quotient(u: np.ndarray):
        u = np.asarray(u, dtype=float)
        out = np.empty(u.shape, dtype=np.result_type(np.asarray(f(np.array([pole + radius]))).dtype, float))
        small = u < 1e-12 * radius
        if np.any(~small):
            uu = u[~small]
            out[~small] = (np.asarray(f(pole + uu)) - np.asarray(f(pole - uu))) / uu
        if np.any(small):
            d = 1e-7 * radius
            out[small] = (np.asarray(f(np.array([pole + d])))[0] - np.asarray(f(np.array([pole - d])))[0]) / d
        return out

    symmetric = simpson_integrate(difference_quotient, 0.0, radius, n_k)
    if pole - a > radius:
        rest = plain(a, pole - radius)
    elif b - pole > radius:
        rest = plain(pole + radius, b)
    else:
        rest = 0.0
    return symmetric + rest


def complex_newton(
    f: Callable[[complex], complex],
    z0: complex,
    tol: float = 1e-12,
    max_iter: int = 50,
    df: Callable[[complex], complex] | None = None,
) -> complex:
    """Newton iteration in the complex plane; returns z with |f(z)| < tol.

    Without an analytic derivative a central difference with relative step
    1e-7 is used. Raises NoConvergenceError carrying the last iterate.
    """
    z = complex(z0)
    residual = abs(f(z))
    for iteration in range(max_iter):
        if residual < tol:
            return z
        if df is not None:
            deriv = df(z)
        else:
            h = 1e-7 * max(1.0, abs(z))
            deriv = (f(z + h) - f(z - h)) / (2.0 * h)
        if deriv == 0 or not np.isfinite(abs(deriv)):
            raise NoConvergenceError(
                f"derivative vanished at iteration {iteration}", z, residual, iteration
            )
        z = z - f(z) / deriv
        residual = abs(f(z))
    if residual < tol:
        return z
    raise NoConvergenceError(
        f"no convergence after {max_iter} iterations (residual {residual:.3e})",
        z,
        residual,
        max_iter,
    )


def polyfit_quadratic(xs: Sequence[float], ys: Sequence[complex]):
    """Least-squares fit of ys ~ c0 + c1*x + (1/2)*c2*x^2; returns (c0, c1, c2)."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys)
    if x.ndim != 1 or y.shape != x.shape:
        raise ValueError("xs and ys must be 1-d and of equal length")
    if np.unique(x).size < 3:
        raise DegenerateDesignError(
            f"quadratic fit needs >= 3 distinct abscissae, got {np.unique(x).size}"
        )
    design = np.column_stack([np.ones_like(x), x, 0.5 * x * x])
    coeffs, *_ = np.linalg.lstsq(design, y, rcond=None)
    return coeffs[0], coeffs[1], coeffs[2]


def svd_singular_values(m: np.ndarray) -> np.ndarray:
    """Singular values of m, nonincreasing. Rejects non-finite entries."""
    m = np.asarray(m)
    if not np.all(np.isfinite(m.real)) or (np.iscomplexobj(m) and not np.all(np.isfinite(m.imag))):
        raise NonFiniteEntryError("matrix contains nan/inf entries")
    return np.linalg.svd(m, compute_uv=False)
