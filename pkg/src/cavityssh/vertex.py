"""Effective four-photon vertex from a momentum-space two-body kernel.

Direct evaluation is a double zone integral of two interband bubbles glued by
a Gaussian kernel V(k, k') = v0 exp(-zeta (k - k')^2); near the band edge the
integral contracts onto the stationary points q* of the quadratic gap.
Both evaluators use the bare-bubble (g = 1) normalization; the coupling
prefactor is deliberately not included here and is recorded with run outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cavity import CavityParams
from .errors import BelowThresholdError, NonFiniteSampleError, ZeroRangeError
from .lattice import BandEdgeParams, SshParams, band_gap, dipole
from .numerics import MIN_NK, pairwise_sum

DEFAULT_NK2D = 512


@dataclass(frozen=True)
class InteractionKernel:
    """Gaussian momentum kernel v0 exp(-zeta (k - k')^2); zeta = 0 is zero-range."""

    v0: float
    zeta: float

    def __post_init__(self):
        if self.zeta < 0:
            raise ValueError(f"zeta must be >= 0, got {self.zeta}")


@dataclass(frozen=True)
class SaddleSolution:
    """Band-edge stationary momenta for the two frequency arguments."""

    q1: float
    q2: float
    above_threshold: tuple[bool, bool]


def interaction_kernel(k, kprime, kern: InteractionKernel):
    """V(k, k') = v0 exp(-zeta (k - k')^2), symmetric in its arguments."""
    diff = np.asarray(k, dtype=float) - np.asarray(kprime, dtype=float)
    out = kern.v0 * np.exp(-kern.zeta * diff * diff)
    return out if np.ndim(out) else float(out)


def _weighted_bubble_vector(omega: float, delta: np.ndarray, mu2w: np.ndarray, eta: float):
    samples = mu2w / (omega - delta + 1j * eta)
    if not np.all(np.isfinite(samples)):
        raise NonFiniteSampleError("vertex bubble integrand produced nan/inf")
    return samples


def _zone_samples(p: SshParams, n_k: int):
    if n_k < MIN_NK:
        raise ValueError(f"n_k must be >= {MIN_NK}, got {n_k}")
    nodes = np.linspace(-np.pi, np.pi, n_k + 1)
    h = 2.0 * np.pi / n_k
    weights = np.full(n_k + 1, h)
    weights[0] = weights[-1] = 0.5 * h
    delta = np.asarray(band_gap(nodes, p))
    mu2w = weights * np.asarray(dipole(nodes, p)) ** 2
    return nodes, delta, mu2w


def gamma4_direct(
    omega1: float,
    omega2: float,
    p: SshParams,
    c: CavityParams,
    kern: InteractionKernel,
    n_k: int = DEFAULT_NK2D,
) -> complex:
    """Double-trapezoid of bubble(k; omega1) V(k, k') bubble(k'; omega2) / (2pi)^2.

    Arguments are ordered canonically before evaluating, so the omega1 <->
    omega2 symmetry holds bit for bit.
    """
    a, b = (omega1, omega2) if omega1 <= omega2 else (omega2, omega1)
    nodes, delta, mu2w = _zone_samples(p, n_k)
    b1 = _weighted_bubble_vector(a, delta, mu2w, c.eta)
    b2 = _weighted_bubble_vector(b, delta, mu2w, c.eta)
    v = kern.v0 * np.exp(-kern.zeta * (nodes[:, None] - nodes[None, :]) ** 2)
    inner = pairwise_sum(v * b2[None, :], axis=1)
    return complex(pairwise_sum(b1 * inner) / (2.0 * np.pi) ** 2)


def gamma4_direct_grid(
    omegas: np.ndarray,
    p: SshParams,
    c: CavityParams,
    kern: InteractionKernel,
    n_k: int = DEFAULT_NK2D,
) -> np.ndarray:
    """gamma4_direct on the square grid omegas x omegas (one kernel build)."""
    omegas = np.asarray(omegas, dtype=float)
    nodes, delta, mu2w = _zone_samples(p, n_k)
    v = kern.v0 * np.exp(-kern.zeta * (nodes[:, None] - nodes[None, :]) ** 2)
    bvecs = np.stack([_weighted_bubble_vector(w, delta, mu2w, c.eta) for w in omegas])
    transformed = np.stack([pairwise_sum(v * bv[None, :], axis=1) for bv in bvecs])
    out = np.empty((omegas.size, omegas.size), dtype=complex)
    for i in range(omegas.size):
        for j in range(omegas.size):
            out[i, j] = pairwise_sum(transformed[i] * bvecs[j]) / (2.0 * np.pi) ** 2
    return out


def saddle_points(omega1: float, omega2: float, edge: BandEdgeParams) -> SaddleSolution:
    """Stationary momenta q*_i = sqrt(2 (omega_i - delta0)/curvature).

    Raises BelowThresholdError (naming the offending argument) as soon as a
    frequency sits below the band edge.
    """
    radicands = [
        2.0 * (omega1 - edge.delta0) / edge.curvature,
        2.0 * (omega2 - edge.delta0) / edge.curvature,
    ]
    below = [r < 0 for r in radicands]
    if any(below):
        which = "both" if all(below) else ("omega1" if below[0] else "omega2")
        raise BelowThresholdError(
            f"frequency below the band edge delta0 = {edge.delta0}", which=which
        )
    q1, q2 = (float(np.sqrt(r)) for r in radicands)
    return SaddleSolution(q1=q1, q2=q2, above_threshold=(True, True))


def gamma4_stationary(
    omega1: float,
    omega2: float,
    kern: InteractionKernel,
    edge: BandEdgeParams,
    eta: float,
) -> complex:
    """Band-edge stationary-phase vertex

    A^4 v0 (q1* q2*)^2 exp(-zeta (q1* - q2*)^2) sqrt(2pi/zeta)
        / ((omega1 - delta0 + i eta)(omega2 - delta0 + i eta)).

    Only the shape is meaningful relative to gamma4_direct (the absolute
    normalization of the saddle measure is not pinned); zeta = 0 has no
    stationary width and is rejected.
    """
    if kern.zeta == 0:
        raise ZeroRangeError("stationary-phase form undefined for zeta = 0")
    saddle = saddle_points(omega1, omega2, edge)
    amplitude = (
        edge.dipole_slope**4
        * kern.v0
        * (saddle.q1 * saddle.q2) ** 2
        * np.exp(-kern.zeta * (saddle.q1 - saddle.q2) ** 2)
        * np.sqrt(2.0 * np.pi / kern.zeta)
    )
    denom = (omega1 - edge.delta0 + 1j * eta) * (omega2 - edge.delta0 + 1j * eta)
    return complex(amplitude / denom)
