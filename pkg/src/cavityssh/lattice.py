"""Bipartite two-band chain: bands, interband dipole, Zak phase, band edge.

The chain alternates hoppings t1 (intra-cell) and t2 (inter-cell). Everything
downstream only needs the gap function, the dipole matrix element and the
small-momentum expansion around the zone edge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CriticalPointError, GaplessPointError

GAPLESS_FLOOR = 1e-12


@dataclass(frozen=True)
class SshParams:
    """Hopping pair; t1 sets the energy unit, r = t2/t1 the phase."""

    t1: float
    t2: float

    def __post_init__(self):
        if not self.t1 > 0:
            raise ValueError(f"t1 must be positive, got {self.t1}")
        if self.t2 < 0:
            raise ValueError(f"t2 must be >= 0, got {self.t2}")

    @property
    def ratio(self) -> float:
        return self.t2 / self.t1


@dataclass(frozen=True)
class BandEdgeParams:
    """Quadratic expansion of the gap and linear dipole slope at k = pi."""

    delta0: float
    curvature: float
    dipole_slope: float


def band_gap(k, p: SshParams):
    """Direct gap Delta(k) = 2*sqrt(t1^2 + t2^2 + 2 t1 t2 cos k)."""
    k = np.asarray(k, dtype=float)
    gap = 2.0 * np.sqrt(p.t1**2 + p.t2**2 + 2.0 * p.t1 * p.t2 * np.cos(k))
    return gap if gap.ndim else float(gap)


def band_energies(k, p: SshParams):
    """Symmetric two-band energies (valence, conduction) = (-Delta/2, +Delta/2)."""
    gap = band_gap(k, p)
    return -0.5 * np.asarray(gap), 0.5 * np.asarray(gap)


def dipole(k, p: SshParams):
    """Interband dipole mu(k) = t1 t2 sin(k) / Delta(k); odd, zero at k = 0 and pi."""
    k = np.asarray(k, dtype=float)
    gap = np.asarray(band_gap(k, p))
    if np.any(gap < GAPLESS_FLOOR):
        raise GaplessPointError("gap closes on the requested momenta; dipole undefined")
    mu = p.t1 * p.t2 * np.sin(k) / gap
    return mu if mu.ndim else float(mu)


def bloch_phase(k, p: SshParams):
    """Phase theta(k) = arg(t1 + t2 e^{-ik}), principal branch (-pi, pi]."""
    k = np.asarray(k, dtype=float)
    h = p.t1 + p.t2 * np.exp(-1j * k)
    if np.any(np.abs(h) < 0.5 * GAPLESS_FLOOR):
        raise GaplessPointError("h(k) vanishes; Bloch phase undefined")
    theta = np.angle(h)
    return theta if theta.ndim else float(theta)


def zak_phase(p: SshParams, n_k: int = 1024, critical_tol: float = 1e-6) -> float:
    """Valence-band Zak phase via a discretized Wilson loop, reported in [0, 2pi).

    The valence eigenvector is (-e^{-i theta(k)}, 1)/sqrt(2); link overlaps
    accumulate the principal-branch phase increments around the closed zone
    (equivalent to unwrapping theta along the monotone grid). Quantized to 0
    or pi away from the critical ratio.
    """
    if n_k < 64:
        raise ValueError(f"n_k must be >= 64, got {n_k}")
    if abs(p.ratio - 1.0) < critical_tol:
        raise CriticalPointError(
            f"ratio {p.ratio} within {critical_tol} of the gap closure; Zak phase undefined"
        )
    k = -np.pi + 2.0 * np.pi * np.arange(n_k) / n_k
    theta = bloch_phase(k, p)
    phase_factor = np.exp(-1j * theta)
    # <u_j|u_{j+1}> for the valence doublet, with periodic wraparound.
    overlaps = 0.5 * (np.conj(phase_factor) * np.roll(phase_factor, -1) + 1.0)
    total = float(np.sum(np.angle(overlaps)))
    return float(np.mod(-total, 2.0 * np.pi))


def band_edge_params(
    p: SshParams, fd_step: float = 1e-4, critical_tol: float = 1e-6
) -> BandEdgeParams:
    """Expansion Delta(pi + q) ~ delta0 + (1/2) curvature q^2, |mu| ~ dipole_slope |q|.

    Curvature from a central second difference of Delta at k = pi; the dipole
    slope from the central first difference of the signed mu (|mu| is even
    about pi, so differencing the magnitude directly would cancel).
    """
    if abs(p.ratio - 1.0) < critical_tol:
        raise CriticalPointError(
            f"ratio {p.ratio} within {critical_tol} of the gap closure; edge expansion undefined"
        )
    delta0 = 2.0 * abs(p.t1 - p.t2)
    h = fd_step
    gaps = band_gap(np.array([np.pi - h, np.pi, np.pi + h]), p)
    curvature = float((gaps[0] - 2.0 * gaps[1] + gaps[2]) / h**2)
    mus = dipole(np.array([np.pi - h, np.pi + h]), p)
    dipole_slope = float(abs(mus[1] - mus[0]) / (2.0 * h))
    return BandEdgeParams(delta0=delta0, curvature=curvature, dipole_slope=dipole_slope)
