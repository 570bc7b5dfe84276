"""Photon linear response: interband bubble, dressed propagator, spectra.

The retarded self-energy is the momentum-integrated interband bubble
Sigma^R(omega) = g^2 (1/2pi) int dk |mu(k)|^2 / (omega - Delta(k) + i eta);
setting g = 1 recovers the bare-bubble normalization of the dressed spectra.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteSampleError
from .lattice import SshParams, band_gap, dipole
from .numerics import DEFAULT_NK, MIN_NK, FrequencyGrid, ComplexSpectrum, pairwise_sum


@dataclass(frozen=True)
class CavityParams:
    """Cavity mode omega_c(q) = omega_c + mass_beta q^2, coupling g, linewidth eta."""

    omega_c: float
    mass_beta: float
    g: float
    eta: float

    def __post_init__(self):
        if not self.omega_c > 0:
            raise ValueError(f"omega_c must be positive, got {self.omega_c}")
        if self.mass_beta < 0:
            raise ValueError(f"mass_beta must be >= 0, got {self.mass_beta}")
        if self.g < 0:
            raise ValueError(f"g must be >= 0, got {self.g}")
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")


@dataclass(frozen=True)
class SpectralMap:
    """A(omega, q) samples; values has shape (len(omega), len(q))."""

    omega_grid: FrequencyGrid
    q_grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.omega_grid.count, self.q_grid.count):
            raise ValueError(
                f"values shape {values.shape} does not match grids "
                f"({self.omega_grid.count}, {self.q_grid.count})"
            )
        object.__setattr__(self, "values", values)


class BubbleTable:
    """Precomputed zone samples so repeated bubble evaluations share one grid.

    Reductions reproduce bz_integrate bit for bit: identical nodes, identical
    trapezoid weights, identical pairwise summation order.
    """

    def __init__(self, p: SshParams, eta: float, n_k: int = DEFAULT_NK):
        if n_k < MIN_NK:
            raise ValueError(f"n_k must be >= {MIN_NK}, got {n_k}")
        nodes = np.linspace(-np.pi, np.pi, n_k + 1)
        h = 2.0 * np.pi / n_k
        weights = np.full(n_k + 1, h)
        weights[0] = weights[-1] = 0.5 * h
        self.eta = float(eta)
        self.delta = np.asarray(band_gap(nodes, p))
        self.weighted_mu2 = weights * np.asarray(dipole(nodes, p)) ** 2

    def integral(self, omega: complex, power: int = 1) -> complex:
        """(1/2pi) int dk |mu|^2 / (omega - Delta + i eta)^power."""
        denom = omega - self.delta + 1j * self.eta
        if power != 1:
            denom = denom**power
        samples = self.weighted_mu2 / denom
        if not np.all(np.isfinite(samples)):
            raise NonFiniteSampleError("bubble integrand produced nan/inf")
        return complex(pairwise_sum(samples) / (2.0 * np.pi))


def bubble_integral(
    omega: complex, p: SshParams, eta: float, n_k: int = DEFAULT_NK, power: int = 1
) -> complex:
    """One-shot g=1 interband bubble; see BubbleTable for the vectorized path."""
    return BubbleTable(p, eta, n_k).integral(omega, power)


def photon_self_energy(
    omega: float, p: SshParams, c: CavityParams, n_k: int = DEFAULT_NK
) -> complex:
    """Retarded photon self-energy g^2 (1/2pi) int dk |mu|^2/(omega - Delta + i eta)."""
    return c.g**2 * bubble_integral(omega, p, c.eta, n_k)


def photon_self_energy_n(
    omega: float, n: int, p: SshParams, c: CavityParams, n_k: int = DEFAULT_NK
) -> complex:
    """Photon-number resolved self-energy (n+1) * Sigma^R(omega)."""
    if n < 0:
        raise ValueError(f"photon number must be >= 0, got {n}")
    return (n + 1) * photon_self_energy(omega, p, c, n_k)


def self_energy_spectrum(
    grid: FrequencyGrid,
    p: SshParams,
    c: CavityParams,
    n_k: int = DEFAULT_NK,
    threads: int = 1,
) -> ComplexSpectrum:
    """Sigma^R sampled on a frequency grid (threads chunk the sweep, speed only)."""
    table = BubbleTable(p, c.eta, n_k)
    omegas = grid.values
    out = np.empty(grid.count, dtype=complex)

    def fill(indices):
        for i in indices:
            out[i] = c.g**2 * table.integral(omegas[i])

    _chunked(fill, grid.count, threads)
    return ComplexSpectrum(grid=grid, samples=out)


def dressed_propagator(
    omega: float,
    q: float,
    p: SshParams,
    c: CavityParams,
    n_k: int = DEFAULT_NK,
    sigma: complex | None = None,
) -> complex:
    """Retarded cavity propagator 1/(omega - omega_c - beta q^2 - Sigma^R + i eta).

    Pass a precomputed `sigma` to amortize the bubble over many q at fixed omega.
    """
    if sigma is None:
        sigma = photon_self_energy(omega, p, c, n_k)
    return 1.0 / (omega - c.omega_c - c.mass_beta * q * q - sigma + 1j * c.eta)


def spectral_function(
    omega: float,
    q: float,
    p: SshParams,
    c: CavityParams,
    n_k: int = DEFAULT_NK,
    sigma: complex | None = None,
) -> float:
    """A(omega, q) = -(1/pi) Im G^R_cav; nonnegative by construction."""
    return -dressed_propagator(omega, q, p, c, n_k, sigma=sigma).imag / np.pi


def spectral_map(
    omega_grid: FrequencyGrid,
    q_grid: FrequencyGrid,
    p: SshParams,
    c: CavityParams,
    n_k: int = DEFAULT_NK,
    threads: int = 1,
) -> SpectralMap:
    """A(omega, q) on the product grid; the bubble is reused across q."""
    sigma = self_energy_spectrum(omega_grid, p, c, n_k, threads=threads).samples
    omegas = omega_grid.values
    qs = q_grid.values
    values = np.empty((omega_grid.count, q_grid.count), dtype=float)

    def fill(indices):
        for i in indices:
            denom = (
                omegas[i] - c.omega_c - c.mass_beta * qs * qs - sigma[i] + 1j * c.eta
            )
            values[i, :] = -np.imag(1.0 / denom) / np.pi

    _chunked(fill, omega_grid.count, threads)
    return SpectralMap(omega_grid=omega_grid, q_grid=q_grid, values=values)


def hopfield_branches(q: float, g: float, beta: float, delta_pi: float):
    """Eigenvalues (lower, upper) of the two-level reference
    [[beta q^2 + delta_pi, g], [g, delta_pi]]; splitting 2g at q = 0 on resonance."""
    photon = beta * q * q + delta_pi
    mean = 0.5 * (photon + delta_pi)
    radius = np.sqrt(0.25 * (photon - delta_pi) ** 2 + g * g)
    return mean - radius, mean + radius


def _chunked(fill, total: int, threads: int) -> None:
    """Run fill(range) over [0, total) split across threads; output indexed, so
    the result is identical for any thread count."""
    threads = max(1, int(threads))
    if threads == 1 or total < 2 * threads:
        fill(range(total))
        return
    step = (total + threads - 1) // threads
    chunks = [range(lo, min(lo + step, total)) for lo in range(0, total, step)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(fill, chunks))
