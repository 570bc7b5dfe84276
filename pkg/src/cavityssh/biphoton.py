"""Two-photon output states, Schmidt spectra, and the entanglement scan.

The emitted pair amplitude is the vertex sampled on a frequency grid times a
separable Gaussian pump, psi_out = Gamma(omega1, omega2) phi(omega1) phi(omega2).
Schmidt modes come from the SVD of the amplitude with the grid measure
absorbed, so coefficients and entropies are resolution-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridTooNarrowError, ZeroNormError
from .lattice import BandEdgeParams
from .numerics import FrequencyGrid, pairwise_sum, svd_singular_values

PUMP_SPAN_SIGMAS = 4.0


@dataclass(frozen=True)
class BiphotonState:
    """Two-photon amplitude on grid x grid, normalized to unit L2 measure."""

    grid: FrequencyGrid
    amplitude: np.ndarray

    def __post_init__(self):
        amplitude = np.asarray(self.amplitude, dtype=complex)
        n = self.grid.count
        if amplitude.shape != (n, n):
            raise ValueError(f"amplitude shape {amplitude.shape}, expected ({n}, {n})")
        object.__setattr__(self, "amplitude", amplitude)


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Normalized Schmidt weights (nonincreasing) and their entropies."""

    coefficients: np.ndarray
    entropy_nats: float
    entropy_bits: float


@dataclass(frozen=True)
class EntropyScanRow:
    """One kernel range of the entanglement scan."""

    zeta: float
    entropy_nats: float
    entropy_bits: float
    leading: tuple[float, float, float, float]
    ratio_fit: float
    fit_r2: float


def _normalize(amplitude: np.ndarray, spacing: float) -> np.ndarray:
    norm_sq = float(pairwise_sum(np.abs(amplitude.ravel()) ** 2)) * spacing**2
    if norm_sq < 1e-280:
        raise ZeroNormError("two-photon amplitude vanishes identically")
    return amplitude / np.sqrt(norm_sq)


def input_state(grid: FrequencyGrid, omega0: float, sigma: float) -> BiphotonState:
    """Separable Gaussian pair phi(omega1) phi(omega2), phi ~ exp(-(w-w0)^2/(2 s^2)).

    The grid must span omega0 +- 4 sigma so the pump tails are resolved.
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    slack = 1e-9 * sigma
    if grid.start > omega0 - PUMP_SPAN_SIGMAS * sigma + slack or grid.stop < (
        omega0 + PUMP_SPAN_SIGMAS * sigma - slack
    ):
        raise GridTooNarrowError(
            f"grid [{grid.start}, {grid.stop}] does not span omega0 +- "
            f"{PUMP_SPAN_SIGMAS} sigma = [{omega0 - PUMP_SPAN_SIGMAS * sigma}, "
            f"{omega0 + PUMP_SPAN_SIGMAS * sigma}]"
        )
    phi = np.exp(-((grid.values - omega0) ** 2) / (2.0 * sigma**2))
    amplitude = np.outer(phi, phi).astype(complex)
    return BiphotonState(grid=grid, amplitude=_normalize(amplitude, grid.spacing))


def apply_vertex(state: BiphotonState, vertex_values: np.ndarray) -> BiphotonState:
    """Multiply the amplitude pointwise by the sampled vertex and renormalize."""
    vertex_values = np.asarray(vertex_values)
    if vertex_values.shape != state.amplitude.shape:
        raise ValueError(
            f"vertex sample shape {vertex_values.shape} does not match state "
            f"{state.amplitude.shape}"
        )
    product = state.amplitude * vertex_values
    return BiphotonState(grid=state.grid, amplitude=_normalize(product, state.grid.spacing))


def schmidt_decompose(state: BiphotonState, n_max: int | None = None) -> SchmidtSpectrum:
    """Schmidt weights lambda_n = sigma_n^2 / sum sigma^2 from the measured SVD.

    The grid spacing is absorbed into the matrix (amplitude * d omega), making
    the weights invariant under grid refinement. Entropy uses 0 ln 0 = 0.
    """
    singular = svd_singular_values(state.amplitude * state.grid.spacing)
    weights = singular**2
    weights = weights / float(pairwise_sum(weights))
    if n_max is not None:
        weights = weights[:n_max]
    positive = weights[weights > 0]
    entropy = float(-pairwise_sum(positive * np.log(positive)))
    return SchmidtSpectrum(
        coefficients=weights, entropy_nats=entropy, entropy_bits=entropy / np.log(2.0)
    )


def analytic_schmidt(zeta: float, n_max: int):
    """Reference geometric spectrum lambda_n = lambda0 (zeta/(1+zeta))^n.

    Returns (raw, normalized): `raw` evaluates the printed closed form
    verbatim with lambda0 = sqrt(2 zeta (1+zeta)^2 / (pi ((1+zeta)^2 + zeta^2)))
    (which does not sum to one); `normalized` is the properly normalized
    geometric distribution (1-x) x^n with the same ratio x = zeta/(1+zeta).
    """
    if zeta < 0:
        raise ValueError(f"zeta must be >= 0, got {zeta}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    x = zeta / (1.0 + zeta)
    lam0 = np.sqrt(2.0 * zeta * (1.0 + zeta) ** 2 / (np.pi * ((1.0 + zeta) ** 2 + zeta**2)))
    powers = x ** np.arange(n_max, dtype=float)
    return lam0 * powers, (1.0 - x) * powers


def edge_momentum_map(omegas: np.ndarray, edge: BandEdgeParams) -> np.ndarray:
    """q*(omega) = sqrt(2 (omega - delta0)/curvature), clamped to 0 below edge."""
    radicand = 2.0 * (np.asarray(omegas, dtype=float) - edge.delta0) / edge.curvature
    return np.sqrt(np.clip(radicand, 0.0, None))


def entropy_scan(
    zeta_values,
    grid: FrequencyGrid,
    omega0: float,
    sigma: float,
    edge: BandEdgeParams,
    v0: float = 1.0,
) -> list[EntropyScanRow]:
    """Schmidt entropy vs kernel range for the stationary-phase Gaussian kernel.

    For each zeta the vertex is modeled as v0 exp(-zeta (q*(w1) - q*(w2))^2)
    in the band-edge momentum coordinates (frequencies below the edge map to
    q* = 0, where the kernel saturates). The geometric character of the
    resulting spectrum is summarized by a log-linear fit of the leading four
    weights: reported ratio exp(slope) and its R^2.
    """
    pump = input_state(grid, omega0, sigma)
    qstar = edge_momentum_map(grid.values, edge)
    rows: list[EntropyScanRow] = []
    for zeta in zeta_values:
        zeta = float(zeta)
        if zeta < 0:
            raise ValueError(f"zeta must be >= 0, got {zeta}")
        kernel = v0 * np.exp(-zeta * (qstar[:, None] - qstar[None, :]) ** 2)
        out = apply_vertex(pump, kernel)
        spectrum = schmidt_decompose(out)
        leading = tuple(float(x) for x in spectrum.coefficients[:4])
        ratio_fit, fit_r2 = _geometric_fit(np.asarray(leading))
        rows.append(
            EntropyScanRow(
                zeta=zeta,
                entropy_nats=spectrum.entropy_nats,
                entropy_bits=spectrum.entropy_bits,
                leading=leading,
                ratio_fit=ratio_fit,
                fit_r2=fit_r2,
            )
        )
    return rows


def _geometric_fit(leading: np.ndarray) -> tuple[float, float]:
    """Slope ratio and R^2 of ln(lambda_n) vs n over the leading weights."""
    if np.any(leading <= 0):
        # Separable spectrum: no geometric tail to fit.
        return 0.0, float("nan")
    logs = np.log(leading)
    ns = np.arange(leading.size, dtype=float)
    slope, intercept = np.polyfit(ns, logs, 1)
    predicted = intercept + slope * ns
    ss_res = float(np.sum((logs - predicted) ** 2))
    ss_tot = float(np.sum((logs - logs.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else float("nan")
    return float(np.exp(slope)), float(r2)
