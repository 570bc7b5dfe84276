"""Photon-number dependent cavity shift and the effective Kerr coefficient.

The n-photon resonance solves omega_n = omega_c + g^2 (n+1) I(omega_n) with
I the g=1 bubble; U and U' come from a quadratic fit of omega_n vs n, and the
weak-coupling closed form is the n-derivative of the self-energy at the bare
resonance, U = g^2 I(omega_c).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .cavity import BubbleTable, CavityParams
from .errors import CriticalPointError, NoConvergenceError
from .lattice import SshParams
from .numerics import complex_newton, polyfit_quadratic

KERR_DEFAULT_NK = 65536
CRITICAL_GUARD = 0.02


@dataclass(frozen=True)
class KerrResult:
    """Quadratic fit omega_n ~ omega0 + U n + (1/2) U' n^2 of the resonance ladder."""

    omega0: float
    u: complex
    uprime: complex
    omega_n: np.ndarray
    fit_residual: float


@dataclass(frozen=True)
class KerrScanRow:
    """One hopping ratio of the scan; result is None when the solve diverged."""

    r: float
    result: KerrResult | None
    u_closed: complex
    converged: bool


def solve_omega_sequence(
    n_max: int,
    p: SshParams,
    c: CavityParams,
    n_k: int = KERR_DEFAULT_NK,
    tol: float = 1e-12,
    max_iter: int = 60,
) -> np.ndarray:
    """omega_n for n = 0..n_max via complex Newton with continuation seeding.

    n = 0 is seeded at omega_c; each higher rung starts from the previous
    solution. The Newton derivative uses the analytic squared-denominator
    bubble.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    table = BubbleTable(p, c.eta, n_k)
    prefactor = c.g**2
    out = np.empty(n_max + 1, dtype=complex)
    seed = complex(c.omega_c)
    for n in range(n_max + 1):
        scale = prefactor * (n + 1)

        def f(z: complex) -> complex:
            return z - c.omega_c - scale * table.integral(z)

        def df(z: complex) -> complex:
            return 1.0 + scale * table.integral(z, power=2)

        seed = complex_newton(f, seed, tol=tol, max_iter=max_iter, df=df)
        out[n] = seed
    return out


def solve_omega_n(
    n: int,
    p: SshParams,
    c: CavityParams,
    n_k: int = KERR_DEFAULT_NK,
    tol: float = 1e-12,
    max_iter: int = 60,
) -> complex:
    """Self-consistent n-photon resonance omega_n (continuation from n = 0)."""
    return complex(solve_omega_sequence(n, p, c, n_k, tol, max_iter)[n])


def kerr_from_fit(omega_n: np.ndarray) -> KerrResult:
    """Fit the resonance ladder to omega0 + U n + (1/2) U' n^2 (complex lsq)."""
    omega_n = np.asarray(omega_n, dtype=complex)
    ns = np.arange(omega_n.size, dtype=float)
    c0, c1, c2 = polyfit_quadratic(ns, omega_n)
    model = c0 + c1 * ns + 0.5 * c2 * ns * ns
    residual = float(np.sqrt(np.mean(np.abs(omega_n - model) ** 2)))
    return KerrResult(
        omega0=float(c0.real),
        u=complex(c1),
        uprime=complex(c2),
        omega_n=omega_n,
        fit_residual=residual,
    )


def kerr_closed_form(
    p: SshParams, c: CavityParams, n_k: int = KERR_DEFAULT_NK
) -> complex:
    """Weak-coupling Kerr coefficient U = g^2 (1/2pi) int dk |mu|^2/(omega_c - Delta + i eta).

    This is d Sigma/d n at the bare resonance: negative real part when the
    cavity is pinned at the band edge (every transition sits above omega_c).
    """
    return c.g**2 * BubbleTable(p, c.eta, n_k).integral(c.omega_c)


def kerr_scan(
    r_values,
    p: SshParams,
    c: CavityParams,
    n_k: int = KERR_DEFAULT_NK,
    n_max: int = 5,
    tol: float = 1e-12,
    max_iter: int = 60,
) -> list[KerrScanRow]:
    """Kerr fit vs closed form across hopping ratios, omega_c re-pinned per row.

    Each row rebuilds the chain at t2 = r t1 and re-centers the cavity on the
    moving band edge omega_c = 2|t1 - t2| (resonant protocol). Ratios inside
    the critical guard |r - 1| < 0.02 are rejected up front; a row whose
    Newton solve diverges is recorded unconverged and the scan continues.
    """
    r_values = [float(r) for r in r_values]
    for r in r_values:
        if abs(r - 1.0) < CRITICAL_GUARD:
            raise CriticalPointError(
                f"r = {r} inside the critical guard |r-1| < {CRITICAL_GUARD}"
            )
    rows: list[KerrScanRow] = []
    for r in r_values:
        p_r = SshParams(p.t1, r * p.t1)
        c_r = replace(c, omega_c=2.0 * abs(p_r.t1 - p_r.t2))
        u_closed = kerr_closed_form(p_r, c_r, n_k)
        try:
            ladder = solve_omega_sequence(n_max, p_r, c_r, n_k, tol, max_iter)
        except NoConvergenceError:
            rows.append(KerrScanRow(r=r, result=None, u_closed=u_closed, converged=False))
            continue
        rows.append(
            KerrScanRow(r=r, result=kerr_from_fit(ladder), u_closed=u_closed, converged=True)
        )
    return rows
