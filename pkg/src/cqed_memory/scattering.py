"""Atom-photon scattering in a one-sided cavity holding a Λ-type atom.

The photon polarizations L and R couple the ground states |L>, |R> to the
excited state |e> through cavity-structured couplings

    g_pol(k) = λ_pol √(κ/π) e^{iθ_pol} / (k - k_c + iκ).

Only the bright combination of ground states couples; it picks up the
scattering amplitude e^{iφ_s(k)}, which is non-unitary when γ > 0.

Every function here is vectorized over ``k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .errors import InvalidParameterError

__all__ = [
    "SystemParams",
    "TMatrix",
    "JointAmplitudesAtK",
    "coupling",
    "bright_fraction",
    "bright_amplitude",
    "t_matrix",
    "scatter_at_k",
]

Pol = Literal["L", "R"]


@dataclass(frozen=True)
class SystemParams:
    """Cavity and atom constants, in units of κ.

    The defaults describe the symmetric Λ atom (λ_L = λ_R, θ_L - θ_R = π,
    so g_L = -g_R) at λ = 5κ, γ = 0.5κ, on resonance.

    ``bright_stub`` replaces the cavity formula for e^{iφ_s(k)} with a
    k-independent constant. It exists to probe ideal limits such as
    e^{iφ_s} ≡ -1.
    """

    lambda_l: float = 5.0
    lambda_r: float = 5.0
    theta_l: float = 0.0
    theta_r: float = math.pi
    omega_e: float = 0.0
    gamma: float = 0.5
    k_c: float = 0.0
    kappa: float = 1.0
    bright_stub: complex | None = None

    def __post_init__(self):
        for name in ("lambda_l", "lambda_r", "theta_l", "theta_r", "omega_e", "gamma", "k_c", "kappa"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")
        if self.kappa <= 0:
            raise InvalidParameterError(f"kappa must be positive, got {self.kappa}")
        if self.gamma < 0:
            raise InvalidParameterError(f"gamma must be nonnegative, got {self.gamma}")
        if self.lambda_l < 0 or self.lambda_r < 0:
            raise InvalidParameterError("coupling strengths must be nonnegative")
        if self.lambda_l == 0 and self.lambda_r == 0:
            raise InvalidParameterError("at least one of lambda_l, lambda_r must be nonzero")
        if self.bright_stub is not None and abs(self.bright_stub) > 1 + 1e-12:
            raise InvalidParameterError("bright_stub must have modulus <= 1")

    @classmethod
    def symmetric(cls, lam: float, gamma: float = 0.5, detuning: float = 0.0, **kw) -> "SystemParams":
        """λ_L = λ_R = ``lam`` with g_L = -g_R; ``detuning`` is ω_e - k_c."""
        k_c = kw.pop("k_c", 0.0)
        return cls(lambda_l=lam, lambda_r=lam, gamma=gamma, k_c=k_c, omega_e=k_c + detuning, **kw)

    @classmethod
    def ideal(cls, **kw) -> "SystemParams":
        """Symmetric atom with the bright amplitude pinned to -1 at every k."""
        return cls(bright_stub=-1.0 + 0j, **kw)

    @property
    def lambda_bar2(self) -> float:
        """Total bright-state coupling λ_L² + λ_R²."""
        return self.lambda_l**2 + self.lambda_r**2

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)


def coupling(params: SystemParams, k, pol: Pol):
    """Dipole coupling g_pol(k)."""
    lam, theta = _pol_constants(params, pol)
    k = np.asarray(k, dtype=float)
    return lam * math.sqrt(params.kappa / math.pi) * np.exp(1j * theta) / (k - params.k_c + 1j * params.kappa)


def _pol_constants(params: SystemParams, pol: Pol) -> tuple[float, float]:
    if pol == "L":
        return params.lambda_l, params.theta_l
    if pol == "R":
        return params.lambda_r, params.theta_r
    raise InvalidParameterError(f"polarization must be 'L' or 'R', got {pol!r}")


def bright_fraction(params: SystemParams, k, pol: Pol):
    """ξ_pol(k) = g_pol(k) / sqrt(|g_L(k)|² + |g_R(k)|²).

    The Lorentzian factor of the couplings cancels in modulus, so |ξ_pol|
    does not depend on k; only a phase common to both polarizations does.
    """
    _pol_constants(params, pol)
    gl = coupling(params, k, "L")
    gr = coupling(params, k, "R")
    norm = np.sqrt(np.abs(gl) ** 2 + np.abs(gr) ** 2)
    return (gl if pol == "L" else gr) / norm


def bright_amplitude(params: SystemParams, k):
    """Bright-state scattering amplitude e^{iφ_s(k)}.

    e^{iφ_s} = 1 - 2πi G²(k) / (k - ω_e + iγ - Σ(k)) with the total spectral
    coupling G²(k) = λ̄² (κ/π) / ((k-k_c)² + κ²) and the cavity self-energy
    Σ(k) = λ̄² / (k - k_c + iκ). Equivalently, the reflection coefficient of
    the atom-loaded cavity divided by that of the empty cavity. The modulus
    is 1 for γ = 0 and below 1 otherwise.
    """
    k = np.asarray(k, dtype=float)
    if params.bright_stub is not None:
        return np.full(k.shape, complex(params.bright_stub))[()]
    lam2 = params.lambda_bar2
    dk = k - params.k_c
    g2 = lam2 * (params.kappa / math.pi) / (dk**2 + params.kappa**2)
    sigma = lam2 / (dk + 1j * params.kappa)
    return 1.0 - 2j * math.pi * g2 / (k - params.omega_e + 1j * params.gamma - sigma)


@dataclass(frozen=True)
class TMatrix:
    """Scattering amplitudes at fixed k (scalars or arrays).

    𝒯|L k_L> = ll |L k_L> + rl |R k_R>
    𝒯|R k_R> = lr |L k_L> + rr |R k_R>
    """

    ll: complex
    lr: complex
    rl: complex
    rr: complex

    def matrix(self) -> np.ndarray:
        """2×2 (or 2×2×n) map acting on amplitudes of (|L k_L>, |R k_R>)."""
        return np.array([[self.ll, self.lr], [self.rl, self.rr]])


def t_matrix(params: SystemParams, k) -> TMatrix:
    xl = bright_fraction(params, k, "L")
    xr = bright_fraction(params, k, "R")
    e = bright_amplitude(params, k)
    wl = np.abs(xl) ** 2
    wr = np.abs(xr) ** 2
    cross = np.conj(xl) * xr * (e - 1.0)
    return TMatrix(
        ll=e * wl + wr,
        lr=cross,
        rl=np.exp(2j * (params.theta_l - params.theta_r)) * cross,
        rr=e * wr + wl,
    )


@dataclass(frozen=True)
class JointAmplitudesAtK:
    """Atom-photon amplitudes on |L k_L>, |R k_R>, |L k_R>, |R k_L>."""

    l_kl: complex = 0j
    r_kr: complex = 0j
    l_kr: complex = 0j
    r_kl: complex = 0j

    def norm2(self) -> float:
        return float(abs(self.l_kl) ** 2 + abs(self.r_kr) ** 2 + abs(self.l_kr) ** 2 + abs(self.r_kl) ** 2)


def scatter_at_k(state: JointAmplitudesAtK, tm: TMatrix) -> JointAmplitudesAtK:
    """Apply 𝒯 at one wavenumber; |L k_R> and |R k_L> pass unchanged."""
    return JointAmplitudesAtK(
        l_kl=tm.ll * state.l_kl + tm.lr * state.r_kr,
        r_kr=tm.rl * state.l_kl + tm.rr * state.r_kr,
        l_kr=state.l_kr,
        r_kl=state.r_kl,
    )
