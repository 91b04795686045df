"""Swap, conditional storage/retrieval, and entanglement transfer.

Each protocol is reduced to spectral averages of the T-matrix elements.
Detector efficiency η is taken constant over the pulse bandwidth.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateOperatingPointError, InvalidParameterError
from .scattering import SystemParams, t_matrix
from .spectral import DEFAULT_TOL, SpectralProfile, weighted_average

__all__ = [
    "PhotonQubit",
    "AtomQubit",
    "TwoQubitAmplitudes",
    "DetectorModel",
    "MemoryOutcome",
    "EntanglementOutcome",
    "ideal_swap",
    "overlap_D",
    "swap_fidelity",
    "fidelity_given_overlap",
    "r_ratio",
    "resonant_t_lr",
    "run_memory",
    "atomic_readout_probability",
    "coherent_source_probability",
    "two_qubit_ideal_swap",
    "run_entanglement_transfer",
]

NORM_TOL = 1e-12


def _check_norm(name: str, *amps: complex) -> None:
    n2 = sum(abs(a) ** 2 for a in amps)
    if abs(n2 - 1.0) > NORM_TOL:
        raise InvalidParameterError(f"{name} amplitudes must be normalized (|.|² sum = {n2!r})")


@dataclass(frozen=True)
class PhotonQubit:
    """Polarization qubit c_L|k̄_L> + c_R|k̄_R>."""

    c_l: complex
    c_r: complex

    def __post_init__(self):
        _check_norm("photon", self.c_l, self.c_r)

    @classmethod
    def normalized(cls, c_l: complex, c_r: complex) -> "PhotonQubit":
        n = math.sqrt(abs(c_l) ** 2 + abs(c_r) ** 2)
        return cls(c_l / n, c_r / n)


@dataclass(frozen=True)
class AtomQubit:
    """Ground-state qubit a_L|L> + a_R|R>."""

    a_l: complex
    a_r: complex

    def __post_init__(self):
        _check_norm("atom", self.a_l, self.a_r)

    @classmethod
    def normalized(cls, a_l: complex, a_r: complex) -> "AtomQubit":
        n = math.sqrt(abs(a_l) ** 2 + abs(a_r) ** 2)
        return cls(a_l / n, a_r / n)


@dataclass(frozen=True)
class TwoQubitAmplitudes:
    """Pair amplitudes in the basis order (LL, RR, LR, RL)."""

    ll: complex = 0j
    rr: complex = 0j
    lr: complex = 0j
    rl: complex = 0j

    def __post_init__(self):
        _check_norm("two-qubit", self.ll, self.rr, self.lr, self.rl)

    def as_array(self) -> np.ndarray:
        return np.array([self.ll, self.rr, self.lr, self.rl], dtype=complex)


@dataclass(frozen=True)
class DetectorModel:
    eta: float = 1.0

    def __post_init__(self):
        if not 0 < self.eta <= 1:
            raise InvalidParameterError(f"detector efficiency must lie in (0, 1], got {self.eta}")


@dataclass(frozen=True)
class MemoryOutcome:
    f_qm: float
    f_input: float
    p_storage: float
    p_net: float
    f_swap: float


@dataclass(frozen=True)
class EntanglementOutcome:
    """Entanglement storage figures.

    ``f_uncond`` is the fidelity without photon detection and
    ``f_uncond_bound`` the lower bound |[T_LR]_f1|·|[T_LR]_f2| on it (for
    equal cavities this is |[T_LR]_f|² = F_swap·F_qm).
    """

    f_cond: float
    f_uncond: float
    f_uncond_bound: float
    p_net: float


def ideal_swap(atom: AtomQubit, photon: PhotonQubit) -> tuple[AtomQubit, PhotonQubit]:
    """Exchange under T_LR = T_RL = 1: atom -> (c_R, c_L), photon -> (a_R, a_L)."""
    return AtomQubit(photon.c_r, photon.c_l), PhotonQubit(atom.a_r, atom.a_l)


def overlap_D(atom: AtomQubit, photon: PhotonQubit) -> float:
    """D = |<ψ_swap|ψ_a>|² with ψ_swap = c_R|L> + c_L|R>."""
    d = abs(np.conj(photon.c_r) * atom.a_l + np.conj(photon.c_l) * atom.a_r) ** 2
    return float(min(d, 1.0))


def _unit(x: float) -> float:
    # Cauchy-Schwarz ratios can exceed 1 by rounding
    return min(float(x), 1.0)


def _points(params: SystemParams) -> list[float]:
    # T varies on the scales κ and √λ̄² around both resonances
    scales = (params.kappa, math.sqrt(params.lambda_bar2), params.gamma or params.kappa)
    pts = [params.k_c, params.omega_e]
    for s in scales:
        pts += [params.k_c - s, params.k_c + s, params.omega_e - s, params.omega_e + s]
    return pts


def _avg(G, params: SystemParams, profile: SpectralProfile, tol: float) -> complex:
    return weighted_average(G, profile, tol=tol, points=_points(params))


def swap_fidelity(params: SystemParams, profile: SpectralProfile, tol: float = DEFAULT_TOL) -> float:
    """F_swap = [|T_LR(k)|²]_f."""
    return _avg(lambda k: np.abs(t_matrix(params, k).lr) ** 2, params, profile, tol).real


def fidelity_given_overlap(f0: float, d: float) -> float:
    """F(D) = F(0) + [1 - F(0)] D."""
    for name, v in (("F0", f0), ("D", d)):
        if not 0.0 <= v <= 1.0:
            raise InvalidParameterError(f"{name} must lie in [0, 1], got {v!r}")
    return f0 + (1.0 - f0) * d


def resonant_t_lr(params: SystemParams) -> complex:
    t = complex(t_matrix(params, params.k_c).lr)
    if abs(t) < 1e-300:
        raise DegenerateOperatingPointError("T_LR(k_c) = 0; the distortion ratio is undefined")
    return t


def r_ratio(params: SystemParams, k):
    """r_LR(k) = T_LR(k) / T_LR(k_c)."""
    return t_matrix(params, k).lr / resonant_t_lr(params)


def run_memory(
    params: SystemParams,
    profile: SpectralProfile,
    photon: PhotonQubit,
    det: DetectorModel = DetectorModel(),
    tol: float = DEFAULT_TOL,
) -> MemoryOutcome:
    """Write a photonic qubit into an atom prepared in |R>, then read it out.

    Writing keeps the output photon only if it is detected L-polarized. The
    atom then holds T_LR(k) c_R|L> + c_L|R>. Reading scatters a second
    R-polarized pulse and keeps the run if the atom ends in |L>, leaving the
    photon r_LR(k) c_R|k'_R> + r_LR(k') c_L|k'_L> (averaged over k').
    """
    eta = det.eta
    t_c = resonant_t_lr(params)
    cl2, cr2 = abs(photon.c_l) ** 2, abs(photon.c_r) ** 2

    def r(k):
        return t_matrix(params, k).lr / t_c

    mean_r = _avg(r, params, profile, tol)
    mean_r2 = _avg(lambda k: np.abs(r(k)) ** 2, params, profile, tol).real

    # norm of the stored atomic state after detecting photon 1 at k
    p_storage = _avg(
        lambda k: eta * (np.abs(t_matrix(params, k).lr) ** 2 * cr2 + cl2), params, profile, tol
    ).real

    # <φ_out|φ_out> and <φ_p2|φ_out> at each k of the first photon
    def out_norm(k):
        return np.abs(r(k)) ** 2 * cr2 + mean_r2 * cl2

    def overlap2(k):
        return np.abs(cr2 * r(k) + cl2 * mean_r) ** 2

    denom = _avg(lambda k: eta * out_norm(k), params, profile, tol).real
    numer = _avg(lambda k: eta * overlap2(k), params, profile, tol).real

    return MemoryOutcome(
        f_qm=_unit(abs(mean_r) ** 2 / mean_r2),
        f_input=_unit(numer / denom),
        p_storage=p_storage,
        p_net=abs(t_c) ** 2 * denom,
        f_swap=swap_fidelity(params, profile, tol),
    )


def atomic_readout_probability(params: SystemParams, det: DetectorModel = DetectorModel()) -> float:
    """η |T_RL(k_c)|²: heralding |L> with a third, L-polarized probe pulse."""
    return det.eta * float(abs(t_matrix(params, params.k_c).rl) ** 2)


def coherent_source_probability(p_net: float, alpha: complex) -> float:
    """Success probability with a weak coherent source |α>, |α|² << 1."""
    return abs(alpha) ** 2 * p_net


def two_qubit_ideal_swap(
    atoms: TwoQubitAmplitudes, photons: TwoQubitAmplitudes
) -> tuple[TwoQubitAmplitudes, TwoQubitAmplitudes]:
    """Pair swap under T_LR = T_RL = 1 in each cavity; L and R are exchanged."""
    return (
        TwoQubitAmplitudes(photons.rr, photons.ll, photons.rl, photons.lr),
        TwoQubitAmplitudes(atoms.rr, atoms.ll, atoms.rl, atoms.lr),
    )


def run_entanglement_transfer(
    params1: SystemParams,
    params2: SystemParams,
    profile1: SpectralProfile,
    profile2: SpectralProfile,
    photons: TwoQubitAmplitudes,
    det1: DetectorModel = DetectorModel(),
    det2: DetectorModel = DetectorModel(),
    tol: float = DEFAULT_TOL,
) -> EntanglementOutcome:
    """Store c_LR|k̄_L k̄'_R> + c_RL|k̄_R k̄'_L> into two atoms prepared in |RR>.

    The target atomic state is c_RL|LR> + c_LR|RL>. After detecting both
    photons L-polarized, the (k, k') component of the atoms is
    T1(k) c_RL|LR> + T2(k') c_LR|RL>, with T_i the T_LR of cavity i.
    """
    if abs(photons.ll) > 0 or abs(photons.rr) > 0:
        raise InvalidParameterError("entanglement input must only populate the LR and RL components")
    resonant_t_lr(params1)
    resonant_t_lr(params2)
    x = abs(photons.rl) ** 2  # weight of the branch stored in cavity 1
    y = abs(photons.lr) ** 2

    def t1(k):
        return t_matrix(params1, k).lr

    def t2(k):
        return t_matrix(params2, k).lr

    mean_t2 = _avg(t2, params2, profile2, tol)
    swap2 = _avg(lambda k: np.abs(t2(k)) ** 2, params2, profile2, tol).real
    mean_t1 = _avg(t1, params1, profile1, tol)
    swap1 = _avg(lambda k: np.abs(t1(k)) ** 2, params1, profile1, tol).real

    # outer k-average of the inner k'-average of |x T1(k) + y T2(k')|²
    def inner(k):
        a = x * t1(k)
        return np.abs(a) ** 2 + 2 * np.real(np.conj(a) * y * mean_t2) + y**2 * swap2

    overlap = _avg(inner, params1, profile1, tol).real
    norm = x * swap1 + y * swap2
    eta12 = det1.eta * det2.eta
    return EntanglementOutcome(
        f_cond=_unit(overlap / norm),
        f_uncond=overlap,
        f_uncond_bound=abs(mean_t1) * abs(mean_t2),
        p_net=eta12 * norm,
    )
