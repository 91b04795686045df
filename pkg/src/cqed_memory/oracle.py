"""Brute-force cross-check of the protocol formulas.

The photon continuum is replaced by N wavenumber nodes whose weights
approximate |f(k)|² dk. Joint atom-photon amplitude arrays are built
explicitly, the scattering map is applied node by node as a 4×4 matrix on
(atom ⊗ polarization), detections are projections, and fidelities are read
off the resulting states. None of the spectral-average reductions used in
:mod:`cqed_memory.protocols` appear here; only the T-matrix is shared.

Index convention for every atom and polarization axis: 0 = L, 1 = R.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import InvalidParameterError, ResolutionError
from .protocols import (
    AtomQubit,
    DetectorModel,
    EntanglementOutcome,
    MemoryOutcome,
    PhotonQubit,
    TwoQubitAmplitudes,
)
from .scattering import SystemParams, t_matrix
from .spectral import GAUSSIAN_HALF_WINDOW, ProfileKind, SpectralProfile

__all__ = [
    "GridState",
    "PureEnsemble",
    "spectral_grid",
    "scattering_operator",
    "oracle_swap",
    "oracle_memory",
    "oracle_entangle",
]

L, R = 0, 1
GridKind = Literal["gauss", "uniform"]
BOOKKEEPING_TOL = 1e-9
MAX_ENTANGLE_NODES = 128


def _hermite_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Hermite nodes and weights normalized to sum 1 (Golub-Welsch).

    numpy's hermgauss overflows beyond a few hundred nodes; the eigenvalue
    route stays finite for any N.
    """
    off = np.sqrt(np.arange(1, n) / 2.0)
    x, vecs = np.linalg.eigh(np.diag(off, 1) + np.diag(off, -1))
    x = 0.5 * (x - x[::-1])  # enforce exact symmetry, centre node at 0
    wt = vecs[0] ** 2
    wt = 0.5 * (wt + wt[::-1])
    return x, wt / wt.sum()


def spectral_grid(profile: SpectralProfile, n: int, kind: GridKind = "gauss") -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights (summing to 1) discretizing |f(k)|² dk.

    ``gauss``: Gauss-Hermite nodes for Gaussian pulses; Gauss-Legendre nodes
    in u for Lorentzian pulses, with k = center + width·tan(u).
    ``uniform``: equally spaced nodes over the ±8-width window (Gaussian) or
    equally spaced midpoints in u (Lorentzian), with density weights.
    """
    if n < 2:
        raise InvalidParameterError(f"grid needs at least 2 nodes, got {n}")
    c, w = profile.center, profile.width
    if profile.kind is ProfileKind.GAUSSIAN:
        if kind == "gauss":
            x, wt = _hermite_rule(n)
            return c + w * x, wt
        k = np.linspace(c - GAUSSIAN_HALF_WINDOW * w, c + GAUSSIAN_HALF_WINDOW * w, n)
        wt = profile.density(k)
        return k, wt / wt.sum()
    if kind == "gauss":
        x, wt = np.polynomial.legendre.leggauss(n)
        return c + w * np.tan(0.5 * math.pi * x), wt / 2.0
    u = (np.arange(n) + 0.5) / n - 0.5
    return c + w * np.tan(math.pi * u), np.full(n, 1.0 / n)


@dataclass
class GridState:
    """Discretized joint state plus the probability lost to spontaneous emission."""

    nodes: np.ndarray
    weights: np.ndarray
    amplitudes: np.ndarray
    loss_weight: float = 0.0

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def total_probability(self) -> float:
        return self.norm2() + self.loss_weight

    def check(self) -> None:
        if abs(self.weights.sum() - 1.0) > BOOKKEEPING_TOL:
            raise AssertionError(f"grid weights sum to {self.weights.sum()!r}")
        if abs(self.total_probability() - 1.0) > BOOKKEEPING_TOL:
            raise AssertionError(f"probability not conserved: {self.total_probability()!r}")


@dataclass
class PureEnsemble:
    """Mixture of normalized pure states, one member per detected wavenumber."""

    weights: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        if np.any(self.weights < 0):
            raise AssertionError("negative ensemble weight")

    @property
    def probability(self) -> float:
        return float(self.weights.sum())


def scattering_operator(params: SystemParams, k: np.ndarray) -> np.ndarray:
    """Per-node 4×4 matrix of 𝒯 on the flattened (atom, polarization) index 2·atom + pol."""
    tm = t_matrix(params, k)
    op = np.zeros((k.size, 4, 4), dtype=complex)
    ll, lr, rl, rr = 2 * L + L, 2 * L + R, 2 * R + L, 2 * R + R
    op[:, ll, ll] = tm.ll
    op[:, ll, rr] = tm.lr
    op[:, rr, ll] = tm.rl
    op[:, rr, rr] = tm.rr
    op[:, lr, lr] = 1.0
    op[:, rl, rl] = 1.0
    return op


def _lossless(params: SystemParams) -> bool:
    if params.bright_stub is not None:
        return abs(params.bright_stub) == 1.0
    return params.gamma == 0.0


def _scatter(state: GridState, params: SystemParams, atom_axis: int, pol_axis: int, node_axis: int) -> GridState:
    """Apply 𝒯 at every node along ``node_axis`` to the (atom, pol) axis pair."""
    amps = state.amplitudes
    before = state.norm2()
    moved = np.moveaxis(amps, (atom_axis, pol_axis, node_axis), (0, 1, 2))
    shape = moved.shape
    flat = moved.reshape(4, shape[2], -1)
    out = np.einsum("nij,jnr->inr", scattering_operator(params, state.nodes), flat)
    out = np.moveaxis(out.reshape(shape), (0, 1, 2), (atom_axis, pol_axis, node_axis))
    new = GridState(state.nodes, state.weights, out, state.loss_weight)
    if not _lossless(params):
        new.loss_weight += before - new.norm2()
    return new


def _check_odd(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise InvalidParameterError(f"N must be odd and at least 3 (centre node on resonance), got {n}")


def _resolve(run, n: int, tol: float | None, coarse: int):
    """Run at ``n`` nodes; with ``tol``, also at ``coarse`` nodes and demand agreement."""
    fine = run(n)
    if tol is not None:
        rough = run(coarse)
        diff = max(abs(a - b) for a, b in zip(_values(fine), _values(rough)))
        if diff > tol:
            raise ResolutionError(
                f"results at N={coarse} and N={n} differ by {diff:.3g} > {tol:.3g}", suggested_n=2 * n + 1
            )
    return fine


def _values(result) -> tuple[float, ...]:
    if isinstance(result, tuple):
        return result
    return tuple(vars(result).values())


def oracle_swap(
    params: SystemParams,
    profile: SpectralProfile,
    atom: AtomQubit,
    photon: PhotonQubit,
    n: int = 201,
    grid: GridKind = "gauss",
    tol: float | None = None,
) -> tuple[float, float]:
    """Unconditional swap on a grid: returns (<ψ_swap|ρ_atom|ψ_swap>, lost probability)."""
    _check_odd(n)

    def run(m: int) -> tuple[float, float]:
        k, w = spectral_grid(profile, m, grid)
        a = np.array([atom.a_l, atom.a_r], dtype=complex)
        c = np.array([photon.c_l, photon.c_r], dtype=complex)
        amps = a[:, None, None] * c[None, :, None] * np.sqrt(w)[None, None, :]
        state = GridState(k, w, amps)
        state.check()
        state = _scatter(state, params, 0, 1, 2)
        state.check()
        target = np.array([photon.c_r, photon.c_l], dtype=complex)
        # Tr over photon (pol, k) of |ψ><ψ|, then <ψ_swap|.|ψ_swap>
        proj = np.einsum("a,apn->pn", np.conj(target), state.amplitudes)
        return float(np.sum(np.abs(proj) ** 2)), state.loss_weight

    return _resolve(run, n, tol, max(3, (n // 2) | 1))


def _write(params, profile, photon, eta, k, w) -> tuple[GridState, PureEnsemble]:
    """Scatter photon 1 off an atom in |R>, then detect it L-polarized."""
    c = np.array([photon.c_l, photon.c_r], dtype=complex)
    amps = np.zeros((2, 2, k.size), dtype=complex)
    amps[R] = c[:, None] * np.sqrt(w)[None, :]
    state = GridState(k, w, amps)
    state.check()
    state = _scatter(state, params, 0, 1, 2)
    state.check()
    atom = state.amplitudes[:, L, :].T  # (node, atom), unnormalized
    norm2 = np.sum(np.abs(atom) ** 2, axis=1)
    keep = norm2 > 0
    return state, PureEnsemble(eta * norm2[keep], atom[keep] / np.sqrt(norm2[keep])[:, None])


def _read(params, ensemble: PureEnsemble, k, w):
    """Scatter an R-polarized photon off each member, then project the atom on |L>.

    Returns the photon amplitudes (member, pol, node) and checks bookkeeping.
    """
    m = ensemble.states.shape[0]
    amps = np.zeros((m, 2, 2, k.size), dtype=complex)
    amps[:, :, R, :] = ensemble.states[:, :, None] * np.sqrt(w)[None, None, :]
    state = GridState(k, w, amps)
    # member-wise normalized states: the total is the number of members
    if abs(state.norm2() - m) > BOOKKEEPING_TOL * m:
        raise AssertionError("read-out input not normalized")
    out = _scatter(state, params, 1, 2, 3)
    if abs(out.norm2() + out.loss_weight - m) > BOOKKEEPING_TOL * m:
        raise AssertionError("probability not conserved during read-out")
    return out.amplitudes[:, L, :, :]


def _memory_stats(params, profile, photon, eta, m_nodes, grid):
    k, w = spectral_grid(profile, m_nodes, grid)
    _, ensemble = _write(params, profile, photon, eta, k, w)
    out = _read(params, ensemble, k, w)
    p_l = np.sum(np.abs(out) ** 2, axis=(1, 2))
    reference = np.array([photon.c_l, photon.c_r], dtype=complex)[:, None] * np.sqrt(w)[None, :]
    overlap = np.einsum("pn,mpn->m", np.conj(reference), out)
    p_net = float(np.sum(ensemble.weights * p_l))
    fid = float(np.sum(ensemble.weights * np.abs(overlap) ** 2)) / p_net
    return ensemble.probability, p_net, fid


def oracle_memory(
    params: SystemParams,
    profile: SpectralProfile,
    photon: PhotonQubit,
    det: DetectorModel = DetectorModel(),
    n: int = 201,
    grid: GridKind = "gauss",
    tol: float | None = None,
) -> MemoryOutcome:
    """Storage and retrieval simulated on a grid.

    F_qm is the fidelity of a run with input |k̄_L>; F_swap is the storage
    probability of a run with input |k̄_R>, divided by η.
    """
    _check_odd(n)

    def run(m: int) -> MemoryOutcome:
        p_storage, p_net, f_input = _memory_stats(params, profile, photon, det.eta, m, grid)
        _, _, f_qm = _memory_stats(params, profile, PhotonQubit(1.0, 0.0), det.eta, m, grid)
        p_r, _, _ = _memory_stats(params, profile, PhotonQubit(0.0, 1.0), det.eta, m, grid)
        return MemoryOutcome(
            f_qm=min(f_qm, 1.0),
            f_input=min(f_input, 1.0),
            p_storage=p_storage,
            p_net=p_net,
            f_swap=p_r / det.eta,
        )

    return _resolve(run, n, tol, max(3, (n // 2) | 1))


def oracle_entangle(
    params1: SystemParams,
    params2: SystemParams,
    profile1: SpectralProfile,
    profile2: SpectralProfile,
    photons: TwoQubitAmplitudes,
    det1: DetectorModel = DetectorModel(),
    det2: DetectorModel = DetectorModel(),
    n: int = 64,
    grid: GridKind = "gauss",
    tol: float | None = None,
) -> EntanglementOutcome:
    """Entanglement storage on an N×N two-photon grid.

    Amplitude axes: (atom 1, atom 2, pol 1, pol 2, node 1, node 2).
    """
    if not 2 <= n <= MAX_ENTANGLE_NODES:
        raise InvalidParameterError(f"two-photon grid needs 2 <= N <= {MAX_ENTANGLE_NODES}, got {n}")
    if abs(photons.ll) > 0 or abs(photons.rr) > 0:
        raise InvalidParameterError("entanglement input must only populate the LR and RL components")

    def run(m: int) -> EntanglementOutcome:
        k1, w1 = spectral_grid(profile1, m, grid)
        k2, w2 = spectral_grid(profile2, m, grid)
        env = np.sqrt(np.outer(w1, w2))
        amps = np.zeros((2, 2, 2, 2, m, m), dtype=complex)
        amps[R, R, L, R] = photons.lr * env
        amps[R, R, R, L] = photons.rl * env
        # the node axes carry different grids; track them separately
        state = GridState(k1, w1, amps)
        if abs(state.norm2() - 1.0) > BOOKKEEPING_TOL:
            raise AssertionError("input not normalized")
        state = _scatter(state, params1, 0, 2, 4)
        state = GridState(k2, w2, state.amplitudes, state.loss_weight)
        state = _scatter(state, params2, 1, 3, 5)
        if abs(state.total_probability() - 1.0) > BOOKKEEPING_TOL:
            raise AssertionError("probability not conserved")

        target = np.zeros((2, 2), dtype=complex)
        target[L, R] = photons.rl
        target[R, L] = photons.lr
        overlap = np.einsum("ab,abpqxy->pqxy", np.conj(target), state.amplitudes)
        f_uncond = float(np.sum(np.abs(overlap) ** 2))

        detected = state.amplitudes[:, :, L, L].reshape(4, -1).T  # (n1·n2, a1·a2)
        norm2 = np.sum(np.abs(detected) ** 2, axis=1)
        keep = norm2 > 0
        ens = PureEnsemble(
            det1.eta * det2.eta * norm2[keep], detected[keep] / np.sqrt(norm2[keep])[:, None]
        )
        f_cond = det1.eta * det2.eta * float(np.sum(np.abs(overlap[L, L]) ** 2)) / ens.probability

        t1 = np.sum(w1 * t_matrix(params1, k1).lr)
        t2 = np.sum(w2 * t_matrix(params2, k2).lr)
        return EntanglementOutcome(
            f_cond=min(f_cond, 1.0),
            f_uncond=f_uncond,
            f_uncond_bound=float(abs(t1) * abs(t2)),
            p_net=ens.probability,
        )

    return _resolve(run, n, tol, max(2, n // 2))
