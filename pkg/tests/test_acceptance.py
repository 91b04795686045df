"""Acceptance criteria, one PASS/FAIL line each (shown in the terminal summary).

Run alone with ``python3 -m pytest tests/test_acceptance.py -v``.
"""
import io
import math

import numpy as np
import pytest

from cqed_memory import SystemParams, cli, gaussian_profile, lorentzian_profile
from cqed_memory.oracle import oracle_entangle, oracle_memory, oracle_swap
from cqed_memory.protocols import (
    AtomQubit,
    DetectorModel,
    PhotonQubit,
    TwoQubitAmplitudes,
    fidelity_given_overlap,
    run_entanglement_transfer,
    run_memory,
    swap_fidelity,
)
from cqed_memory.scattering import bright_amplitude, t_matrix
from cqed_memory.spectral import weighted_average

from .conftest import ACCEPTANCE_LINES, random_params

PULSE = gaussian_profile(0.0, 0.1)


def record(label: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def check_value(label: str, computed: float, target: float, tol: float) -> None:
    delta = abs(computed - target)
    ok = delta <= tol
    record(label, ok, f"computed {computed:.6f}, target {target} ± {tol} (|Δ| = {delta:.6f})")
    assert ok, f"{label}: {computed} vs {target} ± {tol}"


def test_c1_swap_gaussian():
    f = swap_fidelity(SystemParams.symmetric(5.0), PULSE)
    check_value("C1 F_swap Gaussian κ_p=0.1", f, 0.975, 0.003)


@pytest.mark.parametrize("kp,target", [(0.1, 0.887), (0.02, 0.960)])
def test_c2_swap_lorentzian(kp, target):
    f = swap_fidelity(SystemParams.symmetric(5.0), lorentzian_profile(0.0, kp))
    check_value(f"C2 F_swap Lorentzian κ_p={kp}", f, target, 0.003)


@pytest.mark.parametrize("lam,target", [(5.0, 0.995), (1.0, 0.994), (0.5, 0.999)])
def test_c3_memory_fidelity(lam, target):
    out = run_memory(SystemParams.symmetric(lam), PULSE, PhotonQubit(1.0, 0.0))
    check_value(f"C3 F_qm λ={lam}", out.f_qm, target, 0.002)


@pytest.mark.parametrize("lam,target", [(5.0, 0.975), (1.0, 0.634), (0.5, 0.248)])
def test_c4_net_success(lam, target):
    eta = 0.8
    out = run_memory(SystemParams.symmetric(lam), PULSE, PhotonQubit(1.0, 0.0), DetectorModel(eta))
    check_value(f"C4 P_net/η λ={lam}", out.p_net / eta, target, 0.003)


def test_c5_identities():
    rng = np.random.default_rng(2024)
    worst = {"p_net": 0.0, "mean_t": 0.0, "unitarity": 0.0, "symmetric": 0.0}
    for _ in range(20):
        p = random_params(rng)
        eta = rng.uniform(0.1, 1.0)
        out = run_memory(p, PULSE, PhotonQubit(0.6, 0.8j), DetectorModel(eta))
        worst["p_net"] = max(worst["p_net"], abs(out.p_net - eta * out.f_swap))
        mean_t = weighted_average(lambda k: t_matrix(p, k).lr, PULSE)
        worst["mean_t"] = max(worst["mean_t"], abs(abs(mean_t) ** 2 - out.f_swap * out.f_qm))

        k = rng.uniform(-20, 20, 200)
        tm = t_matrix(p.with_(gamma=0.0), k)
        worst["unitarity"] = max(worst["unitarity"], float(np.max(np.abs(np.abs(tm.ll) ** 2 + np.abs(tm.rl) ** 2 - 1))))
        ps = random_params(rng, symmetric=True)
        ts = t_matrix(ps, k).lr
        worst["symmetric"] = max(worst["symmetric"], float(np.max(np.abs(ts - (1 - bright_amplitude(ps, k)) / 2))))
    limits = {"p_net": 1e-10, "mean_t": 1e-10, "unitarity": 1e-12, "symmetric": 1e-12}
    ok = all(worst[n] <= limits[n] for n in worst)
    record("C5 identity suite", ok, ", ".join(f"{n} {worst[n]:.1e} (≤ {limits[n]:.0e})" for n in worst))
    assert ok


def test_c6_oracle_equivalence():
    rng = np.random.default_rng(6)
    worst_single, worst_pair = 0.0, 0.0
    for _ in range(20):
        p1, p2 = random_params(rng), random_params(rng)
        photon = PhotonQubit.normalized(complex(*rng.normal(size=2)), complex(*rng.normal(size=2)))
        det = DetectorModel(rng.uniform(0.2, 1.0))

        # |R k_R> -> T_LR|L k_L>; |L k_L> -> T_RL|R k_R>
        fid_r, _ = oracle_swap(p1, PULSE, AtomQubit(0.0, 1.0), PhotonQubit(0.0, 1.0), n=201)
        fid_l, _ = oracle_swap(p1, PULSE, AtomQubit(1.0, 0.0), PhotonQubit(1.0, 0.0), n=201)
        t_rl2 = weighted_average(lambda k: np.abs(t_matrix(p1, k).rl) ** 2, PULSE).real
        worst_single = max(worst_single, abs(fid_r - swap_fidelity(p1, PULSE)), abs(fid_l - t_rl2))

        a = oracle_memory(p1, PULSE, photon, det, n=201)
        b = run_memory(p1, PULSE, photon, det)
        for name in ("f_qm", "f_input", "p_storage", "p_net", "f_swap"):
            worst_single = max(worst_single, abs(getattr(a, name) - getattr(b, name)))

        mix = rng.uniform(0, math.pi / 2)
        pair = TwoQubitAmplitudes(lr=math.sin(mix) * np.exp(1j * rng.uniform(-3, 3)), rl=math.cos(mix))
        a = oracle_entangle(p1, p2, PULSE, PULSE, pair, det, det, n=64)
        b = run_entanglement_transfer(p1, p2, PULSE, PULSE, pair, det, det)
        for name in ("f_cond", "f_uncond", "f_uncond_bound", "p_net"):
            worst_pair = max(worst_pair, abs(getattr(a, name) - getattr(b, name)))
    ok = worst_single <= 1e-6 and worst_pair <= 1e-5
    record(
        "C6 oracle equivalence (20 draws)",
        ok,
        f"swap/memory max |Δ| {worst_single:.1e} (≤ 1e-6), entanglement max |Δ| {worst_pair:.1e} (≤ 1e-5)",
    )
    assert ok


def test_c7_overlap_law():
    p = SystemParams.symmetric(5.0)
    f0 = swap_fidelity(p, PULSE)
    worst = 0.0
    for d in (0.0, 0.25, 0.5, 1.0):
        fid, _ = oracle_swap(p, PULSE, AtomQubit(math.sqrt(1 - d), math.sqrt(d)), PhotonQubit(1.0, 0.0), n=201)
        worst = max(worst, abs(fid - fidelity_given_overlap(f0, d)))
    ok = worst <= 1e-6
    record("C7 F(D) law, D ∈ {0, 0.25, 0.5, 1}", ok, f"max |Δ| {worst:.1e} (≤ 1e-6)")
    assert ok


def test_c8_detuning_robustness():
    f0 = swap_fidelity(SystemParams.symmetric(5.0), PULSE)
    shifts = np.linspace(-0.5, 0.5, 11)
    worst = max(abs(swap_fidelity(SystemParams.symmetric(5.0, detuning=d), PULSE) - f0) for d in shifts)
    ok = worst < 0.01
    record("C8 detuning |ω_e - k_c| ≤ 0.5", ok, f"max |ΔF_swap| {worst:.2e} (< 0.01)")
    assert ok


def test_c9_ideal_limit():
    p = SystemParams.ideal()
    eta = 0.7
    f_swap = swap_fidelity(p, PULSE)
    mem = run_memory(p, PULSE, PhotonQubit(0.6, 0.8j), DetectorModel(eta))
    bell = TwoQubitAmplitudes(lr=1 / math.sqrt(2), rl=1 / math.sqrt(2))
    ent = run_entanglement_transfer(p, p, PULSE, PULSE, bell)
    errors = [abs(f_swap - 1), abs(mem.f_qm - 1), abs(ent.f_cond - 1), abs(mem.p_net - eta)]
    ok = max(errors) <= 1e-12
    record("C9 ideal limit e^{iφ_s} = -1", ok, f"max deviation {max(errors):.1e} (≤ 1e-12)")
    assert ok


def test_c10_reproduce_paper_command():
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(["reproduce-paper", "--tolerance", "0.003"], out, err)
    ok = code == cli.EXIT_OK
    record("C10 reproduce-paper exits 0", ok, f"exit {code}; {err.getvalue().strip()}")
    assert ok
