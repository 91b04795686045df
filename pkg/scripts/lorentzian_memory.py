"""Memory figures for a narrow Lorentzian pulse (κ_p = 0.01κ), for which no published values exist."""
from cqed_memory import SystemParams, lorentzian_profile
from cqed_memory.protocols import PhotonQubit, run_memory


def main():
    pulse = lorentzian_profile(0.0, 0.01)
    print("lambda,f_qm,p_net_over_eta")
    for lam in (5.0, 1.0, 0.5):
        out = run_memory(SystemParams.symmetric(lam), pulse, PhotonQubit(1.0, 0.0))
        print(f"{lam},{out.f_qm:.5f},{out.p_net:.5f}")


if __name__ == "__main__":
    main()
