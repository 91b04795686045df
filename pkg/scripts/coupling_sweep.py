"""Fidelity versus success-probability trade-off as the atom-cavity coupling is varied.

Writes CSV with one row per coupling: λ, F_swap, F_qm, P_net/η, unconditional
entanglement fidelity and its bound, for a Gaussian pulse.
"""
import argparse
import csv
import math
import sys

import numpy as np

from cqed_memory import SystemParams, gaussian_profile, lorentzian_profile
from cqed_memory.protocols import PhotonQubit, TwoQubitAmplitudes, run_entanglement_transfer, run_memory


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gamma", type=float, default=0.5)
    ap.add_argument("--kp", type=float, default=0.1)
    ap.add_argument("--profile", choices=["gaussian", "lorentzian"], default="gaussian")
    ap.add_argument("--num", type=int, default=25)
    args = ap.parse_args()

    make = gaussian_profile if args.profile == "gaussian" else lorentzian_profile
    pulse = make(0.0, args.kp)
    bell = TwoQubitAmplitudes(lr=1 / math.sqrt(2), rl=1 / math.sqrt(2))
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["lambda", "f_swap", "f_qm", "p_net_over_eta", "f_ent_uncond", "f_ent_bound"])
    for lam in np.geomspace(0.2, 20.0, args.num):
        p = SystemParams.symmetric(float(lam), gamma=args.gamma)
        mem = run_memory(p, pulse, PhotonQubit(1.0, 0.0))
        ent = run_entanglement_transfer(p, p, pulse, pulse, bell)
        out.writerow([f"{lam:.4g}", f"{mem.f_swap:.6f}", f"{mem.f_qm:.6f}", f"{mem.p_net:.6f}",
                      f"{ent.f_uncond:.6f}", f"{ent.f_uncond_bound:.6f}"])


if __name__ == "__main__":
    main()
