"""Recompute the published swap and memory numbers with both the closed forms and the grid oracle."""
import argparse

from cqed_memory.cli import PAPER_VALUES, compute_paper_value


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=401, help="oracle nodes")
    args = ap.parse_args()
    print(f"{'quantity':10s} {'λ':>4s} {'profile':10s} {'κ_p':>5s} {'published':>9s} {'analytic':>9s} {'oracle':>9s}")
    for pv in PAPER_VALUES:
        analytic = compute_paper_value(pv)
        orc = compute_paper_value(pv, use_oracle=True, n=args.grid)
        print(f"{pv.quantity:10s} {pv.lam:4.1f} {pv.profile:10s} {pv.kp:5.2f} {pv.paper:9.3f} {analytic:9.5f} {orc:9.5f}")


if __name__ == "__main__":
    main()
