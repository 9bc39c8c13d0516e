"""Recompute both constant tables and the floor(A) lower-bound tables, printed side by side with the published values."""
import argparse

from burgess import constant_engine as ce
from burgess.reference import C1_LOWER, C2_LOWER

EXPS = {"thm1": (7, 10, 20), "thm2": (10, 15, 20)}
LOWER = {"thm1": C1_LOWER, "thm2": C2_LOWER}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--variant", choices=["thm1", "thm2", "both"], default="both")
    args = ap.parse_args()
    variants = ["thm1", "thm2"] if args.variant == "both" else [args.variant]
    for v in variants:
        print(f"{v}: r  p0     k         c          table    delta      lower(ours)  lower(pub)")
        for e in EXPS[v]:
            for res in ce.optimize_table(v, e, range(2, 11)):
                r = res.inputs.r
                low = ce.floorA_lower_bound_c(r, e, v)
                print(
                    f"     {r:<2} 1e{e:<3} {float(res.inputs.k):.6f}  {res.c:.6f}  {res.reference:.4f}  "
                    f"{res.delta:+.2e}  {low:.6f}     {LOWER[v][(r, e)]}"
                )
        print()


if __name__ == "__main__":
    main()
