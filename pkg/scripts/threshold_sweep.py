"""Least decimal exponent E(r) past which the nonresidue bound p^(1/(4 sqrt e) - delta) holds."""
import argparse

from burgess.cli import parse_int_list, parse_rational
from burgess.nonresidue import threshold_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=parse_rational, default="1/6")
    ap.add_argument("--r", type=parse_int_list, default="19..40")
    ap.add_argument("--const", type=float, default=2.74)
    args = ap.parse_args()
    rows = threshold_sweep(args.alpha, args.r, args.const)
    print(" r   delta        E")
    for row in rows:
        d = "-" if row["delta"] is None else f"{row['delta']:.7f}"
        print(f"{row['r']:>2}  {d:>10}  {row['E'] if row['E'] is not None else '-'}")
    best = min((row for row in rows if row["E"] is not None), key=lambda row: row["E"], default=None)
    if best:
        print(f"smallest E = {best['E']} at r = {best['r']}")


if __name__ == "__main__":
    main()
