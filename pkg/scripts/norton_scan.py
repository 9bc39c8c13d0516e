"""Least k-th power nonresidues over a prime range, compared with the Norton-type bounds."""
import argparse
import time

from burgess.cli import parse_count, parse_int_list
from burgess.nonresidue import scan_summary


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-min", type=parse_count, default=10**4)
    ap.add_argument("--p-max", type=parse_count, default=10**6)
    ap.add_argument("--k", type=parse_int_list, default=None, help="restrict to these k (default: every k | p-1, k >= 2)")
    args = ap.parse_args()
    t0 = time.perf_counter()
    s = scan_summary(args.p_min, args.p_max, args.k)
    print(f"primes {s.primes}, (p,k) pairs {s.records}, violations {len(s.violations)}")
    if s.max_g:
        print(f"largest g: {s.max_g.row()}")
    if s.max_ratio_record:
        print(f"largest g/bound = {s.max_ratio:.4f} at {s.max_ratio_record.row()}")
    print(f"pairs above the GRH-conditional bound: {s.grh_exceed}")
    print(f"{time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
