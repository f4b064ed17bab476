"""Exact lower-bound terms and closed-form comparison for a range of k."""

from __future__ import annotations

import argparse

from cubepack.bounds import bound_report, render
from cubepack.packing import count_general


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmin", type=int, default=4)
    ap.add_argument("--kmax", type=int, default=13)
    args = ap.parse_args()
    for k in range(args.kmin, args.kmax + 1):
        rep = bound_report(k)
        line = (f"k={k:2d} base={render(rep.base, 8)} layers={render(rep.sum_exact, 8)} "
                f"closed form={render(rep.paper_formula_value, 8)} "
                f"gap(r'<=2)={rep.small_terms.gap}")
        if k <= 5:
            line += f" exact count={count_general(k).total}"
        for rp, ok in rep.exponent_checks:
            if not ok:
                where = "outside" if rp > k - 1 else "inside"
                line += f" exponent check fails at r'={rp} ({where} claimed range)"
        print(line)


if __name__ == "__main__":
    main()
