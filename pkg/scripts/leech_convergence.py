"""Print the exact ratio sequence for odd k against the 4.768462 constant."""

from __future__ import annotations

import argparse

from cubepack.bounds import LEECH_L, leech_ratio, render


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=21)
    args = ap.parse_args()
    prev = None
    print(f"{'k':>3}  {'ratio':>14}  {'gap to L':>14}  increment")
    for k in range(5, args.kmax + 1, 2):
        r = leech_ratio(k)
        inc = "" if prev is None else render(r - prev, 6)
        print(f"{k:>3}  {render(r, 12):>14}  {render(LEECH_L - r, 6):>14}  {inc}")
        prev = r


if __name__ == "__main__":
    main()
