"""Materialize the k=5, r=1 layer and check it against itself and base points.

Needs roughly 0.5 GB of memory.
"""

from __future__ import annotations

import argparse
import time

from cubepack.packing import LayerSpec, build_rm_layer, sample_base
from cubepack.verifier import check_no_duplicates, verify_sampled, verify_sampled_between


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=10**6)
    ap.add_argument("--base-points", type=int, default=10**5)
    ap.add_argument("--seed", type=int, default=5)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    t0 = time.perf_counter()
    layer = build_rm_layer(LayerSpec.rm(1, 5)).materialize(max_points=None)
    print(f"layer points: {len(layer)} ({time.perf_counter() - t0:.1f} s)")
    print(f"duplicates: {check_no_duplicates(layer)}")
    within = verify_sampled(layer, args.pairs, args.seed, args.workers)
    print(f"within layer: min sq distance {within.min_sq_distance}, passed={within.passed}")
    base = sample_base(5, args.base_points, args.seed + 1)
    across = verify_sampled_between(layer, base, args.pairs, args.seed + 2, args.workers)
    print(f"layer vs base: min sq distance {across.min_sq_distance}, passed={across.passed}")
    print(f"total {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
