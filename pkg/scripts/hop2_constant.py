"""Observed hop2 size constant C = |E'| / (n ceil(log2 n)) over seeds and densities.

    python3 scripts/hop2_constant.py --sizes 200 1000 3000 --boxes 1 2 5 --seeds 3
"""
import argparse
import math
import time

from hopspan.gen import gen_cluster, gen_uniform
from hopspan.geometry import udg_build
from hopspan.spanners import build_hop2
from hopspan.verify import edge_hops


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 1000, 3000])
    ap.add_argument("--boxes", type=float, nargs="+", default=[1.0, 2.0, 5.0])
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()
    print(f"{'family':>8} {'n':>6} {'box':>5} {'seed':>4} {'udg':>9} {'E':>8} {'C':>6} {'hops':>4} {'sec':>6}")
    worst = 0.0
    for n in args.sizes:
        for seed in range(args.seeds):
            cases = [("uniform", box, gen_uniform(n, box, seed)) for box in args.boxes]
            cases.append(("cluster", float("nan"), gen_cluster(n, seed)[0]))
            for fam, box, ps in cases:
                t0 = time.perf_counter()
                g = udg_build(ps)
                s = build_hop2(g)
                hops = int(edge_hops(g, s).max(initial=0))
                c = s.m / (n * math.ceil(math.log2(n)))
                worst = max(worst, c)
                print(f"{fam:>8} {n:>6} {box:>5} {seed:>4} {g.m:>9} {s.m:>8} {c:>6.3f} {hops:>4} "
                      f"{time.perf_counter() - t0:>6.2f}", flush=True)
    print(f"max C = {worst:.3f}")


if __name__ == "__main__":
    main()
