"""Sweep generated condition-(C) arrangements and tabulate what happens.

For each seed: zone partition, cycle count, strategy, certificates for random
local systems, oracle agreement on the small ones, and multinet search.

    python scripts/sweep_generated.py --seeds 1 200 --systems 10
"""

import argparse
import random
import time
from collections import Counter

from lineadmit.admissibility import Admissible, NotAdmissible, decide_admissible, verify_certificate
from lineadmit.generate import GenerationError, generate_condition_c, random_local_system
from lineadmit.graphs import cycles, verify_zone_partition
from lineadmit.incidence import build_incidence
from lineadmit.multinet import is_concurrent, search_multinets
from lineadmit.oracle import Found, ShiftSearchConfig, oracle_search


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seeds", type=int, nargs=2, default=(1, 200), metavar=("FIRST", "LAST"))
    ap.add_argument("--min-lines", type=int, default=5)
    ap.add_argument("--max-lines", type=int, default=10)
    ap.add_argument("--systems", type=int, default=10)
    ap.add_argument("--oracle-max-lines", type=int, default=8)
    args = ap.parse_args()

    tally = Counter()
    span = args.max_lines - args.min_lines + 1
    t = time.perf_counter()
    for seed in range(args.seeds[0], args.seeds[1] + 1):
        n = args.min_lines + seed % span
        try:
            arr = generate_condition_c(seed, n)
        except GenerationError:
            tally["generation failed"] += 1
            continue
        inc = build_incidence(arr)
        tally["arrangements"] += 1
        tally[f"cycles={len(cycles(inc))}"] += 1
        if not verify_zone_partition(inc):
            tally["zone partition FAILED"] += 1
            print("zone partition fails for", arr.name)
        if not is_concurrent(inc) and search_multinets(inc, 4, 2):
            tally["multinet on non-concurrent"] += 1
            print("unexpected multinet on", arr.name)
        rng = random.Random(seed)
        for _ in range(args.systems):
            ls = random_local_system(n, rng)
            res = decide_admissible(inc, ls)
            if isinstance(res, Admissible):
                tally[f"admissible via {res.strategy}"] += 1
                if not verify_certificate(inc, ls, res.certificate):
                    tally["certificate REJECTED"] += 1
                if n <= args.oracle_max_lines:
                    found = isinstance(oracle_search(inc, ls, ShiftSearchConfig(3)), Found)
                    tally["oracle agrees" if found else "oracle disagrees"] += 1
            elif isinstance(res, NotAdmissible):
                tally["not admissible"] += 1
            else:
                tally["not covered"] += 1
    for key in sorted(tally):
        print(f"{key:>32}: {tally[key]}")
    print(f"{'seconds':>32}: {time.perf_counter() - t:.1f}")


if __name__ == "__main__":
    main()
