"""Reproduce the facts about the two worked examples and print them.

    python scripts/check_examples.py [--systems 100] [--seed 0]
"""

import argparse
import random
import time

from lineadmit.admissibility import (LocalSystem, choose_h0, classify, correct_no_cycle, normalize,
                                     verify_certificate)
from lineadmit.fixtures import example_no_cycle, example_two_cycles, example_two_cycles_classes
from lineadmit.generate import random_local_system
from lineadmit.graphs import cycles, verify_zone_partition, zones
from lineadmit.incidence import build_incidence, check_condition_c
from lineadmit.oracle import ShiftSearchConfig, obstruction_check, oracle_search


def no_cycle_example(n_systems: int, seed: int):
    inc = build_incidence(example_no_cycle())
    print(f"ex1: {len(inc.m_points)} multiple points")
    for p in inc.m_points:
        print(f"  {p}")
    print(f"  condition (C): {bool(check_condition_c(inc))}, cycles: {len(cycles(inc))}")
    h0 = choose_h0(inc)
    rng = random.Random(seed)
    ok = 0
    t = time.perf_counter()
    for _ in range(n_systems):
        ls = random_local_system(inc.n_lines, rng)
        cert = correct_no_cycle(inc, normalize(ls, h0), h0)
        ok += bool(verify_certificate(inc, ls, cert))
    print(f"  certificates verified: {ok}/{n_systems} in {time.perf_counter() - t:.2f}s")


def two_cycle_example():
    inc = build_incidence(example_two_cycles())
    print(f"ex2: {len(inc.m_points)} multiple points")
    for p in inc.m_points:
        print(f"  {p}")
    print("  cycles:", [c.lines for c in cycles(inc)])
    print("  zones:", [sorted(z.members) for z in zones(inc) if len(z.members) > 1])
    print("  zone partition:", bool(verify_zone_partition(inc)))
    ls = LocalSystem(example_two_cycles_classes())
    print("  normalized a_0 =", normalize(ls, 0)[0])
    print("  strategy:", classify(inc, ls).applicable)
    for k in (1, 2, 3):
        t = time.perf_counter()
        r = oracle_search(inc, ls, ShiftSearchConfig(bound=k))
        print(f"  oracle K={k}: {type(r).__name__} ({r.nodes} nodes, {time.perf_counter() - t:.2f}s)")
    obs = obstruction_check(inc, ls)
    print("  obstruction:", obs.obstructed)
    for line in obs.transcript:
        print("    " + line)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--systems", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    no_cycle_example(args.systems, args.seed)
    two_cycle_example()


if __name__ == "__main__":
    main()
