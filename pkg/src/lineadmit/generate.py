"""Seeded random arrangements and local systems for property tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Sequence

from .admissibility import LocalSystem
from .geometry import canonicalize_line, canonicalize_point, join
from .incidence import Arrangement, build_incidence, check_condition_c


class GenerationError(RuntimeError):
    pass


def _random_arrangement(rng: random.Random, n_lines: int) -> Arrangement:
    anchors = [canonicalize_point((rng.randint(-3, 3), rng.randint(-3, 3), 1))
               for _ in range(rng.randint(3, 5))]
    if rng.random() < 0.3:
        anchors.append(canonicalize_point((rng.randint(-2, 2) or 1, rng.randint(-2, 2), 0)))
    lines: List = []
    guard = 0
    while len(lines) < n_lines:
        guard += 1
        if guard > 50 * n_lines:
            break
        mode = rng.random()
        try:
            if mode < 0.5 and len(anchors) >= 2:
                p, q = rng.sample(anchors, 2)
                line = join(p, q)
            elif mode < 0.85:
                p = rng.choice(anchors)
                q = canonicalize_point((rng.randint(-6, 6), rng.randint(-6, 6), 1))
                line = join(p, q)
            else:
                line = canonicalize_line((rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-9, 9)))
        except ValueError:
            continue
        if line not in lines:
            lines.append(line)
    return Arrangement(tuple(lines))


def generate_condition_c(seed: int, n_lines: int, retries: int = 2000) -> Arrangement:
    """Pseudorandom rational arrangement satisfying condition C, deterministic per seed."""
    if n_lines < 3:
        raise ValueError("need at least 3 lines")
    rng = random.Random(seed)
    for _ in range(retries):
        arr = _random_arrangement(rng, n_lines)
        if len(arr.lines) == n_lines and check_condition_c(build_incidence(arr)):
            return Arrangement(arr.lines, name=f"gen-{seed}-{n_lines}")
    raise GenerationError(f"no condition-C arrangement after {retries} attempts (seed {seed})")


def random_local_system(n: int, rng: random.Random,
                        denominators: Sequence[int] = (1, 2, 2, 3, 4)) -> LocalSystem:
    """Classes j/d with small d, the last one chosen so the monodromy product is 1.

    Small denominators make integral point sums common, which is where the
    correctors have work to do.
    """
    cls = []
    for _ in range(n - 1):
        d = rng.choice(denominators)
        cls.append(Fraction(rng.randrange(d), d))
    cls.append((-sum(cls)) % 1)
    return LocalSystem(tuple(cls))
