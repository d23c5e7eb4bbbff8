"""Multinet validation, bounded search and the global-component report.

Everything here is combinatorial and runs on an ``IncidenceStructure``, so
fixtures without rational coordinates (the Fermat nine lines) work as well.
The validator and the search deliberately share no clause logic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .incidence import IncidenceStructure, check_condition_c


class SizeGuardError(ValueError):
    """The arrangement is larger than the search guard allows."""


@dataclass(frozen=True)
class Multinet:
    classes: Tuple[Tuple[int, ...], ...]
    mult: Tuple[int, ...]           # m_H indexed by line
    base_locus: FrozenSet[int]      # multiple-point indices
    d: int

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def is_net(self) -> bool:
        return all(m == 1 for m in self.mult)

    def canonical(self) -> "Multinet":
        classes = tuple(sorted(tuple(sorted(c)) for c in self.classes))
        return Multinet(classes, self.mult, frozenset(self.base_locus), self.d)

    def __str__(self):
        return f"({self.k},{self.d})-{'net' if self.is_net else 'multinet'}"


@dataclass(frozen=True)
class MultinetCheck:
    ok: bool
    clause: Optional[int] = None
    witness: str = ""

    def __bool__(self):
        return self.ok


def _structure(inc: IncidenceStructure, mn: Multinet):
    seen = sorted(h for c in mn.classes for h in c)
    if seen != list(range(inc.n_lines)):
        raise ValueError("classes must partition the lines")
    if len(mn.classes) < 3:
        raise ValueError("a multinet needs at least 3 classes")
    if len(mn.mult) != inc.n_lines or any(m < 1 for m in mn.mult):
        raise ValueError("need a positive multiplicity for every line")
    bad = [x for x in mn.base_locus if not 0 <= x < len(inc.m_points)]
    if bad:
        raise ValueError(f"base locus entries {bad} are not multiple points")


def validate_multinet(inc: IncidenceStructure, mn: Multinet) -> MultinetCheck:
    """Check the four multinet clauses literally; report the first one that fails."""
    _structure(inc, mn)
    owner = {h: i for i, c in enumerate(mn.classes) for h in c}

    # (1) equal weights
    for i, c in enumerate(mn.classes):
        w = sum(mn.mult[h] for h in c)
        if w != mn.d:
            return MultinetCheck(False, 1, f"class {i} has weight {w}, expected {mn.d}")

    # (2) cross-class intersections lie in X
    for a in range(inc.n_lines):
        for b in range(a + 1, inc.n_lines):
            if owner[a] == owner[b]:
                continue
            x = inc.meet(a, b)
            if x is None or x not in mn.base_locus:
                where = "a double point" if x is None else inc.point_name(x)
                return MultinetCheck(False, 2, f"{inc.labels[a]} and {inc.labels[b]} meet at {where}, outside X")

    # (3) n_X independent of the class
    for x in sorted(mn.base_locus):
        weights = [sum(mn.mult[h] for h in c if h in inc.lines_through(x)) for c in mn.classes]
        if len(set(weights)) != 1:
            return MultinetCheck(False, 3, f"at {inc.point_name(x)} class weights are {weights}")

    # (4) each class connected through intersections outside X
    for i, c in enumerate(mn.classes):
        reach = {c[0]}
        stack = [c[0]]
        while stack:
            h = stack.pop()
            for g in c:
                if g not in reach and inc.meet(h, g) not in mn.base_locus:
                    reach.add(g)
                    stack.append(g)
        missing = [g for g in c if g not in reach]
        if missing:
            return MultinetCheck(False, 4, f"class {i}: {inc.labels[missing[0]]} not reachable "
                                           f"from {inc.labels[c[0]]} avoiding X")
    return MultinetCheck(True)


# -- search -----------------------------------------------------------------


def _blocks(inc: IncidenceStructure) -> List[List[int]]:
    """Lines joined by double points must share a class; merge them up front."""
    parent = list(range(inc.n_lines))

    def find(h):
        while parent[h] != h:
            parent[h] = parent[parent[h]]
            h = parent[h]
        return h

    for a in range(inc.n_lines):
        for b in range(a + 1, inc.n_lines):
            if inc.meet(a, b) is None:
                parent[find(a)] = find(b)
    groups: Dict[int, List[int]] = {}
    for h in range(inc.n_lines):
        groups.setdefault(find(h), []).append(h)
    return sorted(groups.values())


def _partitions(inc: IncidenceStructure, blocks: List[List[int]], k: int):
    """Set partitions of ``blocks`` into exactly k classes, pruned at the points.

    Once every line through a multiple point is placed, the point touches either
    one class or all k of them; anything in between cannot be balanced.
    """
    n_blocks = len(blocks)
    label = [-1] * inc.n_lines
    last_block = {}
    for b, blk in enumerate(blocks):
        for h in blk:
            for x in inc.m_on_line[h]:
                last_block[x] = max(last_block.get(x, -1), b)
    closing: Dict[int, List[int]] = {}
    for x, b in last_block.items():
        closing.setdefault(b, []).append(x)

    def points_ok(b: int) -> bool:
        for x in closing.get(b, ()):
            touched = {label[h] for h in inc.lines_through(x)}
            if 1 < len(touched) < k:
                return False
        return True

    def rec(b: int, used: int):
        if n_blocks - b < k - used:
            return
        if b == n_blocks:
            yield [[h for h in range(inc.n_lines) if label[h] == i] for i in range(k)]
            return
        for i in range(min(used + 1, k)):
            for h in blocks[b]:
                label[h] = i
            if points_ok(b):
                yield from rec(b + 1, max(used, i + 1))
        for h in blocks[b]:
            label[h] = -1

    yield from rec(0, 0)


def _weights(inc: IncidenceStructure, classes: List[List[int]], xs: List[int], m_max: int):
    """Multiplicity vectors in lexicographic order meeting the weight conditions."""
    owner = {h: i for i, c in enumerate(classes) for h in c}
    for m in product(range(1, m_max + 1), repeat=inc.n_lines):
        totals = [0] * len(classes)
        for h, v in enumerate(m):
            totals[owner[h]] += v
        if len(set(totals)) != 1:
            continue
        balanced = True
        for x in xs:
            local = [0] * len(classes)
            for h in inc.lines_through(x):
                local[owner[h]] += m[h]
            if len(set(local)) != 1:
                balanced = False
                break
        if balanced:
            yield m, totals[0]


def _connected_off(inc: IncidenceStructure, cls: List[int], xs: FrozenSet[int]) -> bool:
    comp = {cls[0]}
    frontier = [cls[0]]
    while frontier:
        h = frontier.pop()
        for g in cls:
            if g not in comp and inc.meet(h, g) not in xs:
                comp.add(g)
                frontier.append(g)
    return len(comp) == len(cls)


def search_multinets(inc: IncidenceStructure, k_max: int = 4, m_max: int = 2,
                     guard: int = 12) -> List[Multinet]:
    """All multinets with 3 <= k <= k_max classes and multiplicities <= m_max.

    Results are canonical up to relabeling the classes: classes are ordered by
    their smallest line and multiplicity vectors come out lexicographically.
    """
    if inc.n_lines > guard:
        raise SizeGuardError(f"{inc.n_lines} lines exceeds the search guard {guard}; raise it to proceed")
    blocks = _blocks(inc)
    found: List[Multinet] = []
    for k in range(3, k_max + 1):
        for classes in _partitions(inc, blocks, k):
            owner = {h: i for i, c in enumerate(classes) for h in c}
            xs = frozenset(x for x in range(len(inc.m_points))
                           if len({owner[h] for h in inc.lines_through(x)}) > 1)
            if not all(_connected_off(inc, c, xs) for c in classes):
                continue
            for m, d in _weights(inc, classes, sorted(xs), m_max):
                found.append(Multinet(tuple(tuple(c) for c in classes), m, xs, d))
    return found


# -- reporting --------------------------------------------------------------


def is_concurrent(inc: IncidenceStructure) -> bool:
    return any(p.multiplicity == inc.n_lines for p in inc.m_points)


@dataclass(frozen=True)
class GlobalComponentReport:
    multinets: Tuple[Multinet, ...]
    condition_c: bool
    concurrent: bool
    lines: Tuple[str, ...]

    def __str__(self):
        return "\n".join(self.lines)


def report_global_components(inc: IncidenceStructure, multinets: Sequence[Multinet]) -> GlobalComponentReport:
    """Turn search results into statements about global resonance components.

    Multinets sharing a partition point to the same component, so they are
    listed together under it.
    """
    cc = bool(check_condition_c(inc))
    conc = is_concurrent(inc)
    out: List[str] = []
    by_partition: Dict[Tuple[Tuple[int, ...], ...], List[Multinet]] = {}
    for mn in multinets:
        by_partition.setdefault(mn.canonical().classes, []).append(mn)
    for classes, group in by_partition.items():
        k = len(classes)
        names = ", ".join(str(mn) for mn in group)
        parts = " | ".join(" ".join(inc.labels[h] for h in c) for c in classes)
        if conc and all(len(c) == 1 for c in classes):
            out.append(f"({k},1)-multinet present ({parts}) ⇒ global component of dimension {k - 1}")
        else:
            out.append(f"{names} on {parts} ⇒ global component of dimension {k - 1}")
    if not multinets:
        if cc and not conc:
            out.append("no global component (condition (C) holds and the lines are not concurrent)")
        else:
            out.append("no multinet found within the search bounds")
    return GlobalComponentReport(tuple(multinets), cc, conc, tuple(out))
