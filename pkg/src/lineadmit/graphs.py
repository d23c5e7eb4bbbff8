"""Paths, cycles, maximal graphs and zones over the multiple points."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .incidence import IncidenceStructure, check_condition_c

REGULAR = "regular"
ISOLATED = "isolated-point"
EMPTY = "no-M-point"


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class PathSeq:
    lines: Tuple[int, ...]
    joints: Tuple[int, ...]
    is_cycle: bool = False

    def __len__(self):
        return len(self.lines)


@dataclass(frozen=True)
class LineGraph:
    members: FrozenSet[int]
    joint_points: FrozenSet[int]
    kind: str = REGULAR

    def sort_key(self):
        return (min(self.members), self.kind)


@dataclass(frozen=True)
class Zone:
    graph: LineGraph
    members: FrozenSet[int]


def line_neighbours(inc: IncidenceStructure, lines: Sequence[int]) -> Dict[int, List[int]]:
    """Adjacency among ``lines``: two lines are neighbours if they meet in M."""
    lines = sorted(lines)
    nb: Dict[int, List[int]] = {h: [] for h in lines}
    for i, h in enumerate(lines):
        for g in lines[i + 1:]:
            if inc.meet(h, g) is not None:
                nb[h].append(g)
                nb[g].append(h)
    return nb


def _components(nb: Dict[int, List[int]]) -> List[List[int]]:
    seen = set()
    comps = []
    for start in sorted(nb):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            h = stack.pop()
            comp.append(h)
            for g in nb[h]:
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        comps.append(sorted(comp))
    return comps


def maximal_graphs(inc: IncidenceStructure) -> List[LineGraph]:
    """Connected components of lines with >= 2 multiple points, plus singletons.

    Isolated multiple points contribute one singleton graph each, represented by
    their smallest-index line; lines without multiple points are singletons too.
    """
    regular = inc.regular_lines()
    out: List[LineGraph] = []
    for comp in _components(line_neighbours(inc, regular)):
        joints = frozenset(k for h in comp for k in inc.m_on_line[h])
        out.append(LineGraph(frozenset(comp), joints, REGULAR))
    for k in range(len(inc.m_points)):
        if inc.is_isolated(k):
            out.append(LineGraph(frozenset({min(inc.lines_through(k))}), frozenset({k}), ISOLATED))
    for h in range(inc.n_lines):
        if not inc.m_on_line[h]:
            out.append(LineGraph(frozenset({h}), frozenset(), EMPTY))
    out.sort(key=LineGraph.sort_key)
    return out


def zone_of(inc: IncidenceStructure, g: LineGraph) -> Zone:
    members = set(g.members)
    for k in g.joint_points:
        members.update(inc.lines_through(k))
    return Zone(g, frozenset(members))


def zones(inc: IncidenceStructure, graphs: Optional[Sequence[LineGraph]] = None) -> List[Zone]:
    if graphs is None:
        graphs = maximal_graphs(inc)
    return [zone_of(inc, g) for g in graphs]


# -- cycles -----------------------------------------------------------------


def cycles(inc: IncidenceStructure, lines: Optional[Sequence[int]] = None) -> List[PathSeq]:
    """Chordless cycles of lines meeting consecutively in multiple points.

    A cycle has >= 3 distinct lines, pairwise distinct joints, and no two
    non-consecutive members meeting in a multiple point. Each cycle is reported
    once, starting at its smallest line and oriented towards the smaller
    neighbour.
    """
    pool = inc.regular_lines() if lines is None else sorted(lines)
    nb = {h: set(v) for h, v in line_neighbours(inc, pool).items()}
    found: List[PathSeq] = []

    def extend(path: List[int]):
        last = path[-1]
        for g in sorted(nb[last]):
            if g <= path[0] or g in path:
                continue
            # g may touch only `last` among path[1:-1]; touching path[0] closes the cycle
            if any(g in nb[h] for h in path[1:-1]):
                continue
            if len(path) >= 2 and path[0] in nb[g]:
                if path[1] < g:
                    cyc = path + [g]
                    joints = tuple(inc.meet(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
                    if len(set(joints)) == len(joints):
                        found.append(PathSeq(tuple(cyc), joints, True))
                continue
            extend(path + [g])

    for s in pool:
        extend([s])
    found.sort(key=lambda c: (len(c.lines), c.lines))
    return found


def has_common_line(cycle_list: Sequence[PathSeq]) -> Optional[int]:
    if not cycle_list:
        return None
    common = set(cycle_list[0].lines)
    for c in cycle_list[1:]:
        common &= set(c.lines)
    return min(common) if common else None


# -- definition-level checks ------------------------------------------------


def _path_exists(inc: IncidenceStructure, members: FrozenSet[int], x: int, y: int) -> bool:
    """Is there a path H_1..H_m inside ``members`` with x = H_1∩H_2, y = H_{m-1}∩H_m?"""
    through_x = [h for h in inc.lines_through(x) if h in members]
    through_y = set(h for h in inc.lines_through(y) if h in members)

    def walk(seq: List[int]) -> bool:
        if len(seq) >= 2 and seq[-1] in through_y and inc.meet(seq[-2], seq[-1]) == y:
            return True
        for g in sorted(members):
            if g in seq:
                continue
            if inc.meet(seq[-1], g) is not None and walk(seq + [g]):
                return True
        return False

    for a in through_x:
        for b in through_x:
            if a != b and walk([a, b]):
                return True
    return False


def is_graph(inc: IncidenceStructure, members) -> bool:
    """Clauses (i)-(iii) of the graph definition, checked literally."""
    members = frozenset(members)
    if len(members) == 1:
        (h,) = members
        on = inc.m_on_line[h]
        if not on:
            return True
        if len(on) == 1 and inc.is_isolated(on[0]):
            return True
    for h in members:
        if inc.n_m_on(h) < 2:
            return False
        if len(members) > 1 and not any(inc.meet(h, g) is not None for g in members if g != h):
            return False
    joints = sorted({inc.meet(a, b) for a in members for b in members
                     if a < b and inc.meet(a, b) is not None})
    for i, x in enumerate(joints):
        for y in joints[i + 1:]:
            if not _path_exists(inc, members, x, y):
                return False
    return True


def is_maximal(inc: IncidenceStructure, members) -> bool:
    members = frozenset(members)
    return not any(is_graph(inc, members | {h}) for h in range(inc.n_lines) if h not in members)


@dataclass(frozen=True)
class PartitionCheck:
    ok: bool
    overlap: Tuple[int, ...] = ()
    missing: Tuple[int, ...] = ()
    bad_graph: Optional[LineGraph] = None

    def __bool__(self):
        return self.ok


def verify_zone_partition(inc: IncidenceStructure) -> PartitionCheck:
    """Zones of the maximal graphs are pairwise disjoint and cover every line.

    Each regular graph is also re-checked against the literal definition and
    for maximality, so a component-search bug shows up here.
    """
    if not check_condition_c(inc):
        raise PreconditionError("zone partition is only guaranteed under condition (C)")
    graphs = maximal_graphs(inc)
    for g in graphs:
        if g.kind == REGULAR and not (is_graph(inc, g.members) and is_maximal(inc, g.members)):
            return PartitionCheck(False, bad_graph=g)
    owner: Dict[int, int] = {}
    overlap = set()
    for i, z in enumerate(zones(inc, graphs)):
        for h in z.members:
            if h in owner:
                overlap.add(h)
            owner[h] = i
    missing = tuple(h for h in range(inc.n_lines) if h not in owner)
    return PartitionCheck(not overlap and not missing, tuple(sorted(overlap)), missing)
