"""Incidence structure of a line arrangement.

Multiple points (multiplicity >= 3) are addressed everywhere by their index
into ``IncidenceStructure.m_points``; lines by their index in the arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .geometry import Line, Point, canonicalize_line, intersect


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Arrangement:
    lines: Tuple[Line, ...]
    name: str = ""
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.lines) < 2:
            raise ArrangementError("an arrangement needs at least 2 lines")
        seen: Dict[Line, int] = {}
        for i, l in enumerate(self.lines):
            if l in seen:
                raise ArrangementError(f"line {i} duplicates line {seen[l]}: {l}")
            seen[l] = i
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"L_{i}" for i in range(len(self.lines))))
        elif len(self.labels) != len(self.lines):
            raise ArrangementError("one label per line required")

    @classmethod
    def from_coeffs(cls, rows, name="", labels=()):
        return cls(tuple(canonicalize_line(r) for r in rows), name, tuple(labels))

    def __len__(self):
        return len(self.lines)


@dataclass(frozen=True)
class MultPoint:
    point: Optional[Point]
    incident: Tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.incident)

    def __str__(self):
        where = str(self.point) if self.point is not None else "*"
        return f"{where}{{{','.join(map(str, self.incident))}}}"


@dataclass(frozen=True)
class ConditionC:
    holds: bool
    point: Optional[int] = None
    lines: Tuple[int, ...] = ()

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class IncidenceStructure:
    n_lines: int
    points: Tuple[MultPoint, ...]
    labels: Tuple[str, ...]
    name: str = ""
    lines: Optional[Tuple[Line, ...]] = None
    # derived
    m_points: Tuple[MultPoint, ...] = field(init=False)
    m_on_line: Tuple[Tuple[int, ...], ...] = field(init=False)
    line_points: Tuple[Tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        m_points = tuple(p for p in self.points if p.multiplicity >= 3)
        on_line: List[List[int]] = [[] for _ in range(self.n_lines)]
        for k, p in enumerate(m_points):
            for h in p.incident:
                on_line[h].append(k)
        all_on: List[List[int]] = [[] for _ in range(self.n_lines)]
        for k, p in enumerate(self.points):
            for h in p.incident:
                all_on[h].append(k)
        object.__setattr__(self, "m_points", m_points)
        object.__setattr__(self, "m_on_line", tuple(tuple(v) for v in on_line))
        object.__setattr__(self, "line_points", tuple(tuple(v) for v in all_on))

    # -- construction -----------------------------------------------------

    @classmethod
    def from_incidences(cls, n_lines: int, point_sets: Sequence[Sequence[int]],
                        name: str = "", labels: Sequence[str] = ()) -> "IncidenceStructure":
        """Build from combinatorial data alone (no coordinates).

        ``point_sets`` lists the incident lines of the multiple points; pairs of
        lines not covered by any set are completed with double points.
        """
        covered: Dict[Tuple[int, int], int] = {}
        sets = []
        for k, s in enumerate(point_sets):
            s = tuple(sorted(set(s)))
            if len(s) < 2 or s[0] < 0 or s[-1] >= n_lines:
                raise ArrangementError(f"bad incidence set {s}")
            for pair in combinations(s, 2):
                if pair in covered:
                    raise ArrangementError(f"lines {pair} meet in two points")
                covered[pair] = k
            sets.append(s)
        for pair in combinations(range(n_lines), 2):
            if pair not in covered:
                sets.append(pair)
        sets.sort()
        pts = tuple(MultPoint(None, s) for s in sets)
        labels = tuple(labels) or tuple(f"L_{i}" for i in range(n_lines))
        return cls(n_lines, pts, labels, name)

    # -- queries ----------------------------------------------------------

    def m_index(self, point) -> int:
        """Index in ``m_points`` of a MultPoint, Point or incident-line tuple."""
        for k, p in enumerate(self.m_points):
            if isinstance(point, MultPoint):
                hit = p == point
            elif isinstance(point, Point):
                hit = p.point == point
            else:
                hit = p.incident == tuple(sorted(point))
            if hit:
                return k
        raise KeyError(f"{point} is not a point of multiplicity >= 3")

    def lines_through(self, k: int) -> Tuple[int, ...]:
        return self.m_points[k].incident

    def n_m_on(self, h: int) -> int:
        return len(self.m_on_line[h])

    def regular_lines(self) -> Tuple[int, ...]:
        """Lines carrying at least two multiple points."""
        return tuple(h for h in range(self.n_lines) if len(self.m_on_line[h]) >= 2)

    def a1_lines(self) -> Tuple[int, ...]:
        """Lines carrying exactly one multiple point."""
        return tuple(h for h in range(self.n_lines) if len(self.m_on_line[h]) == 1)

    def meet(self, h1: int, h2: int) -> Optional[int]:
        """Index of the multiple point where two lines meet, or None."""
        common = set(self.m_on_line[h1]) & set(self.m_on_line[h2])
        if not common:
            return None
        assert len(common) == 1, (h1, h2, common)
        return next(iter(common))

    def line_through_pair(self, x: int, y: int) -> Optional[int]:
        """The unique line of the arrangement through two multiple points."""
        found = [h for h in self.m_points[x].incident if h in self.m_points[y].incident]
        if len(found) > 1:
            raise AssertionError(f"points {x}, {y} share lines {found}")
        return found[0] if found else None

    def adjacent(self, x: int) -> FrozenSet[int]:
        out = set()
        for h in self.m_points[x].incident:
            out.update(self.m_on_line[h])
        out.discard(x)
        return frozenset(out)

    def is_isolated(self, x: int) -> bool:
        return not self.adjacent(x)

    def point_name(self, k: int) -> str:
        p = self.m_points[k]
        if p.point is not None:
            return str(p.point)
        return "{" + ",".join(self.labels[h] for h in p.incident) + "}"


def build_incidence(arr: Arrangement) -> IncidenceStructure:
    buckets: Dict[Point, set] = {}
    for i, j in combinations(range(len(arr.lines)), 2):
        p = intersect(arr.lines[i], arr.lines[j])
        buckets.setdefault(p, set()).update((i, j))
    pts = tuple(MultPoint(p, tuple(sorted(s))) for p, s in sorted(buckets.items()))
    return IncidenceStructure(len(arr.lines), pts, arr.labels, arr.name, arr.lines)


def adjacent_points(inc: IncidenceStructure, x) -> FrozenSet[MultPoint]:
    """Multiple points sharing a line of the arrangement with ``x``."""
    if isinstance(x, int):
        k = x
    else:
        try:
            k = inc.m_points.index(x)
        except ValueError:
            raise KeyError(f"{x} is not a point of multiplicity >= 3") from None
    return frozenset(inc.m_points[y] for y in inc.adjacent(k))


def covering_lines(inc: IncidenceStructure, x: int) -> Tuple[int, ...]:
    """Lines through ``x`` that also carry a multiple point adjacent to ``x``."""
    out = set()
    for y in inc.adjacent(x):
        h = inc.line_through_pair(x, y)
        assert h is not None
        out.add(h)
    return tuple(sorted(out))


def check_condition_c(inc: IncidenceStructure) -> ConditionC:
    """Every multiple point sees its adjacent multiple points along <= 2 lines."""
    for x in range(len(inc.m_points)):
        cover = covering_lines(inc, x)
        if len(cover) > 2:
            return ConditionC(False, x, cover)
    return ConditionC(True)


def pair_count_ok(inc: IncidenceStructure) -> bool:
    return sum(comb(p.multiplicity, 2) for p in inc.points) == comb(inc.n_lines, 2)
