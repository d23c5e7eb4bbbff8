"""Rank-one local systems, residue vectors and admissibility certificates.

A local system is encoded by one residue class in [0, 1) per line. A residue
vector lifts those classes to rationals summing to zero; it certifies
admissibility when no residue and no point sum over a multiple point is a
positive integer.

The correctors below start from the normalized lift (every line except a base
line ``h0`` keeps its class, ``h0`` absorbs the balance) and move integer
amounts between lines until the conditions hold. Every move is logged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .graphs import PathSeq, cycles as find_cycles, has_common_line, maximal_graphs, REGULAR
from .incidence import IncidenceStructure, check_condition_c

log = logging.getLogger(__name__)

ZERO = Fraction(0)

NO_CYCLE = "no-cycle"
COMMON_LINE = "common-line"
OPEN_CYCLES = "open-cycles"
EVEN_CYCLES = "even-cycles"
DICHOTOMY = "dichotomy"
NONE = "none"
ORACLE = "oracle"
STRATEGY_ORDER = (NO_CYCLE, COMMON_LINE, OPEN_CYCLES, EVEN_CYCLES, DICHOTOMY, NONE)


class StrategyError(ValueError):
    """The hypotheses of a corrector do not hold for this input."""


class CorrectionFailed(StrategyError):
    """A corrector ran but could not reach an admissible vector."""


class ExceptionalShape(StrategyError):
    """Odd cycle with monodromy -1 on its lines and 1 on their neighbours."""

    def __init__(self, cycle: PathSeq):
        super().__init__(f"exceptional shape on cycle {cycle.lines}")
        self.cycle = cycle


def is_pos_int(v: Fraction) -> bool:
    return v.denominator == 1 and v > 0


# -- data -------------------------------------------------------------------


@dataclass(frozen=True)
class LocalSystem:
    classes: Tuple[Fraction, ...]

    def __post_init__(self):
        cls = tuple(Fraction(c) for c in self.classes)
        object.__setattr__(self, "classes", cls)
        for c in cls:
            if not 0 <= c < 1:
                raise ValueError(f"class {c} outside [0, 1)")
        if sum(cls).denominator != 1:
            raise ValueError(f"classes sum to {sum(cls)}, not an integer (monodromy product != 1)")

    @classmethod
    def from_residues(cls, values) -> "LocalSystem":
        return cls(tuple(Fraction(v) % 1 for v in values))

    @classmethod
    def trivial(cls, n: int) -> "LocalSystem":
        return cls((ZERO,) * n)

    def __len__(self):
        return len(self.classes)


@dataclass(frozen=True)
class ResidueVector:
    residues: Tuple[Fraction, ...]

    def __post_init__(self):
        res = tuple(Fraction(v) for v in self.residues)
        object.__setattr__(self, "residues", res)
        if sum(res) != 0:
            raise ValueError(f"residues sum to {sum(res)}")

    def __getitem__(self, h):
        return self.residues[h]

    def __len__(self):
        return len(self.residues)

    def point_sum(self, inc: IncidenceStructure, k: int) -> Fraction:
        return sum((self.residues[h] for h in inc.lines_through(k)), ZERO)


@dataclass(frozen=True)
class Move:
    kind: str          # shape | isolated | open | alternate
    source: int
    target: int
    amount: Fraction
    point: Optional[int] = None


@dataclass(frozen=True)
class ZoneCheck:
    lines: Tuple[int, ...]
    zone: Tuple[int, ...]
    zone_sum: Fraction


@dataclass(frozen=True)
class AdmCertificate:
    rv: ResidueVector
    h0: int
    trace: Tuple[Move, ...] = ()
    strategy: str = NO_CYCLE
    checkpoints: Tuple[ZoneCheck, ...] = ()
    h0_max: Fraction = ZERO


@dataclass(frozen=True)
class Violation:
    clause: str        # sum | class | line | point
    where: int
    value: Fraction

    def __str__(self):
        return f"{self.clause}@{self.where}={self.value}"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violations: Tuple[Violation, ...] = ()

    def __bool__(self):
        return self.ok


# -- verification -----------------------------------------------------------


def verify_residues(inc: IncidenceStructure, ls: LocalSystem, residues: Sequence[Fraction]) -> Verdict:
    """Check the four admissibility conditions for a plain residue list."""
    out: List[Violation] = []
    n = inc.n_lines
    if len(residues) != n or len(ls.classes) != n:
        return Verdict(False, (Violation("sum", -1, Fraction(len(residues))),))
    total = sum(residues, ZERO)
    if total != 0:
        out.append(Violation("sum", -1, total))
    for h, (r, c) in enumerate(zip(residues, ls.classes)):
        if (r - c).denominator != 1:
            out.append(Violation("class", h, r - c))
        if r.denominator == 1 and r > 0:
            out.append(Violation("line", h, r))
    for k, p in enumerate(inc.m_points):
        s = sum((residues[h] for h in p.incident), ZERO)
        if s.denominator == 1 and s > 0:
            out.append(Violation("point", k, s))
    return Verdict(not out, tuple(out))


def verify_certificate(inc: IncidenceStructure, ls: LocalSystem, cert: AdmCertificate) -> Verdict:
    return verify_residues(inc, ls, cert.rv.residues)


# -- normalization and base line -------------------------------------------


def normalize(ls: LocalSystem, h0: int) -> ResidueVector:
    res = list(ls.classes)
    res[h0] = ZERO
    res[h0] = -sum(res, ZERO)
    return ResidueVector(tuple(res))


def choose_h0(inc: IncidenceStructure, graphs=None, cycle_list: Optional[Sequence[PathSeq]] = None) -> int:
    """Smallest line of the unique cycle, else smallest line with >= 2 multiple points, else 0."""
    if cycle_list is None:
        cycle_list = find_cycles(inc)
    if len(cycle_list) == 1:
        return min(cycle_list[0].lines)
    regular = inc.regular_lines()
    return regular[0] if regular else 0


def exposed_points(inc: IncidenceStructure, h: int) -> Tuple[int, ...]:
    """Multiple points on ``h`` adjacent to some multiple point off ``h``."""
    on = set(inc.m_on_line[h])
    return tuple(x for x in inc.m_on_line[h] if inc.adjacent(x) - on)


def cycles_avoiding(cycle_list: Sequence[PathSeq], h0: int) -> List[PathSeq]:
    return [c for c in cycle_list if h0 not in c.lines]


def opening_line(inc: IncidenceStructure, cyc: PathSeq, classes: Sequence[Fraction]):
    """First (joint, A_1 line) pair on the cycle with a nonzero class, or None."""
    a1 = set(inc.a1_lines())
    for i, p in enumerate(cyc.joints):
        for h in inc.lines_through(p):
            if h in a1 and classes[h] != 0:
                return i, p, h
    return None


def exceptional_cycle(inc: IncidenceStructure, ls: LocalSystem,
                      cycle_list: Sequence[PathSeq]) -> Optional[PathSeq]:
    """A cycle with class 1/2 on its lines and 0 on every line meeting it in M."""
    half = Fraction(1, 2)
    for c in cycle_list:
        if any(ls.classes[h] != half for h in c.lines):
            continue
        nbrs = set()
        for h in c.lines:
            for k in inc.m_on_line[h]:
                nbrs.update(inc.lines_through(k))
        nbrs -= set(c.lines)
        if all(ls.classes[h] == 0 for h in nbrs):
            return c
    return None


# -- the shaping engine -----------------------------------------------------


class _Shaper:
    def __init__(self, inc: IncidenceStructure, rv: ResidueVector, h0: int):
        self.inc = inc
        self.h0 = h0
        self.a: List[Fraction] = list(rv.residues)
        self.trace: List[Move] = []
        self.settled: Set[int] = set()
        self.cut: Set[int] = set()
        self.removed: Set[int] = set()
        self.checkpoints: List[ZoneCheck] = []
        self.h0_max = self.a[h0]
        self.on_h0 = set(inc.m_on_line[h0])

    def point(self, k: int) -> Fraction:
        return sum((self.a[h] for h in self.inc.lines_through(k)), ZERO)

    def move(self, kind: str, src: int, dst: int, amount: Fraction, point=None):
        if amount == 0:
            return
        assert amount.denominator == 1 and amount > 0, amount
        assert src != self.h0
        self.a[src] -= amount
        self.a[dst] += amount
        self.trace.append(Move(kind, src, dst, amount, point))
        assert sum(self.a) == 0
        self.h0_max = max(self.h0_max, self.a[self.h0])
        for k in self.settled:
            assert not is_pos_int(self.point(k)), f"settled point {k} broken by {self.trace[-1]}"

    def worst(self, points) -> Tuple[Fraction, Optional[int]]:
        """Largest positive-integer point sum among ``points`` (ties: first in order)."""
        best, where = ZERO, None
        for k in sorted(points, key=lambda k: self.inc.m_points[k].point or k):
            v = self.point(k)
            if is_pos_int(v) and v > best:
                best, where = v, k
        return best, where

    def settle(self, points):
        self.settled.update(k for k in points if k not in self.on_h0)

    # cycle openings

    def open_at_joint(self, p: int):
        """Joint whose sum is already fine: never touch it again."""
        assert not is_pos_int(self.point(p))
        self.cut.add(p)
        self.settle([p])

    def open_with_a1(self, cyc: PathSeq, i: int, p: int, h_c: int):
        """Move the worst point sum of one cycle line at ``p`` onto the A_1 line ``h_c``."""
        h1, h2 = sorted(set(self.inc.lines_through(p)) & set(cyc.lines))
        d, where = self.worst(self.inc.m_on_line[h1])
        self.move("open", h1, h_c, d, where)
        self.removed.add(h1)
        self.settle(k for k in self.inc.m_on_line[h1] if k != p)

    def alternate(self, cyc: PathSeq, parity: int):
        n = len(cyc.lines)
        for i in range(parity, n, 2):
            h = cyc.lines[i]
            p = cyc.joints[i - 1] if parity else cyc.joints[i]
            self.move("alternate", h, self.h0, self.point(p), p)
        self.cut.update(cyc.joints)
        self.settle(cyc.joints)

    # forest pass

    def forest(self) -> Tuple[Dict[int, List[int]], Dict[int, List[int]]]:
        inc = self.inc
        lines = [h for h in inc.regular_lines() if h != self.h0 and h not in self.removed]
        pts_of = {h: [k for k in inc.m_on_line[h] if k not in self.on_h0 and k not in self.cut]
                  for h in lines}
        lines_of: Dict[int, List[int]] = {}
        for h in lines:
            for k in pts_of[h]:
                lines_of.setdefault(k, []).append(h)
        return pts_of, lines_of

    def shape_forest(self):
        inc = self.inc
        pts_of, lines_of = self.forest()
        n_edges = sum(len(v) for v in pts_of.values())
        seen_l: Set[int] = set()
        seen_p: Set[int] = set()
        comps = 0
        for root in sorted(pts_of):
            if root in seen_l:
                continue
            comps += 1
            order: List[Tuple[int, Optional[int]]] = []
            queue = [(root, None)]
            seen_l.add(root)
            while queue:
                h, parent = queue.pop(0)
                order.append((h, parent))
                for k in pts_of[h]:
                    if k == parent or k in seen_p:
                        continue
                    seen_p.add(k)
                    for g in lines_of[k]:
                        if g != h and g not in seen_l:
                            seen_l.add(g)
                            queue.append((g, k))
            handled_all: List[int] = []
            for h, parent in reversed(order):
                handled = [k for k in pts_of[h] if k != parent]
                d, where = self.worst(handled)
                self.move("shape", h, self.h0, d, where)
                self.settle(handled)
                handled_all.extend(handled)
            zone = sorted({g for k in handled_all for g in inc.lines_through(k)} | {h for h, _ in order})
            self.checkpoints.append(ZoneCheck(tuple(sorted(h for h, _ in order)), tuple(zone),
                                              sum((self.a[g] for g in zone), ZERO)))
        if n_edges != len(seen_l) + len(seen_p) - comps:
            raise StrategyError("lines with two or more multiple points still contain a cycle")

    def isolated(self):
        inc = self.inc
        _, lines_of = self.forest()
        for k in range(len(inc.m_points)):
            if k in self.on_h0 or k in lines_of or k in self.settled:
                continue
            v = self.point(k)
            if is_pos_int(v):
                src = min(h for h in inc.lines_through(k) if h != self.h0)
                self.move("isolated", src, self.h0, v, k)
            self.settle([k])

    def finish(self, strategy: str) -> AdmCertificate:
        bad = [h for h in range(self.inc.n_lines) if is_pos_int(self.a[h])]
        bad += [f"p{k}" for k in range(len(self.inc.m_points)) if is_pos_int(self.point(k))]
        if bad:
            raise CorrectionFailed(f"{strategy}: positive integers remain at {bad}")
        return AdmCertificate(ResidueVector(tuple(self.a)), self.h0, tuple(self.trace), strategy,
                              tuple(self.checkpoints), self.h0_max)


def _check_normalized(rv: ResidueVector, h0: int):
    for h, v in enumerate(rv.residues):
        if h != h0 and not 0 <= v < 1:
            raise StrategyError(f"residue of line {h} is {v}; expected normalized input")


def _engine(inc: IncidenceStructure, rv: ResidueVector, h0: int, strategy: str, openings=()) -> AdmCertificate:
    sh = _Shaper(inc, rv, h0)
    for op, *args in openings:
        getattr(sh, op)(*args)
    sh.shape_forest()
    sh.isolated()
    return sh.finish(strategy)


def _require_c(inc):
    if not check_condition_c(inc):
        raise StrategyError("condition C fails")


def forest_cycles(inc: IncidenceStructure, h0: int) -> List[PathSeq]:
    """Cycles that survive removing ``h0`` and its multiple points."""
    on_h0 = set(inc.m_on_line[h0])
    return [c for c in find_cycles(inc) if h0 not in c.lines and not on_h0 & set(c.joints)]


# -- correctors -------------------------------------------------------------


def correct_no_cycle(inc: IncidenceStructure, rv: ResidueVector, h0: int) -> AdmCertificate:
    """Shape residues graph by graph when there is at most one cycle, through ``h0``."""
    _require_c(inc)
    cyc = find_cycles(inc)
    if len(cyc) > 1:
        raise StrategyError(f"{len(cyc)} cycles; at most one allowed")
    if cyc and h0 not in cyc[0].lines:
        raise StrategyError(f"base line {h0} is not on the cycle {cyc[0].lines}")
    if len(inc.regular_lines()) and inc.n_m_on(h0) < 2:
        raise StrategyError(f"base line {h0} carries fewer than two multiple points")
    _check_normalized(rv, h0)
    return _engine(inc, rv, h0, NO_CYCLE)


def correct_common_line(inc: IncidenceStructure, rv: ResidueVector) -> AdmCertificate:
    """Same pass, based at the smallest line shared by every cycle."""
    _require_c(inc)
    cyc = find_cycles(inc)
    h0 = has_common_line(cyc) if cyc else choose_h0(inc, cycle_list=cyc)
    if h0 is None:
        raise StrategyError("the cycles share no line")
    rv = normalize(LocalSystem.from_residues(rv.residues), h0)
    return _engine(inc, rv, h0, COMMON_LINE)


def correct_open_cycles(inc: IncidenceStructure, rv: ResidueVector, h0: int) -> AdmCertificate:
    """Break each cycle avoiding ``h0`` through an A_1 line with nonzero residue, then shape."""
    _require_c(inc)
    _check_normalized(rv, h0)
    openings = []
    for c in forest_cycles(inc, h0):
        hit = opening_line(inc, c, rv.residues)
        if hit is None:
            raise StrategyError(f"cycle {c.lines}: every A_1 line at its joints has residue 0")
        openings.append(("open_with_a1", c, *hit))
    return _engine(inc, rv, h0, OPEN_CYCLES if openings else NO_CYCLE, openings)


def _structural_cycle_checks(inc, c: PathSeq, need_even: bool):
    if need_even and len(c.lines) % 2:
        raise StrategyError(f"cycle {c.lines} has odd length")
    for h in c.lines:
        if len(exposed_points(inc, h)) > 2:
            raise StrategyError(f"line {h} of cycle {c.lines} has more than two exposed points")
    for g in maximal_graphs(inc):
        if g.kind == REGULAR and set(c.lines) <= g.members and g.members != set(c.lines):
            raise StrategyError(f"graph {sorted(g.members)} is not the bare cycle {c.lines}")


def _cycle_openings(inc, rv, h0, need_even: bool):
    """Per cycle: a harmless joint, else an A_1 opening, else the alternating shift."""
    plans = []
    for c in forest_cycles(inc, h0):
        _structural_cycle_checks(inc, c, need_even)
        sums = [sum((rv.residues[h] for h in inc.lines_through(p)), ZERO) for p in c.joints]
        fine = [p for p, s in zip(c.joints, sums) if not is_pos_int(s)]
        if fine:
            plans.append([("open_at_joint", fine[0])])
            continue
        hit = opening_line(inc, c, rv.residues)
        if hit is not None:
            plans.append([("open_with_a1", c, *hit)])
            continue
        if len(c.lines) % 2:
            raise ExceptionalShape(c)
        plans.append([("alternate", c, 1), ("alternate", c, 0)])
    return plans


def _run_plans(inc, rv, h0, strategy, plans):
    """Run the engine, trying the alternatives of each plan until one succeeds."""
    choice = [0] * len(plans)
    while True:
        openings = [plans[i][j] for i, j in enumerate(choice)]
        try:
            return _engine(inc, rv, h0, strategy if plans else NO_CYCLE, openings)
        except CorrectionFailed:
            for i in range(len(choice)):
                if choice[i] + 1 < len(plans[i]):
                    choice[i] += 1
                    break
                choice[i] = 0
            else:
                raise


def correct_even_cycles(inc: IncidenceStructure, rv: ResidueVector, h0: int) -> AdmCertificate:
    """Even cycles avoiding ``h0`` with at most two exposed joints per line."""
    _require_c(inc)
    _check_normalized(rv, h0)
    return _run_plans(inc, rv, h0, EVEN_CYCLES, _cycle_openings(inc, rv, h0, need_even=True))


def correct_dichotomy(inc: IncidenceStructure, rv: ResidueVector, h0: int) -> AdmCertificate:
    """As the even-cycle corrector, but odd cycles allowed; raises ExceptionalShape when stuck."""
    _require_c(inc)
    _check_normalized(rv, h0)
    return _run_plans(inc, rv, h0, DICHOTOMY, _cycle_openings(inc, rv, h0, need_even=False))


# -- classification and dispatch -------------------------------------------


@dataclass(frozen=True)
class StrategyReport:
    condition_c: bool
    n_cycles: int
    applicable: str
    h0: int
    exceptional: Optional[PathSeq] = None
    cycles: Tuple[PathSeq, ...] = field(default=(), repr=False)


def _even_hypotheses(inc, cyc_list, h0, need_even) -> bool:
    try:
        for c in cycles_avoiding(cyc_list, h0):
            _structural_cycle_checks(inc, c, need_even)
    except StrategyError:
        return False
    return True


def classify(inc: IncidenceStructure, ls: Optional[LocalSystem] = None,
             h0: Optional[int] = None) -> StrategyReport:
    """First applicable strategy, in the fixed order of ``STRATEGY_ORDER``.

    The open-cycles rule depends on the residues, so it is only tested when a
    local system is supplied.
    """
    cond = bool(check_condition_c(inc))
    cyc = find_cycles(inc)
    base = choose_h0(inc, cycle_list=cyc) if h0 is None else h0

    def report(name, line=base, exc=None):
        return StrategyReport(cond, len(cyc), name, line, exc, tuple(cyc))

    if not cond:
        return report(NONE)
    if not cyc or (len(cyc) == 1 and base in cyc[0].lines):
        return report(NO_CYCLE)
    common = has_common_line(cyc)
    if common is not None and h0 is None:
        return report(COMMON_LINE, common)
    if common is not None and h0 == common:
        return report(COMMON_LINE)
    avoid = cycles_avoiding(cyc, base)
    if ls is not None and all(opening_line(inc, c, ls.classes) for c in avoid):
        return report(OPEN_CYCLES)
    if _even_hypotheses(inc, cyc, base, need_even=True):
        return report(EVEN_CYCLES)
    if _even_hypotheses(inc, cyc, base, need_even=False):
        exc = exceptional_cycle(inc, ls, avoid) if ls is not None else None
        return report(DICHOTOMY, exc=exc)
    return report(NONE)


CORRECTORS = {
    NO_CYCLE: correct_no_cycle,
    OPEN_CYCLES: correct_open_cycles,
    EVEN_CYCLES: correct_even_cycles,
    DICHOTOMY: correct_dichotomy,
}


def run_strategy(inc: IncidenceStructure, ls: LocalSystem, report: StrategyReport) -> AdmCertificate:
    if report.applicable == NONE:
        raise StrategyError("no constructive strategy applies")
    rv = normalize(ls, report.h0)
    if report.applicable == COMMON_LINE:
        return correct_common_line(inc, rv)
    return CORRECTORS[report.applicable](inc, rv, report.h0)


@dataclass(frozen=True)
class Admissible:
    certificate: AdmCertificate
    strategy: str


@dataclass(frozen=True)
class NotCovered:
    reason: str
    oracle: object = None


@dataclass(frozen=True)
class NotAdmissible:
    transcript: Tuple[str, ...]
    oracle: object = None


def decide_admissible(inc: IncidenceStructure, ls: LocalSystem, h0: Optional[int] = None,
                      bound: int = 3, budget: int = 2_000_000):
    """Constructive strategy first, then the bounded oracle and the obstruction check."""
    from .oracle import Exhausted, Found, ShiftSearchConfig, obstruction_check, oracle_search

    report = classify(inc, ls, h0)
    reason = f"strategy {report.applicable}"
    if report.applicable != NONE:
        try:
            cert = run_strategy(inc, ls, report)
            return Admissible(cert, report.applicable)
        except StrategyError as exc:
            if isinstance(exc, CorrectionFailed) and report.applicable in (NO_CYCLE, COMMON_LINE):
                log.warning("corrector failed where it should not: %s", exc)
            reason = str(exc)
    result = oracle_search(inc, ls, ShiftSearchConfig(bound, budget))
    if isinstance(result, Found):
        rv = result.rv
        h0_used = report.h0
        return Admissible(AdmCertificate(rv, h0_used, (), ORACLE), ORACLE)
    if isinstance(result, Exhausted):
        obs = obstruction_check(inc, ls)
        if obs.obstructed:
            return NotAdmissible(obs.transcript, result)
        return NotCovered(f"{reason}; no admissible residues with shifts |k| <= {bound}", result)
    return NotCovered(f"{reason}; oracle budget exceeded", result)
