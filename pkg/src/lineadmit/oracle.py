"""Brute-force admissibility search and the counting obstruction.

Every lift of a local system has residues ``b_H = class_H + k_H`` with integer
``k_H``. The search enumerates ``k`` in a box ``|k_H| <= K``; the obstruction
proves that no lift at all works, for systems shaped like the two-triangle
example.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .admissibility import LocalSystem, ResidueVector, ZERO
from .incidence import IncidenceStructure


@dataclass(frozen=True)
class ShiftSearchConfig:
    bound: int = 3
    budget: int = 2_000_000

    def __post_init__(self):
        if self.bound < 0 or self.budget <= 0:
            raise ValueError("need bound >= 0 and budget > 0")


@dataclass(frozen=True)
class Found:
    rv: ResidueVector
    nodes: int


@dataclass(frozen=True)
class Exhausted:
    bound: int
    nodes: int


@dataclass(frozen=True)
class BudgetExceeded:
    nodes: int


def _value_order(bound: int, upper: int) -> List[int]:
    vals = [0]
    for m in range(1, bound + 1):
        vals += [-m, m]
    return [v for v in vals if v <= upper]


def oracle_search(inc: IncidenceStructure, ls: LocalSystem, cfg: ShiftSearchConfig = ShiftSearchConfig()):
    """Depth-first search over integer shifts, lines fixed in index order.

    Pruning: class-0 lines only take ``k <= 0``; the running sum must still be
    able to reach the total; a multiple point whose class sum is an integer
    must still be able to end at or below 0. The last line is forced by the
    zero-sum condition.
    """
    n = inc.n_lines
    K = cfg.bound
    cls = ls.classes
    target = -sum(cls, ZERO)
    assert target.denominator == 1
    target = int(target)

    upper = [0 if c == 0 else K for c in cls]
    suffix_max = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_max[i] = suffix_max[i + 1] + upper[i]

    # integral points: need sum of k over incident lines <= -class_sum
    cons: List[Tuple[Tuple[int, ...], int]] = []
    for p in inc.m_points:
        s = sum((cls[h] for h in p.incident), ZERO)
        if s.denominator == 1:
            cons.append((p.incident, -int(s)))
    by_line: Dict[int, List[int]] = {h: [] for h in range(n)}
    for j, (lines, _) in enumerate(cons):
        for h in lines:
            by_line[h].append(j)

    k = [0] * n
    partial = [0] * len(cons)       # fixed part of each constraint
    left = [len(lines) for lines, _ in cons]
    nodes = 0
    values = [_value_order(K, upper[i]) for i in range(n)]

    def ok_after(i: int) -> bool:
        for j in by_line[i]:
            if partial[j] - K * left[j] > cons[j][1]:
                return False
        return True

    def assign(i: int, v: int):
        k[i] = v
        for j in by_line[i]:
            partial[j] += v
            left[j] -= 1

    def undo(i: int):
        for j in by_line[i]:
            partial[j] -= k[i]
            left[j] += 1
        k[i] = 0

    class _Budget(Exception):
        pass

    def dfs(i: int, running: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > cfg.budget:
            raise _Budget
        if i == n - 1:
            v = target - running
            if abs(v) > K or v > upper[i]:
                return False
            assign(i, v)
            if ok_after(i):
                return True
            undo(i)
            return False
        for v in values[i]:
            rest = target - running - v
            if rest > suffix_max[i + 1] or rest < -K * (n - i - 1):
                continue
            assign(i, v)
            if ok_after(i) and dfs(i + 1, running + v):
                return True
            undo(i)
        return False

    try:
        hit = dfs(0, 0)
    except _Budget:
        return BudgetExceeded(nodes)
    if hit:
        return Found(ResidueVector(tuple(c + v for c, v in zip(cls, k))), nodes)
    return Exhausted(K, nodes)


# -- obstruction ------------------------------------------------------------


@dataclass(frozen=True)
class Obstruction:
    obstructed: bool
    transcript: Tuple[str, ...] = ()
    points: Tuple[int, ...] = ()


def _rref(rows: List[List[Fraction]], ncols: int):
    """Reduced row echelon form; returns (rows, pivot columns, consistent)."""
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    consistent = all(any(v != 0 for v in row[:ncols]) or row[ncols] == 0 for row in rows)
    return rows[:r], pivots, consistent


def _b(h: int) -> str:
    return f"b_{h}"


def obstruction_check(inc: IncidenceStructure, ls: LocalSystem) -> Obstruction:
    """Look for a set S of integral multiple points whose point sums are forced to 0.

    With c_H the number of points of S on H, suppose c_H equals a common value
    lam on every line with nonzero class and c_H <= lam on class-0 lines. Then
    sum_S b(p) = sum_H (c_H - lam) k_H >= 0 for any lift, while each b(p) <= 0,
    so all b(p) vanish and k_H = 0 wherever c_H < lam. If the resulting linear
    system forces a residue into the wrong class, no admissible lift exists.
    """
    cls = ls.classes
    n = inc.n_lines
    integral = [k for k, p in enumerate(inc.m_points)
                if sum((cls[h] for h in p.incident), ZERO).denominator == 1]
    nonzero = [h for h in range(n) if cls[h] != 0]
    if not nonzero:
        return Obstruction(False, ("all classes vanish; the zero lift is admissible",))
    for size in range(len(integral), 0, -1):
        for S in combinations(integral, size):
            count = [0] * n
            for k in S:
                for h in inc.lines_through(k):
                    count[h] += 1
            lam = count[nonzero[0]]
            if lam == 0 or any(count[h] != lam for h in nonzero):
                continue
            if any(count[h] > lam for h in range(n) if cls[h] == 0):
                continue
            result = _contradiction(inc, ls, S, count, lam)
            if result is not None:
                return result
    return Obstruction(False, ("no forcing point set found",))


def _contradiction(inc, ls, S, count, lam) -> Optional[Obstruction]:
    cls = ls.classes
    n = inc.n_lines
    strict = [h for h in range(n) if cls[h] == 0 and count[h] < lam]
    rows: List[List[Fraction]] = []
    eq_lines: List[Tuple[int, ...]] = []
    for k in S:
        row = [ZERO] * (n + 1)
        for h in inc.lines_through(k):
            row[h] = Fraction(1)
        row[n] = -sum((cls[h] for h in inc.lines_through(k)), ZERO)
        rows.append(row)
        eq_lines.append(inc.lines_through(k))
    for h in strict:
        row = [ZERO] * (n + 1)
        row[h] = Fraction(1)
        rows.append(row)
    total = [Fraction(1)] * n + [-sum(cls, ZERO)]
    rows.append(total)
    red, pivots, consistent = _rref(rows, n)

    forced: Dict[int, Fraction] = {}
    for row, c in zip(red, pivots):
        if all(row[j] == 0 for j in range(n) if j != c):
            forced[c] = row[n]
    wrong = sorted(h for h, v in forced.items() if v.denominator != 1)
    if consistent and not wrong:
        return None

    names = [inc.point_name(k) for k in S]
    half = [h for h in range(n) if cls[h] != 0]
    zero = [h for h in range(n) if cls[h] == 0]
    t = [
        "write b_H = class_H + k_H with k_H integer; b_H not a positive integer forces k_H <= 0 on class-0 lines "
        + "{" + ", ".join(_b(h) for h in zero) + "}",
        f"S = {{{', '.join(names)}}}: every point sum b(p), p in S, is an integer",
        f"sum over S of b(p) = {lam}*({' + '.join(_b(h) for h in half)}) + "
        + " + ".join(f"{count[h]}*{_b(h)}" for h in zero if count[h]) if any(count[h] for h in zero)
        else f"sum over S of b(p) = {lam}*({' + '.join(_b(h) for h in half)})",
        "using sum_H b_H = 0 this equals " + (" + ".join(f"{lam - count[h]}*(-k_{h})" for h in zero if lam - count[h]) or "0")
        + " >= 0",
        "each b(p) is an integer that is not positive, hence b(p) = 0 for all "
        + f"{len(S)} points of S: " + ", ".join(f"b({nm}) = 0" for nm in names),
    ]
    if strict:
        t.append("and k_H = 0, i.e. b_H = 0, for " + ", ".join(_b(h) for h in strict))
    for k, lines in zip(S, eq_lines):
        t.append(f"b({inc.point_name(k)}) = " + " + ".join(_b(h) for h in lines) + " = 0")
    if wrong:
        for group in _groups(wrong, eq_lines):
            vals = {cls[h] + forced[h] for h in group}
            if len(vals) == 1:
                v = vals.pop()
                t.append(" = ".join(_b(h) for h in group) + f" = {v} which is impossible")
            else:
                t.append(", ".join(f"{_b(h)} = {cls[h] + forced[h]}" for h in group) + " which is impossible")
            t.append("(residues of " + ", ".join(_b(h) for h in group) + " must be "
                     + ", ".join(f"{cls[h]} mod 1" for h in group) + ")")
    else:
        t.append("these equations together with sum b_H = 0 have no rational solution")
    t.append("hence the local system is not admissible")
    return Obstruction(True, tuple(t), tuple(S))


def _groups(lines: Sequence[int], eqs: Sequence[Tuple[int, ...]]) -> List[List[int]]:
    """Split lines into groups linked by shared point equations."""
    parent = {h: h for h in lines}

    def find(h):
        while parent[h] != h:
            parent[h] = parent[parent[h]]
            h = parent[h]
        return h

    for eq in eqs:
        members = [h for h in eq if h in parent]
        for a, b in zip(members, members[1:]):
            parent[find(a)] = find(b)
    groups: Dict[int, List[int]] = {}
    for h in lines:
        groups.setdefault(find(h), []).append(h)
    return sorted(sorted(g) for g in groups.values())
