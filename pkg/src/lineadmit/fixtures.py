"""Built-in arrangements: the two worked examples and a few small test shapes."""

from __future__ import annotations

from fractions import Fraction as F

from .incidence import Arrangement, IncidenceStructure

# x, y, z coefficients of L_0 .. L_12
EX1_LINES = [
    (0, 0, 1),      # z = 0
    (1, 0, 0),      # x = 0
    (0, 1, 0),      # y = 0
    (1, 3, -3),     # x + 3y = 3z
    (-1, 3, -3),    # 3y - x = 3z
    (1, 4, -2),     # x + 4y = 2z
    (1, -2, -2),    # x - 2y = 2z
    (1, 1, -4),     # x + y = 4z
    (-3, 5, -12),   # 5y - 3x = 12z
    (2, 0, -1),     # 2x = z
    (0, 1, -9),     # y = 9z
    (-1, 1, -7),    # y - x = 7z
    (-1, 1, -2),    # y - x = 2z
]

EX2_LINES = [
    (0, 0, 1),      # L_0: z = 0
    (1, 0, 0),      # L_1: x = 0
    (0, 1, 0),      # L_2: y = 0
    (1, 1, -1),     # L_3
    (1, 3, 0),      # L_4
    (1, -3, -1),    # L_5
    (3, -1, 1),     # L_6
    (1, -1, 2),     # L_7
    (4, 1, -12),    # L_8
    (1, 2, -10),    # L_9
    (1, -1, 8),     # L_10
    (4, 1, 12),     # L_11
]

# residues of the non-admissible system: 1/2 on these lines, 0 elsewhere, a_0 = -5/2
EX2_HALF_LINES = (0, 1, 2, 3, 7, 8)


def example_no_cycle() -> Arrangement:
    """13 lines, six triple points, condition (C), no cycle."""
    return Arrangement.from_coeffs(EX1_LINES, name="ex1")


def example_two_cycles() -> Arrangement:
    """12 lines, two disjoint 3-cycles."""
    return Arrangement.from_coeffs(EX2_LINES, name="ex2")


def example_two_cycles_classes():
    return tuple(F(1, 2) if i in EX2_HALF_LINES else F(0) for i in range(12))


def pencil(k: int) -> Arrangement:
    """k lines through the origin [0:0:1]."""
    rows = [(1, 0, 0), (0, 1, 0)] + [(1, j, 0) for j in range(1, k - 1)]
    return Arrangement.from_coeffs(rows[:k], name=f"pencil{k}")


def generic(n: int) -> Arrangement:
    """n lines in general position (tangents to a parabola, no three concurrent)."""
    return Arrangement.from_coeffs([(2 * t, -1, -t * t) for t in range(1, n + 1)], name=f"generic{n}")


def fermat_incidence() -> IncidenceStructure:
    """Combinatorics of the 9 lines of (x^3 - y^3)(y^3 - z^3)(z^3 - x^3) = 0.

    Lines 0-2 are x = w^i y, 3-5 are y = w^j z, 6-8 are z = w^k x (w a primitive
    cube root of unity). Each family meets in a coordinate vertex; a_i, b_j, c_k
    are concurrent iff i + j + k = 0 mod 3. No rational model exists.
    """
    sets = [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    for i in range(3):
        for j in range(3):
            k = (-i - j) % 3
            sets.append((i, 3 + j, 6 + k))
    return IncidenceStructure.from_incidences(9, sets, name="fermat")


def _through(p, q):
    """Integer coefficients of the affine line through (p[0], p[1]) and (q[0], q[1])."""
    (x1, y1), (x2, y2) = p, q
    return (y1 - y2, x2 - x1, x1 * y2 - x2 * y1)


def shared_edge_triangles() -> Arrangement:
    """Two triangles of lines sharing the line y = 0; every corner is a triple point.

    Lines 0-4 form the cycles {0, 1, 2} and {0, 3, 4}; lines 5-10 each pass
    through exactly one corner.
    """
    rows = [
        (0, 1, 0),                    # y = 0, shared
        (1, 0, 0),                    # x = 0
        _through((4, 0), (0, 4)),     # x + y = 4
        _through((8, 0), (10, -5)),
        _through((14, 0), (10, -5)),
        _through((0, 0), (1, 3)),
        _through((4, 0), (5, 7)),
        _through((0, 4), (-3, 5)),
        _through((8, 0), (7, -6)),
        _through((14, 0), (17, 2)),
        _through((10, -5), (13, -11)),
    ]
    return Arrangement.from_coeffs(rows, name="shared-edge")


def quadrilateral_cycle() -> Arrangement:
    """A 4-cycle of lines with one extra line through each corner, plus a free base line.

    Lines 0-3 are x = 0, y = 0, x = 4z, y = 4z in cyclic order; 4-7 pass through
    one corner each; line 8 carries no multiple point.
    """
    rows = [
        (1, 0, 0),                    # x = 0
        (0, 1, 0),                    # y = 0
        (1, 0, -4),                   # x = 4
        (0, 1, -4),                   # y = 4
        _through((0, 0), (1, 2)),
        _through((4, 0), (7, -1)),
        _through((4, 4), (3, 9)),
        _through((0, 4), (-5, 5)),
        (1, 3, -100),
    ]
    return Arrangement.from_coeffs(rows, name="quad")


def braid() -> Arrangement:
    """xyz(x - y)(y - z)(x - z): four triple points, pairwise adjacent, so condition (C) fails."""
    rows = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (0, 1, -1), (1, 0, -1)]
    return Arrangement.from_coeffs(rows, name="braid")
