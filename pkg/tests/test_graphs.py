import pytest
from hypothesis import given, strategies as st

from lineadmit.fixtures import braid, generic, pencil, quadrilateral_cycle, shared_edge_triangles
from lineadmit.generate import generate_condition_c
from lineadmit.graphs import (EMPTY, ISOLATED, REGULAR, PreconditionError, cycles, has_common_line,
                              is_graph, is_maximal, maximal_graphs, verify_zone_partition, zones)
from lineadmit.incidence import build_incidence


def regular(graphs):
    return [sorted(g.members) for g in graphs if g.kind == REGULAR]


def test_ex1_single_star_graph(ex1):
    graphs = maximal_graphs(ex1)
    assert regular(graphs) == [[0, 1, 2, 12]]
    (z,) = [z for z in zones(ex1, graphs) if z.graph.kind == REGULAR]
    assert z.members == frozenset(range(13))
    assert cycles(ex1) == []


def test_ex2_two_triangles(ex2):
    cyc = cycles(ex2)
    assert [c.lines for c in cyc] == [(0, 7, 8), (1, 2, 3)]
    assert has_common_line(cyc) is None
    zone_sets = sorted(sorted(z.members) for z in zones(ex2) if z.graph.kind == REGULAR)
    assert zone_sets == [[0, 7, 8, 9, 10, 11], [1, 2, 3, 4, 5, 6]]
    assert verify_zone_partition(ex2)


def test_cycle_joints_are_the_consecutive_meets(ex2):
    for c in cycles(ex2):
        for i, p in enumerate(c.joints):
            assert ex2.meet(c.lines[i], c.lines[(i + 1) % len(c)]) == p


@pytest.mark.parametrize("factory, expected", [
    (shared_edge_triangles, [(0, 1, 2), (0, 3, 4)]),
    (quadrilateral_cycle, [(0, 1, 2, 3)]),
    (lambda: pencil(5), []),
    (lambda: generic(5), []),
])
def test_cycle_census(factory, expected):
    assert [c.lines for c in cycles(build_incidence(factory()))] == expected


def test_shared_edge_common_line():
    inc = build_incidence(shared_edge_triangles())
    assert has_common_line(cycles(inc)) == 0


def test_singleton_graph_kinds():
    inc = build_incidence(pencil(4))
    graphs = maximal_graphs(inc)
    assert [(g.kind, sorted(g.members)) for g in graphs] == [(ISOLATED, [0])]
    inc = build_incidence(quadrilateral_cycle())
    assert (EMPTY, [8]) in [(g.kind, sorted(g.members)) for g in maximal_graphs(inc)]


def test_definition_level_checks(ex2):
    assert is_graph(ex2, {1, 2, 3}) and is_maximal(ex2, {1, 2, 3})
    assert is_graph(ex2, {1, 2}) and not is_maximal(ex2, {1, 2})
    assert not is_graph(ex2, {1, 4})        # line 4 carries a single multiple point
    assert not is_graph(ex2, {1, 7})        # not joined by a multiple point


def test_zone_partition_needs_condition_c():
    with pytest.raises(PreconditionError):
        verify_zone_partition(build_incidence(braid()))


def test_braid_zones_overlap():
    # without condition (C) nothing prevents a line from sitting in two zones
    inc = build_incidence(braid())
    total = sum(len(z.members) for z in zones(inc))
    assert total >= inc.n_lines


@given(st.integers(1, 400), st.integers(5, 10))
def test_zones_partition_generated(seed, n):
    inc = build_incidence(generate_condition_c(seed, n))
    check = verify_zone_partition(inc)
    assert check, check


@given(st.integers(1, 400), st.integers(5, 10))
def test_cycles_are_chordless(seed, n):
    inc = build_incidence(generate_condition_c(seed, n))
    for c in cycles(inc):
        k = len(c)
        assert k >= 3 and len(set(c.joints)) == k
        for i in range(k):
            for j in range(i + 2, k):
                if (i, j) != (0, k - 1):
                    assert inc.meet(c.lines[i], c.lines[j]) is None
