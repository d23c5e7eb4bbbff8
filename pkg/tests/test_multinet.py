import pytest
from hypothesis import given, strategies as st

from lineadmit.fixtures import braid, fermat_incidence, generic, pencil
from lineadmit.generate import generate_condition_c
from lineadmit.incidence import IncidenceStructure, build_incidence
from lineadmit.multinet import (Multinet, SizeGuardError, is_concurrent, report_global_components,
                                search_multinets, validate_multinet)

FERMAT_CLASSES = ((0, 1, 2), (3, 4, 5), (6, 7, 8))


def fermat_net(inc=None):
    inc = inc or fermat_incidence()
    xs = frozenset(k for k, p in enumerate(inc.m_points) if len({h // 3 for h in p.incident}) == 3)
    return Multinet(FERMAT_CLASSES, (1,) * 9, xs, 3)


def test_pencil_of_three_is_a_net():
    inc = build_incidence(pencil(3))
    mn = Multinet(((0,), (1,), (2,)), (1, 1, 1), frozenset({0}), 1)
    assert validate_multinet(inc, mn)


def test_fermat_is_a_3_3_net():
    inc = fermat_incidence()
    mn = fermat_net(inc)
    assert len(mn.base_locus) == 9
    assert validate_multinet(inc, mn)
    assert str(mn) == "(3,3)-net"


def test_fermat_search_finds_four_nets():
    found = [m for m in search_multinets(fermat_incidence(), 3, 1)]
    assert len(found) == 4
    assert found[0].classes == FERMAT_CLASSES


@pytest.mark.parametrize("mutate, clause", [
    (lambda m: Multinet(m.classes, (2,) + m.mult[1:], m.base_locus, 3), 1),
    (lambda m: Multinet(m.classes, m.mult, m.base_locus - {min(m.base_locus)}, 3), 2),
    (lambda m: Multinet(m.classes, m.mult, m.base_locus | {0}, 3), 3),
    (lambda m: Multinet(((0, 1, 2, 3, 4, 5), (6, 7), (8,)), m.mult, m.base_locus, 3), 1),
])
def test_fermat_violations(mutate, clause):
    inc = fermat_incidence()
    check = validate_multinet(inc, mutate(fermat_net(inc)))
    assert not check and check.clause == clause


def test_clause_four_connectivity():
    # a pencil of four split 2 + 1 + 1: the pair meets only at the base point
    inc = build_incidence(pencil(4))
    mn = Multinet(((0, 1), (2,), (3,)), (1, 1, 2, 2), frozenset({0}), 2)
    check = validate_multinet(inc, mn)
    assert not check and check.clause == 4


def test_structural_errors():
    inc = build_incidence(pencil(3))
    with pytest.raises(ValueError):
        validate_multinet(inc, Multinet(((0, 1), (2,)), (1, 1, 1), frozenset({0}), 1))
    with pytest.raises(ValueError):
        validate_multinet(inc, Multinet(((0,), (1,), (2,)), (1, 0, 1), frozenset({0}), 1))


def test_relabel_and_reorder_invariance():
    inc = fermat_incidence()
    mn = fermat_net(inc)
    swapped = Multinet(tuple(reversed(mn.classes)), mn.mult, mn.base_locus, 3)
    assert validate_multinet(inc, swapped)
    perm = [4, 0, 8, 2, 6, 1, 3, 7, 5]      # new index of each old line
    sets = [tuple(perm[h] for h in p.incident) for p in inc.m_points if p.multiplicity >= 3]
    moved = IncidenceStructure.from_incidences(9, sets)
    new_x = frozenset(moved.m_index(tuple(sorted(perm[h] for h in inc.lines_through(k))))
                      for k in mn.base_locus)
    classes = tuple(tuple(sorted(perm[h] for h in c)) for c in mn.classes)
    assert validate_multinet(moved, Multinet(classes, (1,) * 9, new_x, 3))


@pytest.mark.parametrize("k", [3, 4, 5])
def test_pencil_multinet(k):
    found = search_multinets(build_incidence(pencil(k)), k_max=k, m_max=1)
    assert [(m.k, m.d, m.classes) for m in found] == [(k, 1, tuple((h,) for h in range(k)))]
    rep = report_global_components(build_incidence(pencil(k)), found)
    assert f"({k},1)-multinet present" in str(rep)


def test_examples_have_no_multinet(ex1, ex2):
    with pytest.raises(SizeGuardError):
        search_multinets(ex1, 4, 2)
    assert search_multinets(ex1, 4, 2, guard=13) == []
    assert search_multinets(ex2, 4, 2) == []
    assert "no global component" in str(report_global_components(ex1, []))


def test_braid_net_without_condition_c():
    inc = build_incidence(braid())
    found = search_multinets(inc, 4, 2)
    assert [str(m) for m in found] == ["(3,2)-net", "(3,4)-multinet"]
    assert "global component of dimension 2" in str(report_global_components(inc, found))


def test_fermat_report():
    inc = fermat_incidence()
    rep = report_global_components(inc, [fermat_net(inc)])
    assert str(rep) == "(3,3)-net on L_0 L_1 L_2 | L_3 L_4 L_5 | L_6 L_7 L_8 ⇒ global component of dimension 2"


def test_generic_lines_have_nothing():
    assert search_multinets(build_incidence(generic(6)), 4, 2) == []


@given(st.integers(1, 500), st.integers(5, 12))
def test_no_multinet_under_condition_c(seed, n):
    inc = build_incidence(generate_condition_c(seed, n))
    if not is_concurrent(inc):
        assert search_multinets(inc, 4, 2) == []


@pytest.mark.parametrize("inc", [fermat_incidence(), build_incidence(braid()), build_incidence(pencil(4))],
                         ids=["fermat", "braid", "pencil4"])
def test_search_results_validate(inc):
    for mn in search_multinets(inc, 4, 2):
        assert validate_multinet(inc, mn)
