from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from lineadmit.admissibility import (COMMON_LINE, DICHOTOMY, EVEN_CYCLES, NO_CYCLE, NONE, Admissible,
                                     AdmCertificate, ExceptionalShape, LocalSystem,
                                     NotAdmissible, ResidueVector, StrategyError, choose_h0, classify,
                                     correct_common_line, correct_dichotomy, correct_even_cycles,
                                     correct_no_cycle, correct_open_cycles, decide_admissible,
                                     exceptional_cycle, normalize, verify_certificate, verify_residues)
from lineadmit.fixtures import (braid, example_two_cycles_classes, quadrilateral_cycle,
                                shared_edge_triangles)
from lineadmit.generate import generate_condition_c
from lineadmit.incidence import Point, build_incidence
from strategies import local_systems

QUAD = build_incidence(quadrilateral_cycle())
SHARED = build_incidence(shared_edge_triangles())


def classes(n, **nonzero):
    out = [F(0)] * n
    for key, v in nonzero.items():
        out[int(key[1:])] = F(v)
    return out


@pytest.mark.parametrize("bad", [
    (F(1, 2), F(0)),          # sum not an integer
    (F(3, 2), F(1, 2)),       # class outside [0, 1)
    (F(-1, 3), F(1, 3)),
])
def test_local_system_rejects(bad):
    with pytest.raises(ValueError):
        LocalSystem(bad)


def test_from_residues_reduces_mod_one():
    assert LocalSystem.from_residues([F(-5, 2), F(1, 2), 2]).classes == (F(1, 2), F(1, 2), 0)


def test_ex2_normalization():
    rv = normalize(LocalSystem(example_two_cycles_classes()), 0)
    assert rv[0] == F(-5, 2)
    assert sum(rv.residues) == 0


@pytest.mark.parametrize("cls, residues, clause", [
    ([F(1, 2), F(1, 2), 0, 0, 0, 0], [F(1, 2), F(-1, 2), 0, F(-1), 0, 0], "sum"),
    ([0, F(1, 2), F(2, 3), 0, 0, F(5, 6)], [F(1), F(-1, 2), F(-1, 3), 0, 0, F(-1, 6)], "line"),
    ([0, 0, 0, 0, 0, 0], [F(1, 2), F(-1, 2), 0, 0, 0, 0], "class"),
    ([F(1, 2), F(1, 2), 0, 0, 0, 0], [F(1, 2), F(1, 2), 0, 0, F(-1), 0], "point"),
])
def test_verifier_names_violated_clause(cls, residues, clause):
    # braid: multiple point 0 lies on lines 0, 1, 3
    inc = build_incidence(braid())
    verdict = verify_residues(inc, LocalSystem(tuple(cls)), [F(r) for r in residues])
    assert not verdict
    assert {v.clause for v in verdict.violations} == {clause}


def test_hand_traced_no_cycle_steps(ex1):
    # one-point trees on L_1, L_2, L_12 (their other points lie on the base line L_0)
    cls = classes(13, L1="1/2", L3="1/2", L2="1/3", L5="1/3", L6="1/3")
    ls = LocalSystem(tuple(cls))
    rv = normalize(ls, 0)
    assert rv[0] == -2
    cert = correct_no_cycle(ex1, rv, 0)
    p_011 = ex1.m_index(Point((0, 1, 1)))
    p_201 = ex1.m_index(Point((2, 0, 1)))
    assert [(m.kind, m.source, m.target, m.amount, m.point) for m in cert.trace] == [
        ("shape", 1, 0, 1, p_011),
        ("shape", 2, 0, 1, p_201),
    ]
    assert cert.rv[0] == 0 and cert.rv[1] == F(-1, 2) and cert.rv[2] == F(-2, 3)
    assert cert.h0_max == 0
    assert verify_certificate(ex1, ls, cert)


def _replay(inc, ls, cert):
    a = list(normalize(ls, cert.h0).residues)
    for m in cert.trace:
        assert m.amount.denominator == 1 and m.amount > 0
        a[m.source] -= m.amount
        a[m.target] += m.amount
        assert sum(a) == 0
    return a


@given(local_systems(13))
def test_no_cycle_certificates_sound(ls):
    from lineadmit.fixtures import example_no_cycle
    inc = build_incidence(example_no_cycle())
    cert = correct_no_cycle(inc, normalize(ls, 0), 0)
    assert verify_certificate(inc, ls, cert)
    # integer moves keep exp(a) fixed; the trace reproduces the certificate
    assert _replay(inc, ls, cert) == list(cert.rv.residues)
    # the base residue never becomes positive, and each shaped zone sums to >= 0
    assert cert.h0_max <= 0
    assert all(z.zone_sum >= 0 for z in cert.checkpoints)


@given(st.integers(1, 300), st.integers(5, 10), st.data())
def test_generated_certificates(seed, n, data):
    inc = build_incidence(generate_condition_c(seed, n))
    ls = data.draw(local_systems(n))
    report = classify(inc, ls)
    assert report.applicable in (NO_CYCLE, COMMON_LINE)
    res = decide_admissible(inc, ls)
    assert isinstance(res, Admissible) and res.strategy == report.applicable
    assert verify_certificate(inc, ls, res.certificate)
    assert _replay(inc, ls, res.certificate) == list(res.certificate.rv.residues)
    if res.strategy == NO_CYCLE:
        assert res.certificate.h0_max <= 0
        assert all(z.zone_sum >= 0 for z in res.certificate.checkpoints)


@given(st.integers(1, 200), st.integers(5, 9), st.data())
def test_idempotent_on_admissible_residues(seed, n, data):
    inc = build_incidence(generate_condition_c(seed, n))
    ls = data.draw(local_systems(n))
    res = decide_admissible(inc, ls)
    again = decide_admissible(inc, LocalSystem.from_residues(res.certificate.rv.residues))
    assert verify_certificate(inc, ls, again.certificate)


def test_classify_fixtures(ex1, ex2):
    assert classify(ex1).applicable == NO_CYCLE
    assert choose_h0(ex1) == 0
    assert classify(SHARED).applicable == COMMON_LINE
    assert classify(QUAD, h0=8).applicable == EVEN_CYCLES
    assert classify(ex2).applicable == DICHOTOMY
    assert classify(build_incidence(braid())).applicable == NONE


@given(local_systems(11))
def test_common_line_sound(ls):
    cert = correct_common_line(SHARED, normalize(ls, 0))
    assert verify_certificate(SHARED, ls, cert)


@given(local_systems(9))
def test_even_cycles_sound(ls):
    cert = correct_even_cycles(QUAD, normalize(ls, 8), 8)
    assert verify_certificate(QUAD, ls, cert)
    assert _replay(QUAD, ls, cert) == list(cert.rv.residues)


def test_even_cycle_alternating_shift():
    # every joint sum is 1 and the A_1 lines carry class 0: only the alternating shift helps
    ls = LocalSystem(tuple(classes(9, L0="1/2", L1="1/2", L2="1/2", L3="1/2")))
    cert = correct_even_cycles(QUAD, normalize(ls, 8), 8)
    assert {m.kind for m in cert.trace} == {"alternate"}
    assert verify_certificate(QUAD, ls, cert)


def test_open_cycles_via_a1_line(ex2):
    cls = list(example_two_cycles_classes())
    cls[0] = F(1, 4)
    cls[4] = F(1, 4)
    ls = LocalSystem(tuple(cls))
    assert classify(ex2, ls).applicable == "open-cycles"
    cert = correct_open_cycles(ex2, normalize(ls, 0), 0)
    assert cert.trace[0].kind == "open" and cert.trace[0].target == 4
    assert verify_certificate(ex2, ls, cert)


def test_open_cycles_needs_nonzero_a1(ex2):
    ls = LocalSystem(example_two_cycles_classes())
    with pytest.raises(StrategyError):
        correct_open_cycles(ex2, normalize(ls, 0), 0)


def test_exceptional_shape_flagged(ex2):
    ls = LocalSystem(example_two_cycles_classes())
    report = classify(ex2, ls)
    assert report.exceptional is not None and report.exceptional.lines == (1, 2, 3)
    with pytest.raises(ExceptionalShape) as info:
        correct_dichotomy(ex2, normalize(ls, 0), 0)
    assert info.value.cycle.lines == (1, 2, 3)


def test_ex2_half_system_not_admissible(ex2):
    res = decide_admissible(ex2, LocalSystem(example_two_cycles_classes()))
    assert isinstance(res, NotAdmissible)
    assert any("b_1 = b_2 = b_3 = 0" in t for t in res.transcript)


@given(local_systems(12))
def test_dichotomy_outside_exceptional_shape(ls):
    from lineadmit.fixtures import example_two_cycles
    inc = build_incidence(example_two_cycles())
    rv = normalize(ls, 0)
    if exceptional_cycle(inc, ls, [c for c in classify(inc).cycles if 0 not in c.lines]):
        with pytest.raises(ExceptionalShape):
            correct_dichotomy(inc, rv, 0)
    else:
        assert verify_certificate(inc, ls, correct_dichotomy(inc, rv, 0))


@pytest.mark.parametrize("h0", [1, 3])
def test_no_cycle_rejects_bad_base_line(ex1, h0):
    # L_3 carries a single multiple point; L_1 is fine
    ls = LocalSystem.trivial(13)
    if h0 == 3:
        with pytest.raises(StrategyError):
            correct_no_cycle(ex1, normalize(ls, h0), h0)
    else:
        assert verify_certificate(ex1, ls, correct_no_cycle(ex1, normalize(ls, h0), h0))


def test_unnormalized_input_rejected(ex1):
    rv = ResidueVector(tuple([F(-1)] + [F(0)] * 11 + [F(1)]))
    with pytest.raises(StrategyError):
        correct_no_cycle(ex1, rv, 0)


def test_certificate_verifier_is_independent(ex1):
    ls = LocalSystem.trivial(13)
    fake = AdmCertificate(ResidueVector(tuple([F(1)] + [F(0)] * 11 + [F(-1)])), 0)
    assert not verify_certificate(ex1, ls, fake)


@given(local_systems(13))
def test_corrector_leaves_admissible_vectors_alone(ls):
    from lineadmit.fixtures import example_no_cycle
    inc = build_incidence(example_no_cycle())
    rv = normalize(ls, 0)
    cert = correct_no_cycle(inc, rv, 0)
    if verify_residues(inc, ls, rv.residues):
        assert cert.rv == rv and cert.trace == ()


@given(local_systems(9))
def test_even_cycles_leave_admissible_vectors_alone(ls):
    rv = normalize(ls, 8)
    cert = correct_even_cycles(QUAD, rv, 8)
    if verify_residues(QUAD, ls, rv.residues):
        assert cert.rv == rv and cert.trace == ()


def test_even_cycles_reject_triangles(ex2):
    with pytest.raises(StrategyError):
        correct_even_cycles(ex2, normalize(LocalSystem.trivial(12), 0), 0)


def test_even_cycle_with_nonzero_a1_class():
    # a corner A_1 line with class 1/3 makes that joint sum non-integral, so the cycle opens there
    ls = LocalSystem(tuple(classes(9, L0="1/2", L1="1/2", L2="1/2", L3="1/2", L4="1/3", L8="2/3")))
    cert = correct_even_cycles(QUAD, normalize(ls, 8), 8)
    assert "alternate" not in {m.kind for m in cert.trace}
    assert verify_certificate(QUAD, ls, cert)
