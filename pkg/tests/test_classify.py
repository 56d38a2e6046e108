import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from altsurgery.classify import (
    ContinuedFraction,
    MontesinosForm,
    TwoBridgeFraction,
    classify_small_twist_diagram,
    classify_two_bridge,
    eval_continued_fraction,
    in_delman_set,
    is_alternating_montesinos,
    is_delman_exception,
    montesinos_key,
    montesinos_normalize,
    two_bridge_of_sum,
)
from altsurgery.diagram import from_dt
from altsurgery.errors import (
    DivisionByZeroInTail,
    IntegerTangle,
    MalformedCode,
    MultiComponent,
    NotLinearPattern,
    TwistTooLarge,
)

from knots import figure_eight, fill, five_two, pretzel_331, trefoil
from oracles import alternating_by_shifts, delman_by_scan, determinant_from_jones, fold, jones, mirror_poly, same_up_to_mirror

F = Fraction


# ---- continued fractions -------------------------------------------------


@pytest.mark.parametrize("terms, value", [([3], F(3)), ([2, 2], F(5, 2)), ([2, 3], F(7, 3)), ([1, -1, 2], F(-1))])
def test_continued_fraction(terms, value):
    assert eval_continued_fraction(terms) == value
    assert eval_continued_fraction(ContinuedFraction(tuple(terms))) == value


def test_zero_tail():
    with pytest.raises(DivisionByZeroInTail):
        eval_continued_fraction([2, 1, -1])
    with pytest.raises(ValueError):
        ContinuedFraction((1, 0))


def _tail_pairs(terms):
    """(numerator, denominator) of every tail, by 2x2 matrices."""
    out = []
    for k in range(len(terms)):
        p0, q0, p1, q1 = 1, 0, terms[k], 1
        for a in terms[k + 1 :]:
            p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
    return out


def test_continued_fraction_against_fold_exhaustive():
    entries = [a for a in range(-4, 5) if a]
    for n in range(1, 7):
        for terms in itertools.product(entries, repeat=n):
            tails = _tail_pairs(terms)
            if any(p == 0 for p, _ in tails[1:]):
                with pytest.raises(DivisionByZeroInTail):
                    eval_continued_fraction(terms)
            else:
                assert eval_continued_fraction(terms) == fold(terms)


# ---- two-bridge ----------------------------------------------------------


def test_two_bridge_normal_form():
    assert TwoBridgeFraction.of(7, 3) == TwoBridgeFraction(7, 2)
    assert TwoBridgeFraction.of(7, 3).equivalent(7, 3)
    assert TwoBridgeFraction.of(5, 3) == TwoBridgeFraction(5, 2)
    assert TwoBridgeFraction.of(1, 0).p == 1
    with pytest.raises(ValueError):
        TwoBridgeFraction.of(6, 2)


def test_twist_knot_flags():
    assert TwoBridgeFraction.of(5, 2).is_twist_knot
    assert TwoBridgeFraction.of(7, 3).is_twist_knot
    assert TwoBridgeFraction.of(9, 4).is_twist_knot  # 6_1
    assert not TwoBridgeFraction.of(13, 5).is_twist_knot
    assert TwoBridgeFraction.of(5, 1).is_torus_2p


@given(st.integers(1, 40).map(lambda k: 2 * k + 1))
def test_twist_knot_matches_length_two_fractions(p):
    # [a, b] = (ab + 1)/b, so the length-two fractions with numerator p are p/b
    twist_classes = {
        TwoBridgeFraction.of(p, b)
        for a in range(-p, p + 1)
        for b in range(2, p)
        if abs(a) >= 2 and abs(a * b + 1) == p
    }
    for q in range(1, p):
        if Fraction(q, p).denominator == p:
            tb = TwoBridgeFraction.of(p, q)
            assert tb.is_twist_knot == (tb in twist_classes)


def test_sum_of_tangles():
    assert two_bridge_of_sum(F(1, 3), F(1, 2)).p == 5
    assert two_bridge_of_sum(F(1, 2), F(2)).equivalent(5, 2)
    assert two_bridge_of_sum(F(1, 3), F(2)).equivalent(7, 3)


@pytest.mark.parametrize("make, p, q", [(trefoil, 3, 1), (figure_eight, 5, 2), (five_two, 7, 3)])
def test_classify_two_bridge_examples(make, p, q):
    tb = classify_two_bridge(make())
    assert tb.equivalent(p, q)
    assert tb.p == determinant_from_jones(jones(make().to_pd()))
    if p > 3:
        assert tb.is_twist_knot


def test_trefoil_fraction():
    tb = classify_two_bridge(trefoil())
    assert (tb.p, tb.q) == (3, 1) and tb.is_torus_2p


def test_mirror_consistency():
    for make in (trefoil, figure_eight, five_two):
        d = make()
        a, b = classify_two_bridge(d), classify_two_bridge(d.mirror())
        # the mirror reads q -> -q; the normal form identifies the two
        assert b.equivalent(a.p, -a.q)
        assert a == b


def test_non_linear_pattern():
    with pytest.raises(NotLinearPattern):
        classify_two_bridge(fill("stacked4", "V2", "V3", "H2", "H3"))


# ---- Montesinos ----------------------------------------------------------


def test_normalize_examples():
    f = montesinos_normalize(MontesinosForm.parse("M(-1/2, 1/3, 1/5)"))
    assert f.e == -1 and f.tangles == (F(1, 2), F(1, 3), F(1, 5))
    f = montesinos_normalize(MontesinosForm.parse("M(1/3, 1/3, 7/3)"))
    assert f.e == 2 and f.tangles == (F(1, 3),) * 3
    assert "two-bridge" in montesinos_normalize(MontesinosForm.parse("M(1/2, 1/2)")).flags
    with pytest.raises(IntegerTangle):
        montesinos_normalize(MontesinosForm.parse("M(1/3, 2, 1/5)"))
    with pytest.raises(MalformedCode):
        MontesinosForm.parse("P(1/2)")


@pytest.mark.parametrize(
    "text, alt",
    [("M(1/3, 1/3, 1/3)", True), ("M(-1/2, 1/3, 1/5)", False), ("M(1/2, 1/2, -1/2)", False), ("M(-1/3, -1/3, -1/5)", True)],
)
def test_alternating_rule(text, alt):
    form = MontesinosForm.parse(text)
    assert is_alternating_montesinos(form) is alt
    assert alternating_by_shifts(form.e, list(form.tangles)) is alt


@pytest.mark.parametrize(
    "text, hit",
    [("M(-1/2, 1/3, 1/5)", True), ("M(-3/4, 1/3, 1/3)", True), ("M(1/3, 1/5, 1/7)", False), ("M(1/3, 1/5, -1/7)", False)],
)
def test_delman_examples(text, hit):
    form = MontesinosForm.parse(text)
    assert is_delman_exception(form) is hit
    assert delman_by_scan(form.tangles, form.e) is hit


def test_delman_set():
    for n in range(1, 30):
        h = F(1, 2 * n)
        assert all(in_delman_set(x) for x in (-h, -1 - h, -1 + h, -2 + h))
    assert not in_delman_set(F(-1, 3))
    assert not in_delman_set(F(1, 2))


fracs = st.builds(F, st.integers(-12, 12), st.integers(2, 9)).filter(lambda r: r.denominator > 1)


@given(st.lists(fracs, min_size=3, max_size=3), st.permutations(range(3)))
def test_delman_order_invariant(ts, perm):
    a = MontesinosForm(tuple(ts))
    b = MontesinosForm(tuple(ts[i] for i in perm))
    assert is_delman_exception(a) == is_delman_exception(b)


@given(st.lists(fracs, min_size=3, max_size=3))
def test_delman_members_are_not_alternating(ts):
    form = MontesinosForm(tuple(ts))
    if is_delman_exception(form):
        assert not is_alternating_montesinos(form)


@given(st.lists(fracs, min_size=3, max_size=5), st.integers(-3, 3))
def test_alternating_rule_matches_shift_search(ts, e):
    form = MontesinosForm(tuple(ts), e)
    assert is_alternating_montesinos(form) == alternating_by_shifts(e, ts, span=8)


@given(st.lists(fracs, min_size=3, max_size=5), st.randoms(use_true_random=False))
def test_key_is_dihedral_and_mirror_invariant(ts, rnd):
    form = MontesinosForm(tuple(ts))
    k = rnd.randrange(len(ts))
    rotated = MontesinosForm(tuple(ts[k:] + ts[:k]))
    assert montesinos_key(rotated) == montesinos_key(form)
    assert montesinos_key(MontesinosForm(tuple(reversed(ts)))) == montesinos_key(form)
    assert montesinos_key(form.mirror()) == montesinos_key(form)


# ---- small twist diagrams ------------------------------------------------


def test_figure_eight_class():
    k = classify_small_twist_diagram(figure_eight())
    assert k.variant == "TwoBridge" and k.two_bridge.equivalent(5, 2)


def test_center_graph_with_two_vertical_boxes_is_a_torus_knot():
    k = classify_small_twist_diagram(fill("ring2", "V2", "V3"))
    assert k.variant == "TorusTwoP" and k.two_bridge.p == 5
    assert k.hyperbolic == "no"


def test_pretzel_331():
    k = classify_small_twist_diagram(pretzel_331())
    # the integer strand folds into a neighbour, leaving a two-bridge knot
    assert k.branch == "t3_pretzel"
    assert k.variant == "TwoBridge" and k.two_bridge.equivalent(15, 4)
    assert k.determinant == determinant_from_jones(jones(pretzel_331().to_pd()))


def test_three_strand_pretzel():
    k = classify_small_twist_diagram(fill("ring3", "V3", "V3", "V3"))
    assert k.variant == "Pretzel"
    assert k.montesinos.tangles == (F(1, 3),) * 3


def test_graph_a_type_ii():
    # every box a full twist gives a two-component link
    with pytest.raises(MultiComponent):
        fill("stacked4", "V2", "V2", "H2", "H2")
    k = classify_small_twist_diagram(fill("stacked4", "V2", "V3", "H2", "H3"))
    assert k.variant == "ArborescentII" and k.branch == "s_type_ii"


def test_graph_a_type_iii():
    k = classify_small_twist_diagram(fill("stacked4", "V3", "V3", "H3", "H3"))
    assert k.variant == "ArborescentIII"


def test_graph_a_montesinos():
    k = classify_small_twist_diagram(fill("stacked4", "V2", "V3", "V2", "H3"))
    assert k.variant == "MontesinosLen3" and k.branch == "s_montesinos"
    # M(1/q1, 1/q2, 1/(q3 + 1/q4)) with q = 2, 3, 2, 3
    assert sorted(k.montesinos.tangles) == sorted([F(1, 2), F(1, 3), 1 / (2 + F(1, 3))])


def test_graph_b_montesinos():
    k = classify_small_twist_diagram(fill("ring4", "H2", "V3", "V3", "V3"))
    assert k.variant == "MontesinosLen3" and k.branch == "r4_montesinos"
    # M(1/p, 1/q, n + 1/r) with n = 2
    assert k.montesinos.e == 2 and k.montesinos.tangles == (F(1, 3),) * 3


def test_graph_b_pretzel():
    k = classify_small_twist_diagram(fill("ring4", "V2", "V3", "V3", "V3"))
    assert k.variant == "Pretzel" and k.montesinos.length == 4


def test_too_many_twists():
    d = from_dt([6, 8, 10, 12, 14, 16, 2, 4])  # 8_18, no bigons
    with pytest.raises(TwistTooLarge):
        classify_small_twist_diagram(d)


def test_determinants_match_jones_on_sample():
    from knots import sweep

    recs = [r for r in sweep(3).counted if r.n_crossings <= 10]
    for r in random.Random(3).sample(recs, 60):
        assert r.knot_class.determinant == determinant_from_jones(jones(r.pd))


def test_class_keys_agree_with_jones():
    """Same key means same Jones polynomial up to mirror, and no two keys share one."""
    from collections import defaultdict

    from knots import sweep

    by_key = defaultdict(list)
    for r in sweep(3).counted:
        if r.n_crossings <= 11 and len(by_key[r.knot_class.key]) < 3:
            by_key[r.knot_class.key].append(r.pd)
    seen = {}
    for key, pds in by_key.items():
        polys = [jones(pd) for pd in pds]
        assert all(same_up_to_mirror(polys[0], q) for q in polys[1:]), key
        canon = min(tuple(sorted(polys[0].items())), tuple(sorted(mirror_poly(polys[0]).items())))
        assert canon not in seen, (key, seen.get(canon))
        seen[canon] = key
    assert len(seen) > 30
