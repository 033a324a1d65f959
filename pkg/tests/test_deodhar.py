import pytest

from flagalg import coxeter as cx
from flagalg import deodhar as dd


def W(t):
    return cx.build_group(t)


def test_rpoly_base_cases():
    w = W("A1")
    e, s = w.element("e"), w.element("s")
    assert str(dd.r_polynomial(w, e, s)) == "q - 1"
    assert dd.r_polynomial(w, s, e).is_zero
    assert dd.r_polynomial(w, e, e).to_dict() == {0: 1}


@pytest.mark.parametrize("t", ["A2", "B2", "G2"])
def test_rpoly_monic_degree(t):
    w = W(t)
    for u in w.elements:
        for v in w.elements:
            r = dd.r_polynomial(w, u, v)
            if cx.bruhat_leq(w, u, v):
                assert r.degree == v.length - u.length
                assert r.leading_coefficient == 1
            else:
                assert r.is_zero


@pytest.mark.parametrize("t", ["A2", "B2", "G2", "A3"])
def test_rpoly_descent_independence(t):
    w = W(t)
    for v in w.elements:
        descents = w.right_descents(v)
        if len(descents) < 2:
            continue
        for u in w.elements:
            ref = dd.r_polynomial(w, u, v)
            for s in descents:
                assert dd.r_polynomial_with_descent(w, u, v, s) == ref


def test_flag_oracle_basics():
    w = W("A1")
    e, s = w.element("e"), w.element("s")
    assert dd.flag_count(1, 2, e, s) == 1
    assert dd.flag_count(1, 3, e, s) == 2
    assert dd.flag_count(1, 4, e, s) == 3
    with pytest.raises(ValueError):
        dd.flag_count(4, 2, e, s)
    with pytest.raises(ValueError):
        dd.flag_count(1, 5, e, s)


@pytest.mark.parametrize("rank,q", [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3),
                                    (3, 2), (3, 3)])
def test_oracle_agreement_small(rank, q):
    w = W(f"A{rank}")
    table = dd.flag_position_table(rank, q)
    for u in w.elements:
        for v in w.elements:
            assert dd.r_polynomial(w, u, v)(q) == \
                table.get((u.word, v.word), 0)


def test_envelope_formulas():
    w = W("A1")
    e, s = w.element("e"), w.element("s")
    assert dd.weight_envelope(w, e, s).to_dict() == \
        {1: (0, 0), 2: (-1, -1)}
    assert dd.weight_envelope(w, s, s).to_dict() == {0: (0, 0)}
    assert dd.weight_envelope(w, s, e).is_empty
    w2 = W("A2")
    prof = dd.weight_envelope(w2, w2.element("e"), w2.longest_element)
    assert prof.to_dict() == {3: (-1, 0), 4: (-2, -1),
                              5: (-2, -2), 6: (-3, -3)}


@pytest.mark.parametrize("t", ["A2", "B2"])
def test_envelope_general_shape(t):
    w = W(t)
    for u in w.elements:
        for v in w.elements:
            prof = dd.weight_envelope(w, u, v)
            if not cx.bruhat_leq(w, u, v):
                assert prof.is_empty
                continue
            d = v.length - u.length
            assert prof.degrees == list(range(d, 2 * d + 1))
            for n in prof.degrees:
                assert prof.interval(n) == (-(n // 2), -n + d)


def test_ext_profiles():
    w = W("A1")
    e, s = w.element("e"), w.element("s")
    assert dd.ext_profile_standard(w, e, s).to_dict() == \
        {0: (0, 0), 1: (-1, -1)}
    assert dd.ext_profile_standard(w, s, s).to_dict() == {0: (0, 0)}
    w2 = W("A2")
    prof = dd.ext_profile_standard(w2, w2.element("e"), w2.longest_element)
    assert prof.interval(3) == (-3, -3)
    assert sorted(prof.degrees) == [0, 1, 2, 3]


@pytest.mark.parametrize("t", ["A2", "B2"])
def test_envelope_ext_shift_coincidence(t):
    w = W(t)
    for u in w.elements:
        for v in w.elements:
            if not cx.bruhat_leq(w, u, v):
                continue
            d = v.length - u.length
            env = dd.weight_envelope(w, u, v)
            ext = dd.ext_profile_standard(w, u, v)
            for n in ext.degrees:
                assert ext.interval(n) == env.interval(n + d)


def test_ext_parabolic():
    w = W("A2")
    e, t_el, s = w.element("e"), w.element("t"), w.element("s")
    prof = dd.ext_profile_parabolic(w, e, t_el, s)
    assert prof.to_dict() == dd.ext_profile_standard(w, e, t_el).to_dict()
    assert dd.ext_profile_parabolic(w, e, e, s).to_dict() == {0: (0, 0)}
    with pytest.raises(ValueError):
        dd.ext_profile_parabolic(w, s, t_el, s)


@pytest.mark.parametrize("t", ["A1", "A2", "B2"])
def test_lefschetz_exponent_containment(t):
    w = W(t)
    for u in w.elements:
        for v in w.elements:
            r = dd.r_polynomial(w, u, v)
            if r.is_zero:
                continue
            env = dd.weight_envelope(w, u, v)
            allowed = set()
            for n in env.degrees:
                lo, hi = env.interval(n)
                allowed.update(range(-hi, -lo + 1))
            for exp, _ in r.coeffs:
                assert exp in allowed


def test_projective_weight_certificate():
    w = W("A2")
    rep = dd.projective_weight_certificate(w, w.longest_element, 13, 2)
    assert rep.flag_intervals == ()
    assert rep.end_window == (-3, 3)
    rep = dd.projective_weight_certificate(w, w.element("e"), 13, 2)
    table = dict(rep.flag_intervals)
    assert table["sts"] == (1, 3)
    assert rep.q_order == 12 and rep.threshold == 6
    assert rep.hypothesis_holds
    with pytest.raises(ValueError):
        dd.projective_weight_certificate(w, w.element("e"), 9, 2)
    with pytest.raises(ValueError):
        dd.projective_weight_certificate(w, w.element("e"), 13, 26)


def test_polynomial_printing():
    p = dd.IntPolynomial.from_dict({3: 1, 2: -2, 1: 1})
    assert str(p) == "q^3 - 2*q^2 + q"
    assert str(dd.IntPolynomial.zero()) == "0"
