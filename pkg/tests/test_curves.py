import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from descentkit.curves import (CONVENTIONS, Curve, CurveError, DescentDatum, LPoly, MonomialMap, WCurve,
                               build_superelliptic, composition_table, d6_scenario, induced_action_check,
                               is_identity_on, iso_map, iso_search, iso_verify, j_invariant, maps_to,
                               superelliptic_check, twist_curve, weil_cocycle_check, zeta8_datum)
from descentkit.cyclo import Field, FieldAut, identity_aut

from oracles import root_of_unity as croot


def cval(x, n):
    return sum(complex(float(a)) * croot(n, 1) ** i for i, a in enumerate(x.c))


def apply_numeric(phi: MonomialMap, p):
    n = phi.field.n
    x, y = p
    return (cval(phi.x.coef, n) * x ** phi.x.xe * y ** phi.x.ye,
            cval(phi.y.coef, n) * x ** phi.y.xe * y ** phi.y.ye)


def poly_numeric(f: LPoly, x):
    return sum(cval(c, f.field.n) * x ** e for e, c in f.terms.items())


F12 = Field(12)


def test_j_invariant_known_values():
    q = Field(1)
    assert j_invariant(WCurve(q, 1, 0)) == 1728
    assert j_invariant(WCurve(q, 0, 1)) == 0
    assert j_invariant(WCurve(q, -1, 0)) == 1728
    # y^2 = x^3 - x + 1: 1728 * 4(-1)^3 / (4(-1)^3 + 27) = -6912/23
    assert j_invariant(WCurve(q, -1, 1)) == Fraction(-6912, 23)


def test_j_invariant_with_cube_root_of_two():
    fld = Field(12, 3, 2)
    j = j_invariant(WCurve(fld, fld.t(), fld.zeta(1, 4)))
    assert j.is_rational() and j.rational() == Fraction(-13824, 19)


def test_singular_curve_rejected():
    with pytest.raises(CurveError):
        WCurve(Field(1), -3, 2)


@given(st.integers(0, 11), st.integers(-3, 3), st.integers(-3, 3))
def test_j_invariant_unchanged_by_scaling(k, a, b):
    if 4 * a ** 3 + 27 * b ** 2 == 0:
        return
    u = F12.zeta(k) * 2
    e = WCurve(F12, a, b)
    assert j_invariant(WCurve(F12, e.a * u ** 4, e.b * u ** 6)) == j_invariant(e)


@pytest.mark.parametrize("k", [5, 7, 11])
def test_j_of_conjugate_is_conjugate_of_j(k):
    aut = FieldAut(F12, k)
    e = WCurve(F12, F12.parse("z12 + 1"), F12.parse("z4 - 2"))
    assert j_invariant(twist_curve(e, aut)) == aut(j_invariant(e))


maps = st.builds(
    lambda xc, a, b, yc, c, d: MonomialMap(F12, F12.zeta(xc), a, b, F12.zeta(yc) * 3, c, d),
    st.integers(0, 11), st.integers(-2, 2), st.integers(-2, 2),
    st.integers(0, 11), st.integers(-2, 2), st.integers(-2, 2))


@given(maps, maps)
def test_compose_matches_pointwise_composition(f, g):
    p = (complex(1.3, 0.4), complex(-0.7, 0.9))
    want = apply_numeric(f, apply_numeric(g, p))
    got = apply_numeric(f.compose(g), p)
    assert all(abs(w - v) < 1e-6 * max(1, abs(w)) for w, v in zip(want, got))
    # exponent matrices multiply
    m = [[sum(f.matrix()[i][k] * g.matrix()[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert f.compose(g).matrix() == m


@given(st.integers(1, 11))
def test_iso_verify_against_points(k):
    e = WCurve(F12, F12.parse("z12"), F12.parse("1 + z4"))
    u = F12.zeta(k)
    for conv in CONVENTIONS:
        phi = iso_map(F12, u, conv)
        a2 = e.a * u ** 4 if conv == "u2u3" else None
        if conv == "u2u3":
            target = WCurve(F12, a2, e.b * u ** 6)
            assert iso_verify(e, target, u, conv)
            x = complex(0.3, 1.1)
            y = cmath.sqrt(poly_numeric(e.f, x))
            X, Y = apply_numeric(phi, (x, y))
            assert abs(Y ** 2 - poly_numeric(target.f, X)) < 1e-6


def test_iso_search_finds_automorphisms():
    e = WCurve(F12, 1, 0)
    # y^2 = x^3 + x has automorphisms u with u^4 = 1
    found = iso_search(e, e)
    assert sorted(str(u) for u in found) == sorted(str(F12.zeta(k)) for k in (0, 3, 6, 9))
    assert iso_search(WCurve(F12, 1, 1), WCurve(F12, 1, 1)) == [F12.one(), F12.zeta(6)]


def test_maps_to_rejects_y_in_x_component():
    phi = MonomialMap(F12, 1, 1, 1, 1, 0, 1)
    e = WCurve(F12, 1, 0)
    with pytest.raises(CurveError):
        maps_to(phi, e, e)


def test_identity_on_curve_reduces_y_powers():
    fld = Field(4)
    c = Curve(fld, 2, LPoly.parse("x^4 + 1", fld))
    assert is_identity_on(MonomialMap.identity(fld), c)
    # y^3 / f(x) equals y on the curve
    f = c.f
    assert f == LPoly.parse("x^4+1", fld)
    assert not is_identity_on(MonomialMap(fld, -1, 1, 0, 1, 0, 1), c)


def test_zeta8_cocycle_and_action():
    d = zeta8_datum()
    v = weil_cocycle_check(d)
    assert v.passed and all(v.maps_ok.values())
    rep = induced_action_check(d)
    assert rep.right_action and rep.invertible and rep.identity_ok and rep.order == 2


def test_zeta8_wrong_u_fails():
    fld = Field(8)
    e = WCurve(fld, fld.zeta(1, 4), 0)
    c = FieldAut(fld, 7)
    # u = i satisfies the cocycle identity but is not an isomorphism onto ^cE
    d = DescentDatum.elliptic(e, {identity_aut(fld): fld.one(), c: fld.zeta(2)})
    v = weil_cocycle_check(d)
    assert v.passed and not v.maps_ok[c]
    with pytest.raises(CurveError):
        induced_action_check(d)
    # u = 1 + i has u * c(u) = 2, so the cocycle identity fails
    d = DescentDatum.elliptic(e, {identity_aut(fld): fld.one(), c: fld.one() + fld.zeta(2)})
    assert not weil_cocycle_check(d).passed
    with pytest.raises(CurveError):
        induced_action_check(d)


def test_composition_table_requires_closure():
    with pytest.raises(CurveError):
        composition_table([identity_aut(F12), FieldAut(F12, 5), FieldAut(F12, 7)])
    assert len(composition_table([identity_aut(F12), FieldAut(F12, 5)])) == 4


def test_incomplete_datum():
    e = WCurve(F12, 1, 0)
    d = DescentDatum(e, [identity_aut(F12), FieldAut(F12, 5)], {identity_aut(F12): MonomialMap.identity(F12)})
    with pytest.raises(CurveError):
        weil_cocycle_check(d)


def test_superelliptic_literal_choice_does_not_map():
    k = build_superelliptic(3, 2, 2, "literal")
    rows = superelliptic_check(k)
    assert len(rows) == 4
    assert not any(r.maps_ok for r in rows)


def test_superelliptic_corrected_choice_maps_but_never_a_cocycle():
    k = build_superelliptic(3, 2, 2, "corrected")
    assert k.field.n == 24
    assert k.omega_prime ** k.q == k.kappa
    rows = superelliptic_check(k)
    assert all(r.maps_ok for r in rows)
    assert not any(r.composite_identity for r in rows)
    neg = MonomialMap(k.field, -1, 1, 0, -1, 0, 1)
    assert all(r.composite == neg for r in rows)


@pytest.mark.parametrize("m,n,q", [(2, 2, 2), (3, 1, 2), (3, 2, 4), (3, 1, 3), (1, 2, 2)])
def test_superelliptic_parameter_checks(m, n, q):
    with pytest.raises(CurveError):
        build_superelliptic(m, n, q)


def test_superelliptic_curve_is_fixed_numerically():
    # mu sends points of X to points of its conjugate
    k = build_superelliptic(3, 2, 2, "corrected")
    rng = random.Random(3)
    for _ in range(5):
        x = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        y = cmath.sqrt(poly_numeric(k.x.f, x))
        X, Y = apply_numeric(k.mu, (x, y))
        assert abs(Y ** 2 - poly_numeric(k.cx.f, X)) < 1e-6 * max(1, abs(Y) ** 2)


def test_d6_scenario():
    a = d6_scenario()
    b = d6_scenario()
    assert a == b
    assert a.group_order == 6 and a.full_group_order == 12
    assert all(r.model_matches for r in a.rows)
    assert a.convention_verifies == {"u2u3": True, "u3u2": False}
    assert not a.cocycle["u2u3"].passed and not a.cocycle["u3u2"].passed
    assert len(a.consistent_choices["u2u3"]) == 2 and a.consistent_choices["u3u2"] == []
    assert any("ambiguity" in n for n in a.notes)
