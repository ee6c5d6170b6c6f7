import itertools
import random

import pytest
from hypothesis import given, strategies as st

from descentkit import fixtures
from descentkit.cohomology import (CohomologyError, GModule, ObstructionContext, analyse, class_order2,
                                   coboundary1, cocycles2, cohomologous2, cyclic_table, enumerate_lifts,
                                   h1, h2, is_cocycle1, is_cocycle2, is_normalized2, multiply2,
                                   obstruction_cocycle, principal, random_section, random_shifts, restriction_exactness,
                                   split_criterion, trivial_module, unique_lambda)
from descentkit.extension import cmod_check
from descentkit.named import cyclic, klein, quaternion, symmetric
from descentkit.permgroup import BoundExceeded

from oracles import cyclic_cohomology_orders


def cyclic_module(n, m, k):
    """C_n acting on Z/m through g.x = k x."""
    q = cyclic(n)
    g = q.gens[0] if q.gens else q.identity
    powers = {}
    x = q.identity
    for i in range(n):
        powers[x] = i
        x = q.mul(x, g)
    return GModule(q, cyclic_table(m), lambda u, a: (pow(k, powers[u], m) * a) % m)


def _valid_actions():
    out = []
    for n in (1, 2, 3, 4):
        for m in (1, 2, 3, 4, 5, 6):
            for k in range(1, m + 1):
                if m == 1 or (k % m and pow(k, n, m) == 1 % m and __import__("math").gcd(k, m) == 1):
                    out.append((n, m, k % m if m > 1 else 0))
    return sorted(set(out))


@pytest.mark.parametrize("n,m,k", _valid_actions())
def test_cyclic_groups_against_periodic_resolution(n, m, k):
    mod = cyclic_module(n, m, k)
    want1, want2 = cyclic_cohomology_orders(n, m, k)
    assert h1(mod).order == want1
    assert h2(mod).order == want2


def test_known_small_values():
    assert h2(trivial_module(cyclic(2), cyclic_table(2))).order == 2
    assert h2(trivial_module(cyclic(3), cyclic_table(2))).order == 1
    assert h1(trivial_module(cyclic(2), cyclic_table(2))).order == 2
    v = klein()
    assert h1(trivial_module(v, cyclic_table(2))).order == 4
    assert h2(trivial_module(v, cyclic_table(2))).order == 8
    assert h1(trivial_module(symmetric(3), cyclic_table(2))).order == 2
    assert h1(trivial_module(symmetric(3), cyclic_table(3))).order == 1


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        h2(trivial_module(quaternion(), cyclic_table(2)))


def test_module_validation():
    q = cyclic(2)
    with pytest.raises(CohomologyError):
        GModule(q, cyclic_table(3), lambda u, a: (a + 1) % 3 if u != q.identity else a)
    with pytest.raises(CohomologyError):
        GModule(q, symmetric(3))


@given(st.integers(0, 10_000))
def test_coboundaries_are_cocycles(seed):
    rng = random.Random(seed)
    mod = cyclic_module(2, 4, 3) if seed % 2 else trivial_module(klein(), cyclic_table(2))
    f = {u: rng.randrange(len(mod.m)) for u in mod.q.elements}
    f[mod.q.identity] = 0
    d = coboundary1(f, mod)
    assert is_cocycle2(d, mod) and is_normalized2(d, mod)
    assert is_cocycle1(principal(rng.randrange(len(mod.m)), mod), mod)


def test_cocycles_form_a_group_and_class_orders_divide():
    mod = cyclic_module(2, 4, 3)
    z = cocycles2(mod)
    assert all(is_cocycle2(c, mod) for c in z)
    for a, b in itertools.product(z[:6], repeat=2):
        assert is_cocycle2(multiply2(a, b, mod), mod)
    order = h2(mod).order
    for c in z:
        assert order % class_order2(c, mod) == 0
    reps = h2(mod).representatives
    assert len(reps) == order
    assert not any(cohomologous2(a, b, mod) for a, b in itertools.combinations(reps, 2))


def _ctx(fixture):
    ext, psi = fixture()
    cm = cmod_check(psi, ext.e)
    return ObstructionContext(ext, psi, cm.n, cm.c, cm)


def test_d4_over_c4_is_definable():
    ctx = _ctx(fixtures.d4_c4)
    rep = analyse(ctx)
    assert rep.lifts == 1 and rep.definable and rep.extensions > 0
    assert rep.split and rep.split_lift is not None and rep.consistent
    assert rep.verdicts[0].omega_class_order == 1


def test_q8_over_c4_obstruction():
    ctx = _ctx(fixtures.q8_c4)
    rep = analyse(ctx)
    assert not rep.definable and rep.extensions == 0 and rep.consistent
    v = rep.verdicts[0]
    assert v.h2_order == 2 and v.omega_class_order == 2
    ob = rep.obstructions[0]
    # coefficients: Z(G) = C4 on which Q = C2 acts by inversion
    assert len(ob.module.m) == 4 and not ob.module.is_trivial_action()


def test_lambda_is_a_homomorphism():
    for fx in (fixtures.d4_c4, fixtures.q8_c4):
        ctx = _ctx(fx)
        lam = unique_lambda(ctx)
        q, t = ctx.q, ctx.n_mod_cg
        assert all(lam[q.mul(u, v)] == t.mul(lam[u], lam[v]) for u in q for v in q)


@pytest.mark.parametrize("fixture", [fixtures.d4_c4, fixtures.q8_c4], ids=["D4", "Q8"])
def test_omega_independent_of_choices(fixture):
    ctx = _ctx(fixture)
    rng = random.Random(7)
    for lift in enumerate_lifts(ctx):
        base = obstruction_cocycle(ctx, lift)
        for _ in range(10):
            ob = obstruction_cocycle(ctx, lift, random_section(ctx.ext, rng), random_shifts(ctx, rng))
            assert cohomologous2(ob.omega, base.omega, base.module)


@pytest.mark.parametrize("fixture", [fixtures.d4_c4, fixtures.q8_c4], ids=["D4", "Q8"])
def test_exactness_at_cg_mod_g(fixture):
    ctx = _ctx(fixture)
    ob = obstruction_cocycle(ctx, enumerate_lifts(ctx)[0])
    checked, failures = restriction_exactness(ctx, ob.phis)
    assert checked > 0 and failures == []


def test_split_criterion_requires_homomorphic_section():
    # Q8 -> C2 does not split, so no section of the nontrivial class is a homomorphism
    ctx = _ctx(fixtures.q8_c4)
    section = ctx.ext.section()
    with pytest.raises(CohomologyError):
        split_criterion(ctx, section)


def test_cmod_failure_blocks_context():
    ext, psi = fixtures.cmod_failing()
    with pytest.raises(CohomologyError):
        ObstructionContext(ext, psi)
