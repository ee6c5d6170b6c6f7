import itertools
import random

import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from descentkit.named import (alternating, cyclic, dihedral, direct_product, klein, quaternion,
                              semidirect_cyclic, symmetric)
from descentkit.permgroup import (FinGroup, GroupError, GroupHom, Perm, PermGroup, all_subgroups, center,
                                  centralizer_in_sd, conjugacy_search, coset_action, extend_hom,
                                  fingroup_from_group, is_transitive, normal_core, normal_subgroups,
                                  normalizer_in_sd, quotient_group, symmetric_group, transported_coset_action)

from oracles import all_perms, perm_inv, perm_mul

SMALL = [cyclic(4), dihedral(4), klein(), symmetric(3), alternating(4), cyclic(5), dihedral(5)]


def to_sympy(g: PermGroup) -> PermutationGroup:
    return PermutationGroup([Permutation(list(p.img)) for p in g.gens])


def test_cycle_notation_round_trip():
    p = Perm.from_cycles("(1 2 3)(4 5)", 6)
    assert str(p) == "(1 2 3)(4 5)"
    assert p.order() == 6
    assert str(Perm.from_cycles("()", 3)) == "()"
    with pytest.raises(GroupError):
        Perm.from_cycles("(1 2)(2 3)", 3)
    with pytest.raises(GroupError):
        Perm.from_cycles("(1 4)", 3)


def test_product_is_right_to_left():
    a, b = Perm.from_cycles("(1 2)", 3), Perm.from_cycles("(2 3)", 3)
    # (a*b)(x) = a(b(x)): 2 -> 3 -> 3
    assert (a * b)(1) == 2


@pytest.mark.parametrize("g", [cyclic(8), dihedral(6), alternating(4), quaternion(), klein(), symmetric(4),
                               direct_product(dihedral(4), cyclic(2)), semidirect_cyclic(8, 2, 3),
                               semidirect_cyclic(3, 4, 2)], ids=lambda g: g.name or "?")
def test_orders_and_structure_against_sympy(g):
    sg = to_sympy(g)
    assert len(g) == sg.order()
    assert g.is_abelian() == sg.is_abelian
    assert is_transitive(g) == sg.is_transitive()
    assert len(center(g)) == sg.center().order()


def test_named_group_orders():
    assert [len(x) for x in (cyclic(6), dihedral(5), quaternion(), klein(), alternating(4))] == [6, 10, 8, 4, 12]
    assert len(semidirect_cyclic(8, 2, 3)) == 16
    q = quaternion()
    assert sum(1 for x in q if q.element_order(x) == 2) == 1


def _brute_normalizer(g, d, centralizer=False):
    gs = {tuple(x.img) for x in g.elements}
    out = []
    for s in all_perms(d):
        si = perm_inv(s)
        conj = {perm_mul(perm_mul(s, x), si) for x in gs}
        if centralizer:
            if all(perm_mul(perm_mul(s, x), si) == x for x in gs):
                out.append(s)
        elif conj == gs:
            out.append(s)
    return set(out)


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name or "?")
def test_normalizer_and_centralizer_by_brute_force(g):
    d = g.degree
    assert {tuple(x.img) for x in normalizer_in_sd(g)} == _brute_normalizer(g, d)
    assert {tuple(x.img) for x in centralizer_in_sd(g)} == _brute_normalizer(g, d, True)


def test_regular_representation_normalizer_is_holomorph():
    # N_{S_|G|}(G_regular) = G x| Aut(G)
    q = quaternion()
    assert len(normalizer_in_sd(q)) == 8 * 24
    assert len(centralizer_in_sd(q)) == 8


@pytest.mark.parametrize("g,subs,normals", [(symmetric(4), 30, 4), (dihedral(4), 10, 6), (quaternion(), 6, 6),
                                            (alternating(4), 10, 3), (cyclic(6), 4, 4)],
                         ids=["S4", "D4", "Q8", "A4", "C6"])
def test_subgroup_counts(g, subs, normals):
    assert len(all_subgroups(g)) == subs
    assert len(normal_subgroups(g)) == normals


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name or "?")
def test_coset_action_kernel_is_core(g):
    for h in all_subgroups(g):
        psi, reps = coset_action(g, h)
        assert len(reps) * len(h) == len(g)
        assert is_transitive(psi.image())
        core = normal_core(g, h)
        # core = intersection of all conjugates, computed directly
        inter = set(g.elements)
        for x in g.elements:
            inter &= set(h.conjugate_subgroup(x).elements)
        assert set(core.elements) == inter
        assert psi.kernel().equals(core)
        # point 0 is h: its stabilizer is h
        assert {x for x in g if psi(x)(0) == 0} == set(h.elements)


def test_coset_action_rejects_bad_transversal():
    g = symmetric(3)
    h = g.subgroup([Perm.from_cycles("(1 2)", 3)])
    with pytest.raises(GroupError):
        coset_action(g, h, [g.identity, g.identity, g.identity])


@pytest.mark.parametrize("g", [symmetric(3), dihedral(4), alternating(4)], ids=["S3", "D4", "A4"])
def test_conjugate_subgroups_give_conjugate_actions(g):
    for h in all_subgroups(g):
        psi, _ = coset_action(g, h)
        for n in g:
            psi2, _ = transported_coset_action(g, h, n)
            phi = conjugacy_search(psi, psi2)
            assert phi is not None
            assert all(psi2(x) == phi * psi(x) * phi.inverse() for x in g.gens)
            back = conjugacy_search(psi2, psi)
            assert back is not None


def test_conjugacy_search_trivial_cases():
    g = symmetric(3)
    h = g.subgroup([Perm.from_cycles("(1 2)", 3)])
    psi, _ = coset_action(g, h)
    assert conjugacy_search(psi, psi).is_identity()
    triv, _ = coset_action(g, g.subgroup([Perm.from_cycles("(1 2 3)", 3)]))
    other = GroupHom(g, triv.target, [triv.target.identity for _ in g.gens])
    assert conjugacy_search(triv, other) is None


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name or "?")
def test_quotients(g):
    for n in normal_subgroups(g):
        q, proj, reps = quotient_group(g, n)
        assert isinstance(q, FinGroup) and q.verify_axioms()
        assert len(q) * len(n) == len(g)
        for x, y in itertools.product(g.gens, repeat=2):
            assert proj(g.mul(x, y)) == q.mul(proj(x), proj(y))
        assert all(proj(x) == q.identity for x in n)


def test_quotient_requires_normal():
    g = symmetric(3)
    with pytest.raises(GroupError):
        quotient_group(g, g.subgroup([Perm.from_cycles("(1 2)", 3)]))


def test_fingroup_from_group_is_isomorphic():
    g = dihedral(4)
    f, label = fingroup_from_group(g)
    assert len(f) == 8 and f.verify_axioms()


def _all_homs(src, tgt):
    out = []
    for imgs in itertools.product(tgt.elements, repeat=len(src.gens)):
        h = GroupHom.try_build(src, tgt, imgs)
        if h is not None:
            out.append(h)
    return out


@pytest.mark.parametrize("e_name", ["D4", "Q8", "S3"])
def test_extend_hom_against_enumeration(e_name):
    e = {"D4": dihedral(4), "Q8": quaternion(), "S3": symmetric(3)}[e_name]
    tgt = symmetric_group(4)
    for p in normal_subgroups(e):
        if len(p) in (1, len(e)):
            continue
        for phi in _all_homs(p, tgt)[:12]:
            got = extend_hom(phi, e, tgt)
            brute = [h for h in _all_homs(e, tgt) if all(h(x) == phi(x) for x in p.gens)]
            assert {tuple(h(x) for x in e.gens) for h in got} == {tuple(h(x) for x in e.gens) for h in brute}


def test_hom_validation():
    c4 = cyclic(4)
    with pytest.raises(GroupError):
        GroupHom(c4, symmetric_group(3), [Perm.from_cycles("(1 2)", 3) * Perm.from_cycles("(1 3)", 3)])
    h = GroupHom(c4, cyclic(2), [cyclic(2).gens[0]])
    assert len(h.kernel()) == 2 and not h.is_injective()


@given(st.integers(0, 10_000))
def test_random_subgroup_lagrange(seed):
    rng = random.Random(seed)
    g = rng.choice(SMALL)
    gens = rng.sample(g.elements, rng.randint(1, 2))
    h = g.subgroup(gens)
    assert len(g) % len(h) == 0
    assert h.is_subgroup_of(g)
    assert len(g.left_transversal(h)) == len(g) // len(h)
