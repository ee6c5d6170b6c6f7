import random

import pytest
from hypothesis import given, strategies as st

from descentkit.words import (FreeMap, Word, WordError, abelian_quotient_matrix, apply_map, compose_maps,
                              conjugate_subgroups, conjugate_test, cyclic_reduce, equal_subgroups, image_subgroup,
                              index, is_inner, membership, reidemeister_schreier, subgroup_from_generators,
                              whole_group)

from oracles import naive_reduce, sanov, schreier_generators, word_action

RANK = 3
letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=14)
words = letters.map(lambda ls: Word(ls, RANK))
maps = st.lists(words, min_size=RANK, max_size=RANK).map(lambda ims: FreeMap(ims, RANK))


@given(letters)
def test_reduction_matches_naive(ls):
    assert Word(ls, RANK).letters == naive_reduce(ls)


@given(letters)
def test_reduction_preserves_group_element(ls):
    assert sanov(Word(ls, RANK).letters, RANK) == sanov(ls, RANK)


@given(words, words, words)
def test_group_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert a * Word.identity(RANK) == a


def test_parse_and_print():
    w = Word.parse("x1 x2^-1 x2^-1 x3^2", 3)
    assert w.letters == (1, -2, -2, 3, 3)
    assert str(w) == "x1 x2^-2 x3^2"
    assert Word.parse("x1*x1^-1", 3).is_identity()
    with pytest.raises(WordError):
        Word.parse("y1", 3)
    with pytest.raises(WordError):
        Word.parse("x4", 3)


@given(maps, words)
def test_apply_map_is_a_substitution(f, w):
    # oracle: evaluate the images in the faithful matrix representation
    imgs = [sanov(im.letters, RANK) for im in f.images]
    from oracles import I2, mm, minv
    want = I2
    for a in w.letters:
        want = mm(want, imgs[abs(a) - 1] if a > 0 else minv(imgs[abs(a) - 1]))
    assert sanov(apply_map(f, w).letters, RANK) == want


@given(maps, maps, words)
def test_compose_is_f_after_g(f, g, w):
    assert compose_maps(f, g)(w) == f(g(w))


@given(words, words)
def test_conjugate_test_finds_conjugator(a, w):
    b = w * a * w.inverse()
    c = conjugate_test(a, b)
    assert c is not None
    assert c * b * c.inverse() == a


def test_conjugate_test_rejects_non_conjugates():
    x1, x2 = Word.gen(1, 2), Word.gen(2, 2)
    assert conjugate_test(x1, x2) is None
    assert conjugate_test(x1 * x2, x1 * x1) is None


@given(words.filter(lambda w: len(w) > 0))
def test_cyclic_reduce_is_conjugate(w):
    c = cyclic_reduce(w)
    assert conjugate_test(w, c) is not None
    if len(c) > 1:
        assert c.letters[0] != -c.letters[-1]


@given(words)
def test_is_inner_recovers_conjugation(w):
    f = FreeMap.conjugation(w)
    v = is_inner(f)
    assert v is not None and FreeMap.conjugation(v) == f


def test_is_inner_rejects_outer_automorphisms():
    f = FreeMap.parse(["x1 x2", "x2", "x3"], 3)
    assert is_inner(f) is None
    g = FreeMap.parse(["x2", "x1", "x3"], 3)
    assert is_inner(g) is None


def _random_action(rng, degree, rank=RANK):
    gens = []
    for _ in range(rank):
        p = list(range(degree))
        rng.shuffle(p)
        gens.append(tuple(p))
    return gens


@pytest.mark.parametrize("seed", range(12))
def test_stabilizer_subgroups_against_permutation_oracle(seed):
    rng = random.Random(seed)
    degree = rng.randint(2, 6)
    gens = _random_action(rng, degree)
    tree, sgens = schreier_generators(gens, degree)
    g = subgroup_from_generators([Word(s, RANK) for s in sgens], RANK)
    assert index(g) == len(tree)
    for _ in range(40):
        w = Word([rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(rng.randint(0, 10))], RANK)
        assert membership(g, w) == (word_action(w.letters, gens, 0) == 0)
    free = reidemeister_schreier(g)
    # Schreier index formula
    assert len(free) == len(tree) * (RANK - 1) + 1
    assert all(membership(g, w) for w in free)
    assert equal_subgroups(subgroup_from_generators(free, RANK), g)


def test_infinite_index_and_whole_group():
    g = subgroup_from_generators([Word.parse("x1^2", 2)], 2)
    assert index(g) == float("inf")
    assert index(whole_group(2)) == 1
    assert equal_subgroups(subgroup_from_generators([Word.gen(1, 2), Word.parse("x1 x2", 2)], 2), whole_group(2))


def test_image_subgroup_and_conjugacy():
    f = FreeMap.parse(["x2", "x1"], 2)
    # index 2: words with even x1-exponent sum
    h = subgroup_from_generators([Word.parse(t, 2) for t in ("x1^2", "x2", "x1 x2 x1^-1")], 2)
    assert index(h) == 2
    img = image_subgroup(f, h)
    assert membership(img, Word.parse("x2^2", 2)) and membership(img, Word.parse("x1", 2))
    assert not membership(img, Word.parse("x2", 2))
    # index 3 stabilizer and a conjugate of it
    # point stabilizer of F_2 -> S_3, x1 -> (0 1), x2 -> (0 1 2): not normal
    _, sg = schreier_generators([(1, 0, 2), (1, 2, 0)], 3)
    kgens = [Word(w, 2) for w in sg]
    k = subgroup_from_generators(kgens, 2)
    assert index(k) == 3
    c = Word.parse("x1 x2", 2)
    k2 = subgroup_from_generators([c * w * c.inverse() for w in kgens], 2)
    assert not equal_subgroups(k, k2)
    w = conjugate_subgroups(k, k2)
    assert w is not None
    assert all(membership(k2, w * g * w.inverse()) for g in kgens)
    assert conjugate_subgroups(k, h) is None


def test_abelian_quotient_of_parity_kernel():
    # R2 = words of even length in F_3; relators: squares of generators and (x1 x2 x3)^-2
    sub = subgroup_from_generators([Word.parse(t, 3) for t in
                                    ("x2 x1^-1", "x3 x1^-1", "x1^2", "x1 x2", "x1 x3")], 3)
    rel = [Word.parse(t, 3) for t in ("x1^2", "x2^2", "x3^2")] + [Word.parse("x1 x2 x3", 3) ** -2]
    qa = abelian_quotient_matrix(sub, rel, FreeMap.identity(3))
    assert qa.torsion == [] and qa.free_rank == 2
    basis = [Word.parse("x2 x1", 3), Word.parse("x3 x1", 3)]
    assert qa.in_basis(basis) == [[1, 0], [0, 1]]
