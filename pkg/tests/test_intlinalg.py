from hypothesis import given, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from descentkit import intlinalg as il

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices())
def test_smith_form_is_a_valid_decomposition(a):
    d, u, v = il.smith_normal_form(a)
    assert il.matmul(il.matmul(u, a), v) == d
    assert abs(il.det(u)) == 1 and abs(il.det(v)) == 1
    diag = il.diagonal(d)
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(matrices())
def test_smith_invariants_match_sympy(a):
    ours = [x for x in il.diagonal(il.smith_normal_form(a)[0]) if x]
    theirs = sympy_snf(Matrix(a))
    ref = [abs(theirs[i, i]) for i in range(min(theirs.shape)) if theirs[i, i] != 0]
    assert sorted(ours) == sorted(ref)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_sympy(a):
    assert il.det(a) == Matrix(a).det()


@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_in_lattice(cols, x):
    cols = [c + [0] * (3 - len(c)) for c in cols]
    target = [sum(xi * c[r] for xi, c in zip(x, cols)) for r in range(3)]
    sol = il.solve_in_lattice(cols, target)
    assert sol is not None
    assert [sum(s * c[r] for s, c in zip(sol, cols)) for r in range(3)] == target


def test_solve_in_lattice_detects_non_members():
    assert il.solve_in_lattice([[2, 0], [0, 2]], [1, 0]) is None
    assert il.solve_in_lattice([], [0, 0]) == []


def test_unimodular_inverse():
    a = [[2, 1], [1, 1]]
    assert il.matmul(a, il.inverse_unimodular(a)) == il.identity(2)
