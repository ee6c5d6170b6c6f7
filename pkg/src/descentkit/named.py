"""Named small permutation groups used by fixtures, tests and the corpus."""

from __future__ import annotations

from typing import Callable, Sequence

from .permgroup import Perm, PermGroup, symmetric_group


def cyclic(n: int) -> PermGroup:
    """Regular C_n on n points."""
    if n == 1:
        return PermGroup([], 1, name="C1")
    return PermGroup([Perm.from_cycles([list(range(1, n + 1))], n)], n, name=f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Symmetries of the n-gon (order 2n) on n points: rotation r, reflection s."""
    r = Perm.from_cycles([list(range(1, n + 1))], n)
    s = Perm([(-i) % n for i in range(n)])
    return PermGroup([r, s], n, name=f"D{n}")


def alternating(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], n, name=f"A{n}")
    gens = [Perm.from_cycles([[1, 2, k]], n) for k in range(3, n + 1)]
    return PermGroup(gens, n, name=f"A{n}")


def symmetric(n: int) -> PermGroup:
    return symmetric_group(n)


def klein() -> PermGroup:
    return PermGroup.from_cycles(["(1 2)(3 4)", "(1 3)(2 4)"], 4, name="V4")


def regular(elements: Sequence, mul: Callable, gens: Sequence, name: str | None = None) -> PermGroup:
    """Left regular representation of an abstract group given by a multiplication."""
    idx = {x: i for i, x in enumerate(elements)}
    n = len(elements)

    def left(g):
        return Perm(idx[mul(g, x)] for x in elements)

    return PermGroup([left(g) for g in gens], n, name=name)


def _quat_mul(a, b):
    # elements (sign, unit) with unit in 1, i, j, k
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    s, u = table[(a[1], b[1])]
    return (a[0] * b[0] * s, u)


QUATERNION_ELEMENTS = [(s, u) for u in "1ijk" for s in (1, -1)]


def quaternion() -> PermGroup:
    """Q8 in its regular representation on 8 points, generated by i and j."""
    return regular(QUATERNION_ELEMENTS, _quat_mul, [(1, "i"), (1, "j")], name="Q8")


def quaternion_element(sign: int, unit: str) -> Perm:
    idx = {x: n for n, x in enumerate(QUATERNION_ELEMENTS)}
    g = (sign, unit)
    return Perm(idx[_quat_mul(g, x)] for x in QUATERNION_ELEMENTS)


def direct_product(*groups: PermGroup, name: str | None = None) -> PermGroup:
    """Direct product acting on the disjoint union of the point sets."""
    total = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for x in g.gens:
            img = list(range(total))
            for i in range(g.degree):
                img[offset + i] = offset + x(i)
            gens.append(Perm(img))
        offset += g.degree
    return PermGroup(gens, total, name=name)


def embed(p: Perm, degree: int) -> Perm:
    """View a permutation as one of larger degree fixing the new points."""
    return Perm(list(p.img) + list(range(p.degree, degree)))


def semidirect_cyclic(m: int, n: int, r: int, name: str | None = None) -> PermGroup:
    """C_m x| C_n with the generator of C_n acting as a -> r a (needs r^n = 1 mod m), regular."""
    if pow(r, n, m) != 1 % m:
        raise ValueError("r must have order dividing n modulo m")
    elems = [(a, b) for b in range(n) for a in range(m)]

    def mul(x, y):
        return ((x[0] + pow(r, x[1], m) * y[0]) % m, (x[1] + y[1]) % n)

    return regular(elems, mul, [(1, 0), (0, 1)], name=name or f"C{m}x|C{n}")
