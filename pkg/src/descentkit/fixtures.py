"""Small ready-made extension models used by the CLI, the self test and the tests."""

from __future__ import annotations

from .extension import ExtensionModel
from .named import cyclic, dihedral, quaternion, quaternion_element
from .permgroup import GroupHom, Perm, PermGroup


def d4_c4():
    """E = D4 on 4 points, P = rotations, psi = the identity embedding (regular C4)."""
    e = dihedral(4)
    r = e.gens[0]
    p = e.subgroup([r], name="C4")
    psi = GroupHom(p, cyclic(4), [cyclic(4).gens[0]])
    return ExtensionModel(e, p, name="D4/C4"), psi


def q8_c4():
    """E = Q8 (regular, degree 8), P = <i>, psi: i -> (1 2 3 4)."""
    e = quaternion()
    i = quaternion_element(1, "i")
    p = e.subgroup([i], name="<i>")
    c4 = cyclic(4)
    psi = GroupHom(p, c4, [c4.gens[0]])
    return ExtensionModel(e, p, name="Q8/C4"), psi


def cmod_failing():
    """E = D4, P = {1, r^2, s, r^2 s}, psi: P -> S2 with kernel <s>; conjugation by r breaks CMod."""
    e = dihedral(4)
    r, s = e.gens
    p = e.subgroup([r * r, s], name="V")
    s2 = PermGroup([Perm([1, 0])], 2, name="S2")
    flip = Perm([1, 0])
    psi = GroupHom(p, s2, [flip, Perm([0, 1])])
    return ExtensionModel(e, p, name="D4/V"), psi
