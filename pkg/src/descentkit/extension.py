"""Finite models of 1 -> P -> E -> Q -> 1 and the 'defined over' conditions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .permgroup import (FinGroup, Group, GroupHom, PermGroup, centralizer_in_sd, normal_core,
                        normalizer_in_sd, quotient_group)


class ExtensionError(ValueError):
    pass


class ExtensionModel:
    """Ambient E with a normal subgroup P; Q = E/P with projection and section reps."""

    def __init__(self, e: Group, p: Group, name: str | None = None):
        if not p.is_subgroup_of(e):
            raise ExtensionError("P is not a subgroup of E")
        if not p.is_normal_in(e):
            raise ExtensionError("P is not normal in E")
        self.e, self.p, self.name = e, p, name
        self.q, self.proj, self.reps = quotient_group(e, p)

    def section(self) -> dict:
        """Default set-theoretic section Q -> E (label 0 goes to the identity)."""
        return {u: r for u, r in enumerate(self.reps)}

    def homomorphic_section(self) -> dict | None:
        """A section that is a homomorphism Q -> E, if the sequence splits."""
        q = self.q
        fibres = {u: [] for u in range(len(q))}
        for x in self.e.elements:
            fibres[self.proj(x)].append(x)
        for imgs in itertools.product(*(fibres[g] for g in q.gens)):
            hom = GroupHom.try_build(q, self.e, imgs)
            if hom is not None:
                return dict(hom.mapping)
        return None

    def __repr__(self) -> str:
        return f"ExtensionModel(|E|={len(self.e)}, |P|={len(self.p)}, |Q|={len(self.q)})"


@dataclass
class CoverModel:
    ext: ExtensionModel
    h: Group
    r: Group

    def __post_init__(self):
        if not self.h.is_subgroup_of(self.ext.e):
            raise ExtensionError("H is not a subgroup of E")
        if not self.r.is_subgroup_of(self.ext.p):
            raise ExtensionError("R is not a subgroup of P")


@dataclass
class DefinedOverReport:
    intersection: bool  # (1) H cap P = R
    normalizes: bool  # (2) H normalizes R
    normality: str  # (3) "checked", "violated" or "vacuous"
    regular: bool  # (4) H -> Q onto with kernel R

    @property
    def passed(self) -> bool:
        return self.intersection and self.normalizes and self.normality != "violated" and self.regular

    def lines(self) -> list[str]:
        yn = {True: "pass", False: "FAIL"}
        return [f"(1) H cap P = R: {yn[self.intersection]}",
                f"(2) H normalizes R: {yn[self.normalizes]}",
                f"(3) H normal => R normal in P: {self.normality}",
                f"(4) H maps onto Q with kernel R: {yn[self.regular]}"]


def defined_over_check(c: CoverModel) -> DefinedOverReport:
    e, p, h, r = c.ext.e, c.ext.p, c.h, c.r
    c1 = h.intersection(p).equals(r)
    c2 = all(e.conj(x, y) in r.element_set for x in h.gens for y in r.gens)
    if h.is_normal_in(e):
        c3 = "checked" if r.is_normal_in(p) else "violated"
    else:
        c3 = "vacuous"
    onto = {c.ext.proj(x) for x in h.elements} == set(range(len(c.ext.q)))
    kernel = {x for x in h.elements if c.ext.proj(x) == 0}
    c4 = onto and kernel == set(r.elements)
    return DefinedOverReport(c1, c2, c3, c4)


@dataclass
class IndexReport:
    index_eh: int
    index_pr: int

    @property
    def equal(self) -> bool:
        return self.index_eh == self.index_pr


def regularity_index_check(c: CoverModel) -> IndexReport:
    return IndexReport(len(c.ext.e) // len(c.h), len(c.ext.p) // len(c.r))


@dataclass
class ClosureReport:
    h_hat: Group
    r_hat: Group
    intersection_ok: bool
    regular_closure: bool  # H_hat R = H


def galois_closure(c: CoverModel) -> ClosureReport:
    e, p = c.ext.e, c.ext.p
    hh = normal_core(e, c.h)
    rh = normal_core(p, c.r)
    ok = hh.intersection(p).equals(rh)
    hr = hh.join(c.r)
    return ClosureReport(hh, rh, ok, hr.equals(c.h))


def monodromy_twist(psi: GroupHom, h, e: Group) -> GroupHom:
    """x -> psi(h x h^-1). Twisting by h1 then h2 equals twisting by h1 h2."""
    p = psi.source
    return GroupHom(p, psi.target, [psi(e.conj(h, x)) for x in p.gens])


@dataclass
class CModResult:
    holds: bool
    phi: dict = field(default_factory=dict)  # U -> phi_U in N, for every U in E
    failing: object = None
    n: PermGroup | None = None
    c: PermGroup | None = None
    g: PermGroup | None = None


def _search_conjugator(pairs, candidates):
    for phi in candidates:
        inv = phi.inverse()
        if all(phi * a * inv == b for a, b in pairs):
            return phi
    return None


def cmod_check(psi: GroupHom, e: Group, n: PermGroup | None = None, c: PermGroup | None = None) -> CModResult:
    """Find phi_U in N with psi(U x U^-1) = phi_U psi(x) phi_U^-1 for each U in E."""
    p = psi.source
    g = psi.image()
    n = normalizer_in_sd(g) if n is None else n
    c = centralizer_in_sd(g) if c is None else c
    reps = e.left_transversal(p)
    phi_rep = {}
    for t in reps:
        pairs = [(psi(x), psi(e.conj(t, x))) for x in p.gens]
        f = _search_conjugator(pairs, n.elements)
        if f is None:
            return CModResult(False, failing=t, n=n, c=c, g=g)
        phi_rep[t] = f
    phi = {}
    for t in reps:
        for x in p.elements:
            phi[e.mul(t, x)] = phi_rep[t] * psi(x)
    return CModResult(True, phi, None, n, c, g)


@dataclass
class AscentResult:
    h_new: Group | None
    failing_pair: tuple[int, int] | None
    checks: dict


def ascend_group(c: CoverModel, big: Group, transversal: Sequence) -> AscentResult:
    """H' = union of g_i H for a transversal g_1..g_k of E in a larger E'."""
    e, h = c.ext.e, c.h
    if not e.is_subgroup_of(big) or not e.is_normal_in(big):
        raise ExtensionError("E is not normal in the larger ambient group")
    k = len(big) // len(e)
    cosets = {frozenset(big.mul(t, x) for x in e.elements) for t in transversal}
    if len(transversal) != k or len(cosets) != k:
        raise ExtensionError("transversal does not represent the cosets of E")
    checks = {"normalizes H": all(big.conj(t, x) in h.element_set for t in transversal for x in h.gens)}
    union = {big.mul(t, x) for t in transversal for x in h.elements}
    for i, a in enumerate(transversal):
        for j, b in enumerate(transversal):
            if big.mul(a, b) not in union:
                return AscentResult(None, (i + 1, j + 1), checks)
    if not checks["normalizes H"]:
        first = next(i for i, t in enumerate(transversal)
                     if not all(big.conj(t, x) in h.element_set for x in h.gens))
        return AscentResult(None, (first + 1, first + 1), checks)
    h_new = big.subgroup_from_elements(union)
    checks["is subgroup"] = len(h_new) == len(union)
    checks["H' cap P = R"] = h_new.intersection(c.ext.p).equals(c.r)
    checks["H' cap E = H"] = h_new.intersection(e).equals(h)
    checks["index preserved"] = len(big) // len(h_new) == len(e) // len(h)
    return AscentResult(h_new, None, checks)


def induced_quotient_aut(e: Group, images: dict, n: Group) -> tuple[FinGroup, dict]:
    """Automorphism h of E (generator images) acting on E/n; returns (E/n, label map)."""
    hom = GroupHom.try_build(e, e, [images[x] for x in e.gens])
    if hom is None or not hom.is_injective():
        raise ExtensionError("map is not an automorphism")
    if not all(hom(x) in n.element_set for x in n.gens):
        raise ExtensionError("automorphism does not preserve the normal subgroup")
    q, proj, reps = quotient_group(e, n)
    out = {}
    for x in e.elements:
        a, b = proj(x), proj(hom(x))
        if out.setdefault(a, b) != b:
            raise ExtensionError("induced map is not well defined")
    return q, out
