"""Cohomology of finite groups by cochain enumeration, and the descent obstruction.

Coefficient groups are finite abelian groups given as Group objects and written
multiplicatively in code (so "zero" is the identity). Cochains are normalized
and stored as dicts keyed by elements of Q (or pairs of them).

Conventions for the obstruction: phi_U in N conjugates psi by U, the action of
Q on Z(G) is z -> phi_u z phi_u^-1, and the definability test asks for a
1-cocycle theta with delta(theta) * Omega a coboundary (the inverse form
Omega^-1 in im delta is the same statement).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .extension import CModResult, ExtensionModel, cmod_check
from .permgroup import (BoundExceeded, FinGroup, Group, GroupHom, PermGroup, extend_hom,
                        quotient_group)

ENUMERATION_BOUND = 2 ** 24


class CohomologyError(ValueError):
    pass


class GModule:
    """Finite abelian group m with an action of q by automorphisms."""

    def __init__(self, q: Group, m: Group, act: Callable | None = None, name: str | None = None):
        self.q, self.m, self.name = q, m, name
        self.act = act if act is not None else (lambda u, x: x)
        if not m.is_abelian():
            raise CohomologyError("coefficient group must be abelian")
        self._verify()

    def _verify(self):
        q, m = self.q, self.m
        for x in m.elements:
            if self.act(q.identity, x) != x:
                raise CohomologyError("identity does not act trivially")
        for u in q.elements:
            for x in m.elements:
                for y in m.gens:
                    if self.act(u, m.mul(x, y)) != m.mul(self.act(u, x), self.act(u, y)):
                        raise CohomologyError("action is not by homomorphisms")
            for v in q.gens:
                for x in m.gens:
                    if self.act(q.mul(u, v), x) != self.act(u, self.act(v, x)):
                        raise CohomologyError("action is not associative")

    def is_trivial_action(self) -> bool:
        return all(self.act(u, x) == x for u in self.q.gens for x in self.m.gens)


def trivial_module(q: Group, m: Group) -> GModule:
    return GModule(q, m)


def cyclic_table(n: int) -> FinGroup:
    return FinGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z/{n}")


# ---------------------------------------------------------------------------
# cochains


def zero_cochain1(mod: GModule) -> dict:
    return {u: mod.m.identity for u in mod.q.elements}


def zero_cochain2(mod: GModule) -> dict:
    return {(u, v): mod.m.identity for u in mod.q.elements for v in mod.q.elements}


def is_normalized1(c: dict, mod: GModule) -> bool:
    return c[mod.q.identity] == mod.m.identity


def is_normalized2(c: dict, mod: GModule) -> bool:
    e, z = mod.q.identity, mod.m.identity
    return all(c[(e, u)] == z and c[(u, e)] == z for u in mod.q.elements)


def is_cocycle1(c: dict, mod: GModule) -> bool:
    q, m = mod.q, mod.m
    return all(c[q.mul(u, v)] == m.mul(c[u], mod.act(u, c[v])) for u in q.elements for v in q.elements)


def is_cocycle2(c: dict, mod: GModule) -> bool:
    q, m = mod.q, mod.m
    for u in q.elements:
        for v in q.elements:
            uv = q.mul(u, v)
            for w in q.elements:
                lhs = m.mul(c[(u, v)], c[(uv, w)])
                rhs = m.mul(mod.act(u, c[(v, w)]), c[(u, q.mul(v, w))])
                if lhs != rhs:
                    return False
    return True


def coboundary1(f: dict, mod: GModule) -> dict:
    """(df)(u, v) = f(u) * u.f(v) * f(uv)^-1 for a 1-cochain f."""
    q, m = mod.q, mod.m
    return {(u, v): m.mul(m.mul(f[u], mod.act(u, f[v])), m.inv(f[q.mul(u, v)]))
            for u in q.elements for v in q.elements}


def principal(x, mod: GModule) -> dict:
    """u -> u.x * x^-1, the coboundary of the 0-cochain x."""
    return {u: mod.m.mul(mod.act(u, x), mod.m.inv(x)) for u in mod.q.elements}


def _check_bound(size: int, bound: int):
    if size > bound:
        raise BoundExceeded(f"enumeration of {size} cochains exceeds bound {bound}")


def _normalized_1cochains(mod: GModule):
    q, m = mod.q, mod.m
    rest = [u for u in q.elements if u != q.identity]
    for vals in itertools.product(m.elements, repeat=len(rest)):
        f = {q.identity: m.identity}
        f.update(zip(rest, vals))
        yield f


def _key2(c: dict, mod: GModule) -> tuple:
    return tuple(mod.m.index_of(c[(u, v)]) for u in mod.q.elements for v in mod.q.elements)


def _key1(c: dict, mod: GModule) -> tuple:
    return tuple(mod.m.index_of(c[u]) for u in mod.q.elements)


def coboundaries2(mod: GModule, bound: int = ENUMERATION_BOUND) -> set[tuple]:
    _check_bound(len(mod.m) ** (len(mod.q) - 1), bound)
    return {_key2(coboundary1(f, mod), mod) for f in _normalized_1cochains(mod)}


def cocycles2(mod: GModule, bound: int = ENUMERATION_BOUND) -> list[dict]:
    """All normalized 2-cocycles, by backtracking over the cochain entries."""
    q, m = mod.q, mod.m
    rest = [u for u in q.elements if u != q.identity]
    _check_bound(len(m) ** (len(rest) ** 2), bound)
    slots = [(u, v) for u in rest for v in rest]
    pos = {s: i for i, s in enumerate(slots)}
    # each identity involves slots; check it once the last of them is assigned
    checks: dict[int, list] = {}
    for u, v, w in itertools.product(rest, repeat=3):
        uv, vw = q.mul(u, v), q.mul(v, w)
        needed = [(u, v), (uv, w), (v, w), (u, vw)]
        last = max(pos[s] for s in needed if s in pos)
        checks.setdefault(last, []).append((u, v, w, uv, vw))
    c = {(a, b): m.identity for a in q.elements for b in q.elements}
    out = []

    def ok(i):
        for u, v, w, uv, vw in checks.get(i, ()):
            if m.mul(c[(u, v)], c[(uv, w)]) != m.mul(mod.act(u, c[(v, w)]), c[(u, vw)]):
                return False
        return True

    def rec(i):
        if i == len(slots):
            out.append(dict(c))
            return
        for x in m.elements:
            c[slots[i]] = x
            if ok(i):
                rec(i + 1)
        c[slots[i]] = m.identity

    rec(0)
    return out


def cocycles1(mod: GModule, bound: int = ENUMERATION_BOUND) -> list[dict]:
    _check_bound(len(mod.m) ** (len(mod.q) - 1), bound)
    return [f for f in _normalized_1cochains(mod) if is_cocycle1(f, mod)]


@dataclass
class CohomologyGroup:
    degree: int
    representatives: list[dict]
    order: int
    cocycles: int
    coboundaries: int


def h1(mod: GModule, bound: int = ENUMERATION_BOUND) -> CohomologyGroup:
    z = cocycles1(mod, bound)
    b = {_key1(principal(x, mod), mod) for x in mod.m.elements}
    classes: dict[tuple, dict] = {}
    for f in z:
        key = min(_key1({u: mod.m.mul(f[u], mod.m.elements[bb[i]]) for i, u in enumerate(mod.q.elements)}, mod)
                  for bb in b)
        classes.setdefault(key, f)
    reps = [classes[k] for k in sorted(classes)]
    return CohomologyGroup(1, reps, len(z) // len(b), len(z), len(b))


def h2(mod: GModule, bound: int = ENUMERATION_BOUND) -> CohomologyGroup:
    z = cocycles2(mod, bound)
    b = coboundaries2(mod, bound)
    elems = mod.m.elements
    seen = set()
    reps = []
    for c in sorted(z, key=lambda c: _key2(c, mod)):
        k = _key2(c, mod)
        if k in seen:
            continue
        # mark the whole coset c * B
        for bb in b:
            seen.add(tuple(mod.m.index_of(mod.m.mul(elems[x], elems[y])) for x, y in zip(k, bb)))
        reps.append(c)
    return CohomologyGroup(2, reps, len(z) // len(b), len(z), len(b))


def is_coboundary2(c: dict, mod: GModule, bset: set | None = None, bound: int = ENUMERATION_BOUND) -> bool:
    if bset is not None:
        return _key2(c, mod) in bset
    q, m = mod.q, mod.m
    rest = [u for u in q.elements if u != q.identity]
    if len(m) ** len(rest) <= bound:
        return _key2(c, mod) in coboundaries2(mod, bound)
    raise BoundExceeded("coboundary test exceeds enumeration bound")


def multiply2(a: dict, b: dict, mod: GModule) -> dict:
    return {k: mod.m.mul(a[k], b[k]) for k in a}


def power2(a: dict, k: int, mod: GModule) -> dict:
    return {key: mod.m.power(x, k) for key, x in a.items()}


def class_order2(c: dict, mod: GModule, bset: set | None = None) -> int:
    """Order of the class of c in H^2."""
    bset = coboundaries2(mod) if bset is None else bset
    k, cur = 1, c
    while _key2(cur, mod) not in bset:
        cur = multiply2(cur, c, mod)
        k += 1
        if k > len(mod.m):
            raise CohomologyError("class order exceeds exponent of the module")
    return k


def cohomologous2(a: dict, b: dict, mod: GModule, bset: set | None = None) -> bool:
    diff = {k: mod.m.mul(a[k], mod.m.inv(b[k])) for k in a}
    bset = coboundaries2(mod) if bset is None else bset
    return _key2(diff, mod) in bset


# ---------------------------------------------------------------------------
# obstruction pipeline


class ObstructionContext:
    """Everything the obstruction needs: E, P, Q, psi, N, C, G, Z(G) and CMod data."""

    def __init__(self, ext: ExtensionModel, psi: GroupHom, n: PermGroup | None = None,
                 c: PermGroup | None = None, cmod: CModResult | None = None):
        self.ext, self.psi = ext, psi
        cmod = cmod_check(psi, ext.e, n, c) if cmod is None else cmod
        if not cmod.holds:
            raise CohomologyError(f"CMod fails at U = {cmod.failing}")
        self.cmod = cmod
        self.n, self.c, self.g = cmod.n, cmod.c, cmod.g
        self.z = self.g.intersection(self.c)
        self.cg = self.c.join(self.g)
        self.q = ext.q
        self.n_mod_g, self.proj_g, self.reps_g = quotient_group(self.n, self.g)
        self.n_mod_cg, self.proj_cg, _ = quotient_group(self.n, self.cg)
        # N/G -> N/CG
        self.g_to_cg = {i: self.proj_cg(r) for i, r in enumerate(self.reps_g)}
        self._c_cosets = {}

    def phi_bar(self, x):
        """phi_U for U in E (a representative in N, well defined mod C)."""
        return self.cmod.phi[x]

    def same_mod_c(self, a, b) -> bool:
        return a.inverse() * b in self.c.element_set


def unique_lambda(ctx: ObstructionContext) -> dict:
    """lambda: Q -> N/CG induced by phi-bar (checked constant on P-cosets and homomorphic)."""
    ext = ctx.ext
    lam: dict[int, int] = {}
    for x in ext.e.elements:
        u = ext.proj(x)
        val = ctx.proj_cg(ctx.phi_bar(x))
        if lam.setdefault(u, val) != val:
            raise CohomologyError("phi-bar is not constant modulo CG on P-cosets")
    q, t = ctx.q, ctx.n_mod_cg
    for u in q.elements:
        for v in q.elements:
            if lam[q.mul(u, v)] != t.mul(lam[u], lam[v]):
                raise CohomologyError("lambda is not a homomorphism")
    return lam


def enumerate_lifts(ctx: ObstructionContext, lam: dict | None = None) -> list[dict]:
    """All homomorphisms Lambda: Q -> N/G whose image in N/CG is lambda."""
    lam = unique_lambda(ctx) if lam is None else lam
    q, ng = ctx.q, ctx.n_mod_g
    cands = [[a for a in ng.elements if ctx.g_to_cg[a] == lam[u]] for u in q.gens]
    out = []
    for imgs in itertools.product(*cands):
        hom = GroupHom.try_build(q, ng, imgs)
        if hom is not None:
            out.append(dict(hom.mapping))
    return out


def z_module(ctx: ObstructionContext, phis: dict) -> GModule:
    """Z(G) with Q acting by conjugation through phi_u."""
    zq = _as_fingroup(ctx.z)
    elems = ctx.z.elements
    idx = {x: i for i, x in enumerate(elems)}

    def act(u, i):
        f = phis[u]
        return idx[f * elems[i] * f.inverse()]

    return GModule(ctx.q, zq, act, name="Z(G)")


def _as_fingroup(g: Group) -> FinGroup:
    elems = g.elements
    idx = {x: i for i, x in enumerate(elems)}
    return FinGroup([[idx[g.mul(a, b)] for b in elems] for a in elems], labels=[str(x) for x in elems])


def choose_phis(ctx: ObstructionContext, lift: dict, section: dict, shifts: dict | None = None) -> dict:
    """phi_u in Lambda(u) G intersect phi-bar(s(u)) C, unique modulo Z(G)."""
    phis = {}
    for u in ctx.q.elements:
        target = ctx.phi_bar(section[u])
        found = [f for f in ctx.n.elements
                 if ctx.proj_g(f) == lift[u] and ctx.same_mod_c(target, f)]
        if not found:
            raise CohomologyError(f"no phi_u for u = {ctx.q.label(u)}: Lambda and phi-bar disagree")
        if len(found) != len(ctx.z):
            raise CohomologyError("phi_u is not unique modulo Z(G)")
        f = found[0] if u != ctx.q.identity else ctx.n.identity
        if u == ctx.q.identity and f not in found:
            raise CohomologyError("Lambda(1) is not trivial")
        if shifts and u != ctx.q.identity:
            f = f * shifts[u]
        phis[u] = f
    return phis


@dataclass
class Obstruction:
    omega: dict
    module: GModule
    phis: dict
    section: dict
    lift: dict


def obstruction_cocycle(ctx: ObstructionContext, lift: dict, section: dict | None = None,
                        shifts: dict | None = None) -> Obstruction:
    """Omega(u,v) = phi_u phi_v phi_uv^-1 psi(s(u) s(v) s(uv)^-1)^-1, valued in Z(G)."""
    ext, q = ctx.ext, ctx.q
    section = ext.section() if section is None else section
    if section[q.identity] != ext.e.identity:
        raise CohomologyError("section must send the identity to the identity")
    phis = choose_phis(ctx, lift, section, shifts)
    mod = z_module(ctx, phis)
    zidx = {x: i for i, x in enumerate(ctx.z.elements)}
    e = ext.e
    omega = {}
    for u in q.elements:
        for v in q.elements:
            uv = q.mul(u, v)
            w = e.mul(e.mul(section[u], section[v]), e.inv(section[uv]))
            val = phis[u] * phis[v] * phis[uv].inverse() * ctx.psi(w).inverse()
            if val not in zidx:
                raise CohomologyError("Omega escapes Z(G): inconsistent CMod data")
            omega[(u, v)] = zidx[val]
    if not is_cocycle2(omega, mod):
        raise CohomologyError("Omega is not a 2-cocycle")
    return Obstruction(omega, mod, phis, section, lift)


def random_section(ext: ExtensionModel, rng: random.Random) -> dict:
    s = {0: ext.e.identity}
    for u in range(1, len(ext.q)):
        s[u] = ext.e.mul(ext.reps[u], rng.choice(ext.p.elements))
    return s


def random_shifts(ctx: ObstructionContext, rng: random.Random) -> dict:
    return {u: rng.choice(ctx.z.elements) for u in ctx.q.elements}


def _c_mod_z_reps(ctx: ObstructionContext) -> list:
    reps, seen = [], set()
    for x in ctx.c.elements:
        if x in seen:
            continue
        reps.append(x)
        seen.update(x * z for z in ctx.z.elements)
    return reps


def delta_theta(ctx: ObstructionContext, theta_lift: dict, phis: dict) -> dict | None:
    """delta of a lift Q -> C: theta(u) (u.theta(v)) theta(uv)^-1, or None if it leaves Z(G)."""
    q = ctx.q
    zidx = {x: i for i, x in enumerate(ctx.z.elements)}
    out = {}
    for u in q.elements:
        f = phis[u]
        finv = f.inverse()
        for v in q.elements:
            val = theta_lift[u] * f * theta_lift[v] * finv * theta_lift[q.mul(u, v)].inverse()
            if val not in zidx:
                return None
            out[(u, v)] = zidx[val]
    return out


def theta_cocycles(ctx: ObstructionContext, phis: dict, bound: int = ENUMERATION_BOUND) -> list[tuple[dict, dict]]:
    """1-cocycles Q -> CG/G (= C/Z(G)) as lifts to C, with their delta in Z(G)."""
    q = ctx.q
    reps = _c_mod_z_reps(ctx)
    rest = [u for u in q.elements if u != q.identity]
    _check_bound(len(reps) ** len(rest), bound)
    out = []
    for vals in itertools.product(reps, repeat=len(rest)):
        lift = {q.identity: ctx.c.identity}
        lift.update(zip(rest, vals))
        d = delta_theta(ctx, lift, phis)
        if d is not None:
            out.append((lift, d))
    return out


def restriction_exactness(ctx: ObstructionContext, phis: dict, bound: int = ENUMERATION_BOUND) -> tuple[int, list]:
    """delta_1 kills the image of H^1(Q, C) in H^1(Q, CG/G).

    Every 1-cocycle Q -> C is reduced mod Z(G), lifted back through the fixed
    representatives of C/Z(G), and its delta is tested against the coboundaries
    of Z(G). Returns (cocycles checked, failures).
    """
    q = ctx.q
    reps = _c_mod_z_reps(ctx)
    rep_of = {r * z: r for r in reps for z in ctx.z.elements}
    rest = [u for u in q.elements if u != q.identity]
    _check_bound(len(ctx.c) ** len(rest), bound)
    mod = z_module(ctx, phis)
    bset = coboundaries2(mod)
    zero = _key2(zero_cochain2(mod), mod)
    checked, failures = 0, []
    for vals in itertools.product(ctx.c.elements, repeat=len(rest)):
        theta = {q.identity: ctx.c.identity}
        theta.update(zip(rest, vals))
        d = delta_theta(ctx, theta, phis)
        if d is None or _key2(d, mod) != zero:
            continue  # not a cocycle with values in C
        checked += 1
        lifted = {u: rep_of[x] for u, x in theta.items()}
        d2 = delta_theta(ctx, lifted, phis)
        if d2 is None or _key2(d2, mod) not in bset:
            failures.append(theta)
    return checked, failures


@dataclass
class Verdict:
    definable: bool
    theta: dict | None
    h2_order: int | None
    omega_class_order: int
    thetas_scanned: int
    notes: list[str] = field(default_factory=list)


def definability_test(ctx: ObstructionContext, ob: Obstruction) -> Verdict:
    """True iff delta(theta) * Omega is a coboundary for some 1-cocycle theta."""
    mod = ob.module
    bset = coboundaries2(mod)
    thetas = theta_cocycles(ctx, ob.phis)
    order = class_order2(ob.omega, mod, bset)
    try:
        h2o = len(cocycles2(mod)) // len(bset)
    except BoundExceeded:
        h2o = None
    for lift, d in thetas:
        if _key2(multiply2(d, ob.omega, mod), mod) in bset:
            return Verdict(True, lift, h2o, order, len(thetas))
    return Verdict(False, None, h2o, order, len(thetas))


def split_criterion(ctx: ObstructionContext, section: dict) -> dict | None:
    """Homomorphism phi: Q -> N with phi(u) = phi-bar(s(u)) mod C, or None."""
    q, e = ctx.q, ctx.ext.e
    for u in q.elements:
        for v in q.elements:
            if section[q.mul(u, v)] != e.mul(section[u], section[v]):
                raise CohomologyError("section is not a homomorphism")
    cands = []
    for u in q.gens:
        t = ctx.phi_bar(section[u])
        cands.append([t * c for c in ctx.c.elements])
    for imgs in itertools.product(*cands):
        hom = GroupHom.try_build(q, ctx.n, imgs)
        if hom is None:
            continue
        if all(ctx.same_mod_c(ctx.phi_bar(section[u]), hom(u)) for u in q.elements):
            return dict(hom.mapping)
    return None


@dataclass
class ObstructionReport:
    lifts: int
    lambda_trivial: bool
    cg_mod_g: int
    z_order: int
    verdicts: list[Verdict]
    obstructions: list[Obstruction]
    definable: bool
    extensions: int
    split: bool | None
    split_lift: dict | None

    @property
    def consistent(self) -> bool:
        ok = self.definable == (self.extensions > 0)
        if self.split:
            ok = ok and (self.split_lift is not None) == self.definable
        return ok


def analyse(ctx: ObstructionContext, run_split: bool = True, extension_limit: int | None = 1) -> ObstructionReport:
    lam = unique_lambda(ctx)
    lifts = enumerate_lifts(ctx, lam)
    obs, verdicts = [], []
    for lift in lifts:
        ob = obstruction_cocycle(ctx, lift)
        obs.append(ob)
        verdicts.append(definability_test(ctx, ob))
    definable = any(v.definable for v in verdicts)
    ext = extend_hom(ctx.psi, ctx.ext.e, ctx.n, limit=extension_limit)
    split, lift = None, None
    if run_split:
        sec = ctx.ext.homomorphic_section()
        if sec is not None:
            split = True
            lift = split_criterion(ctx, sec)
        else:
            split = False
    return ObstructionReport(
        lifts=len(lifts),
        lambda_trivial=all(x == 0 for x in lam.values()),
        cg_mod_g=len(ctx.cg) // len(ctx.g),
        z_order=len(ctx.z),
        verdicts=verdicts,
        obstructions=obs,
        definable=definable,
        extensions=len(ext),
        split=split,
        split_lift=lift,
    )
