"""Small permutation groups and abstract finite groups given by tables.

Points are 0-based internally; the text syntax for permutations uses
1-based cycle notation, e.g. ``(1 2 3)(4 5)`` and ``()`` for the identity.
A product ``p * q`` is function composition: ``q`` is applied first.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from typing import Callable, Hashable, Iterable, Sequence

DEFAULT_ORDER_BOUND = 10080
SD_SCAN_DEGREE_BOUND = 8


class GroupError(ValueError):
    pass


class BoundExceeded(GroupError):
    pass


# ---------------------------------------------------------------------------
# permutations


class Perm:
    __slots__ = ("img", "_hash")

    def __init__(self, img: Iterable[int]):
        self.img = tuple(img)
        self._hash = hash(self.img)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: str | Sequence[Sequence[int]], degree: int) -> "Perm":
        """Build from 1-based cycles, either text ``(1 2)(3 4)`` or nested lists."""
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for p in cyc:
                if not 1 <= p <= degree:
                    raise GroupError(f"point {p} outside 1..{degree}")
                if p in seen:
                    raise GroupError(f"point {p} repeated in cycle notation")
                seen.add(p)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.img)

    def __call__(self, i: int) -> int:
        return self.img[i]

    def __mul__(self, other: "Perm") -> "Perm":
        img = self.img
        return Perm(img[j] for j in other.img)

    def inverse(self) -> "Perm":
        inv = [0] * len(self.img)
        for i, j in enumerate(self.img):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else self.inverse()
        result = Perm.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.img))

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p = p * self
            k += 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(len(self.img)):
            if start in seen or self.img[start] == start:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i + 1)
                i = self.img[i]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.img == other.img

    def __lt__(self, other: "Perm") -> bool:
        return self.img < other.img

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    __repr__ = __str__


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    text = text.strip()
    if not text:
        raise GroupError("empty permutation text")
    pos, cycles = 0, []
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise GroupError(f"malformed cycle notation near column {pos + 1}: {text!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            cycles.append([int(tok) for tok in body])
        except ValueError:
            raise GroupError(f"non-integer point in cycle {m.group(0)!r}") from None
        pos = m.end()
    if text[pos:].strip():
        raise GroupError(f"malformed cycle notation near column {pos + 1}: {text!r}")
    return [c for c in cycles if c]


# ---------------------------------------------------------------------------
# groups


def bfs_closure(gens: Sequence, identity, mul: Callable, bound: int) -> list:
    """Breadth-first closure; ties broken by generator order."""
    elements = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > bound:
                    raise BoundExceeded(f"group order exceeds bound {bound}")
                queue.append(y)
    return elements


class Group:
    """A finite group with an explicit element closure.

    Subclasses provide ``mul``, ``inv``, ``identity`` and ``_spawn`` (build a
    group of the same kind on other generators).
    """

    bound = DEFAULT_ORDER_BOUND

    def __init__(self, gens: Sequence, name: str | None = None):
        self.gens = tuple(gens)
        self.name = name
        self._elements: list | None = None
        self._set: frozenset | None = None
        self._index: dict | None = None

    # abstract ----------------------------------------------------------
    identity: Hashable

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def _spawn(self, gens: Sequence, name: str | None = None) -> "Group":
        raise NotImplementedError

    # closure -----------------------------------------------------------
    @property
    def elements(self) -> list:
        if self._elements is None:
            self._elements = bfs_closure(self.gens, self.identity, self.mul, self.bound)
        return self._elements

    @property
    def element_set(self) -> frozenset:
        if self._set is None:
            self._set = frozenset(self.elements)
        return self._set

    def index_of(self, x) -> int:
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.elements)}
        return self._index[x]

    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def power(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        out = self.identity
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def element_order(self, x) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    def conj(self, g, x):
        """g x g^-1"""
        return self.mul(self.mul(g, x), self.inv(g))

    # subgroups ---------------------------------------------------------
    def subgroup(self, gens: Iterable, name: str | None = None) -> "Group":
        gens = [g for g in gens if g != self.identity]
        return self._spawn(gens, name)

    def subgroup_from_elements(self, elems: Iterable, name: str | None = None) -> "Group":
        """Subgroup generated by ``elems`` with a small greedy generating set."""
        elems = sorted(set(elems), key=self._sort_key)
        gens: list = []
        current = {self.identity}
        for x in elems:
            if x not in current:
                gens.append(x)
                current = set(bfs_closure(gens, self.identity, self.mul, self.bound))
        return self._spawn(gens, name)

    def _sort_key(self, x):
        try:
            return (0, self.index_of(x))
        except KeyError:
            return (1, x)

    def trivial_subgroup(self) -> "Group":
        return self._spawn([])

    def is_subgroup_of(self, other: "Group") -> bool:
        return all(g in other for g in self.gens)

    def equals(self, other: "Group") -> bool:
        return self.element_set == other.element_set

    def is_normal_in(self, ambient: "Group") -> bool:
        return all(ambient.conj(g, h) in self for g in ambient.gens for h in self.gens)

    def conjugate_subgroup(self, g) -> "Group":
        return self._spawn([self.conj(g, h) for h in self.gens])

    def intersection(self, other: "Group") -> "Group":
        return self.subgroup_from_elements(x for x in self.elements if x in other)

    def join(self, other: "Group") -> "Group":
        return self._spawn(list(self.gens) + list(other.gens))

    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a)
                   for a, b in itertools.combinations(self.gens, 2))

    def left_coset(self, g, sub: "Group") -> frozenset:
        return frozenset(self.mul(g, h) for h in sub.elements)

    def left_transversal(self, sub: "Group") -> list:
        """Coset representatives in closure order; the first is the identity."""
        reps, covered = [], set()
        for g in self.elements:
            if g not in covered:
                reps.append(g)
                covered.update(self.mul(g, h) for h in sub.elements)
        return reps

    def index(self, sub: "Group") -> int:
        return len(self) // len(sub)

    def __repr__(self) -> str:
        label = self.name or type(self).__name__
        return f"<{label} of order {len(self)}>" if self._elements is not None else f"<{label}>"


class PermGroup(Group):
    def __init__(self, gens: Iterable[Perm], degree: int | None = None, name: str | None = None,
                 bound: int = DEFAULT_ORDER_BOUND):
        gens = list(gens)
        if degree is None:
            if not gens:
                raise GroupError("degree required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise GroupError("generator degree mismatch")
        self.degree = degree
        self.identity = Perm.identity(degree)
        self.bound = bound
        super().__init__([g for g in gens if not g.is_identity()], name)

    @classmethod
    def from_cycles(cls, cycles: Iterable[str], degree: int, name: str | None = None) -> "PermGroup":
        return cls([Perm.from_cycles(c, degree) for c in cycles], degree, name)

    def mul(self, a: Perm, b: Perm) -> Perm:
        return a * b

    def inv(self, a: Perm) -> Perm:
        return a.inverse()

    def _spawn(self, gens, name=None) -> "PermGroup":
        return PermGroup(gens, self.degree, name, self.bound)

    def orbit(self, point: int) -> list[int]:
        orb, queue = [point], deque([point])
        seen = {point}
        while queue:
            p = queue.popleft()
            for g in self.gens:
                q = g(p)
                if q not in seen:
                    seen.add(q)
                    orb.append(q)
                    queue.append(q)
        return orb

    def stabilizer(self, point: int) -> "PermGroup":
        return self.subgroup_from_elements(g for g in self.elements if g(point) == point)


class FinGroup(Group):
    """Abstract group on labels 0..n-1 with a multiplication table; 0 is the identity."""

    def __init__(self, table: Sequence[Sequence[int]], gens: Iterable[int] | None = None,
                 labels: Sequence[str] | None = None, name: str | None = None):
        self.table = tuple(tuple(row) for row in table)
        n = len(self.table)
        if any(len(row) != n for row in self.table):
            raise GroupError("multiplication table must be square")
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        self.identity = 0
        self._inverses = None
        if gens is None:
            gens = _table_generators(self.table)
        super().__init__([g for g in gens if g != 0], name)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        if self._inverses is None:
            inv = [0] * len(self.table)
            for x, row in enumerate(self.table):
                inv[x] = row.index(0)
            self._inverses = inv
        return self._inverses[a]

    def _spawn(self, gens, name=None) -> "FinGroup":
        g = FinGroup.__new__(FinGroup)
        g.table, g.labels, g.identity = self.table, self.labels, 0
        g._inverses = self._inverses
        Group.__init__(g, [x for x in gens if x != 0], name)
        return g

    def label(self, x: int) -> str:
        return self.labels[x]

    def verify_axioms(self) -> bool:
        n = len(self.table)
        r = range(n)
        if any(self.table[0][x] != x or self.table[x][0] != x for x in r):
            return False
        if any(sorted(row) != list(r) for row in self.table):
            return False
        return all(self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]]
                   for a in r for b in r for c in r)


def _table_generators(table) -> list[int]:
    n = len(table)
    gens: list[int] = []
    current = {0}
    for x in range(1, n):
        if x not in current:
            gens.append(x)
            current = set(bfs_closure(gens, 0, lambda a, b: table[a][b], n + 1))
    return gens


def fingroup_from_group(group: Group, label: Callable | None = None) -> tuple[FinGroup, dict]:
    """Tabulate a group; returns the table group and the element -> label map."""
    elems = group.elements
    idx = {x: i for i, x in enumerate(elems)}
    table = [[idx[group.mul(a, b)] for b in elems] for a in elems]
    labels = [label(x) if label else str(x) for x in elems]
    fg = FinGroup(table, [idx[g] for g in group.gens], labels, group.name)
    return fg, idx


# ---------------------------------------------------------------------------
# homomorphisms


class GroupHom:
    """Homomorphism determined by images of the source generators.

    The full element map is built breadth-first and checked on every
    (element, generator) pair, which verifies all relations of the source.
    """

    def __init__(self, source: Group, target: Group, images: Sequence, name: str | None = None):
        images = tuple(images)
        if len(images) != len(source.gens):
            raise GroupError("need one image per source generator")
        self.source, self.target, self.images, self.name = source, target, images, name
        mapping = {source.identity: target.identity}
        queue = deque([source.identity])
        while queue:
            x = queue.popleft()
            fx = mapping[x]
            for g, fg in zip(source.gens, images):
                y = source.mul(x, g)
                fy = target.mul(fx, fg)
                if y in mapping:
                    if mapping[y] != fy:
                        raise GroupError("generator images do not define a homomorphism")
                else:
                    mapping[y] = fy
                    queue.append(y)
        self.mapping = mapping

    @classmethod
    def try_build(cls, source, target, images, name=None) -> "GroupHom | None":
        try:
            return cls(source, target, images, name)
        except GroupError:
            return None

    @classmethod
    def from_mapping(cls, source: Group, target: Group, mapping: dict) -> "GroupHom":
        return cls(source, target, [mapping[g] for g in source.gens])

    def __call__(self, x):
        return self.mapping[x]

    def image(self) -> Group:
        return self.target.subgroup(self.images)

    def kernel(self) -> Group:
        t1 = self.target.identity
        return self.source.subgroup_from_elements(x for x, y in self.mapping.items() if y == t1)

    def restrict(self, sub: Group) -> "GroupHom":
        return GroupHom(sub, self.target, [self.mapping[g] for g in sub.gens])

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other"""
        return GroupHom(other.source, self.target, [self.mapping[other.mapping[g]] for g in other.source.gens])

    def agrees_with(self, other: "GroupHom") -> bool:
        return all(self.mapping[g] == other.mapping[g] for g in self.source.gens) and \
            all(other.mapping[g] == self.mapping[g] for g in other.source.gens)

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{g} -> {h}" for g, h in zip(self.source.gens, self.images))
        return f"GroupHom({pairs})"


# ---------------------------------------------------------------------------
# operations


def closure(g: Group) -> list:
    return g.elements


def is_transitive(g: PermGroup) -> bool:
    return len(g.orbit(0)) == g.degree


def normal_core(g: Group, h: Group) -> Group:
    """Largest normal subgroup of g inside h (intersection of conjugates)."""
    if not h.is_subgroup_of(g):
        raise GroupError("h is not a subgroup of g")
    core = set(h.elements)
    for t in g.left_transversal(h):
        conj = {g.conj(t, x) for x in h.elements}
        core &= conj
    return g.subgroup_from_elements(core)


def symmetric_group(d: int) -> PermGroup:
    if d == 1:
        return PermGroup([], 1, name="S1")
    gens = [Perm.from_cycles([[1, 2]], d)]
    if d > 2:
        gens.append(Perm.from_cycles([list(range(1, d + 1))], d))
    return PermGroup(gens, d, name=f"S{d}", bound=max(DEFAULT_ORDER_BOUND, 40320))


def _all_perms(d: int):
    for img in itertools.permutations(range(d)):
        yield Perm(img)


def _automorphisms(g: Group) -> list[dict]:
    """All automorphisms of g as element maps (brute force over generator images)."""
    elems = g.elements
    gens = g.gens
    orders = [g.element_order(x) for x in gens]
    candidates = [[y for y in elems if g.element_order(y) == o] for o in orders]
    out = []
    n = len(elems)
    for imgs in itertools.product(*candidates):
        hom = GroupHom.try_build(g, g, imgs)
        if hom is not None and len(set(hom.mapping.values())) == n:
            out.append(hom.mapping)
    return out


def _normalizer_transitive(g: PermGroup, centralizer_only: bool = False) -> list[Perm]:
    """Normalizer (or centralizer) in S_d of a transitive group.

    An element n with n g n^-1 = a(g) is determined by the automorphism a and
    the point n(0); it exists iff a carries Stab(0) onto Stab(n(0)).
    """
    d = g.degree
    elems = g.elements
    # for each point choose an element of g moving 0 there
    mover: dict[int, Perm] = {}
    for x in elems:
        mover.setdefault(x(0), x)
    stab0 = frozenset(x for x in elems if x(0) == 0)
    autos = [{x: x for x in elems}] if centralizer_only else _automorphisms(g)
    out = set()
    for a in autos:
        image_stab = frozenset(a[x] for x in stab0)
        for j in range(d):
            if frozenset(x for x in elems if x(j) == j) != image_stab:
                continue
            img = [0] * d
            for p, m in mover.items():
                img[p] = a[m](j)
            if len(set(img)) != d:
                continue
            n = Perm(img)
            ninv = n.inverse()
            if all(n * x * ninv == a[x] for x in g.gens):
                out.add(n)
    return sorted(out)


def normalizer_in_sd(g: PermGroup, overgroup: Group | None = None) -> PermGroup:
    """N_{S_d}(g); exhaustive for d <= 8, automorphism-based when g is transitive."""
    return _normalizing_set(g, overgroup, centralizer=False)


def centralizer_in_sd(g: PermGroup, overgroup: Group | None = None) -> PermGroup:
    return _normalizing_set(g, overgroup, centralizer=True)


def _normalizing_set(g: PermGroup, overgroup, centralizer: bool) -> PermGroup:
    d = g.degree
    big_bound = max(DEFAULT_ORDER_BOUND, 40320)
    if overgroup is not None:
        scan = overgroup.elements
    elif is_transitive(g):
        found = _normalizer_transitive(g, centralizer_only=centralizer)
        return PermGroup(_greedy_gens(found, d), d, bound=big_bound)
    elif d <= SD_SCAN_DEGREE_BOUND:
        scan = _all_perms(d)
    else:
        raise BoundExceeded(f"degree {d} > {SD_SCAN_DEGREE_BOUND} needs a candidate overgroup")
    gens = g.gens
    found = []
    for s in scan:
        sinv = s.inverse()
        if centralizer:
            ok = all(s * x * sinv == x for x in gens)
        else:
            ok = all(s * x * sinv in g for x in gens)
        if ok:
            found.append(s)
    return PermGroup(_greedy_gens(found, d), d, bound=big_bound)


def _greedy_gens(elems: Sequence[Perm], d: int) -> list[Perm]:
    gens: list[Perm] = []
    current = {Perm.identity(d)}
    for x in sorted(elems):
        if x not in current:
            gens.append(x)
            current = set(bfs_closure(gens, Perm.identity(d), lambda a, b: a * b, 10 ** 6))
    return gens


def center(g: Group) -> Group:
    return g.subgroup_from_elements(
        x for x in g.elements if all(g.mul(x, y) == g.mul(y, x) for y in g.gens))


def coset_action(g: Group, h: Group, reps: Sequence | None = None) -> tuple[GroupHom, list]:
    """Left-translation action of g on the left cosets of h.

    Coset i is reps[i] h. By default reps is g.left_transversal(h): coset 1
    (point 0) is h itself and the others follow closure order of their minimal
    element. Returns the homomorphism into S_[g:h] and the representatives.
    """
    if not h.is_subgroup_of(g):
        raise GroupError("h is not a subgroup of g")
    reps = g.left_transversal(h) if reps is None else list(reps)
    d = len(reps)
    which = {}
    for i, r in enumerate(reps):
        for x in h.elements:
            which[g.mul(r, x)] = i
    if len(which) != len(g):
        raise GroupError("reps is not a transversal of the left cosets")
    target = symmetric_group(d) if d > 1 else PermGroup([], 1)
    images = [Perm(which[g.mul(x, r)] for r in reps) for x in g.gens]
    return GroupHom(g, target, images), reps


def transported_coset_action(g: Group, h: Group, n) -> tuple[GroupHom, list]:
    """Coset action on n h n^-1 with representatives n r_i n^-1, r_i those of h."""
    _, reps = coset_action(g, h)
    conj = [g.conj(n, r) for r in reps]
    return coset_action(g, h.conjugate_subgroup(n), conj)


def conjugacy_search(psi: GroupHom, psi2: GroupHom, search: Group | None = None) -> Perm | None:
    """phi in search with psi2(x) = phi psi(x) phi^-1 on generators, or None."""
    if psi.source.element_set != psi2.source.element_set:
        raise GroupError("homomorphisms have different sources")
    deg = psi.target.identity.degree
    if psi2.target.identity.degree != deg:
        return None
    if len(psi.image()) != len(psi2.image()):
        return None
    if search is None:
        search = normalizer_in_sd(psi.image())
    gens = psi.source.gens
    pairs = [(psi(x), psi2(x)) for x in gens]
    for phi in search.elements:
        inv = phi.inverse()
        if all(phi * a * inv == b for a, b in pairs):
            return phi
    return None


def quotient_group(g: Group, n: Group) -> tuple[FinGroup, GroupHom, list]:
    """Table of g/n (label 0 = n) with the projection and coset representatives."""
    if not n.is_subgroup_of(g) or not n.is_normal_in(g):
        raise GroupError("subgroup is not normal")
    reps = g.left_transversal(n)
    which = {}
    for i, r in enumerate(reps):
        for x in n.elements:
            which[g.mul(r, x)] = i
    table = [[which[g.mul(a, b)] for b in reps] for a in reps]
    labels = [f"{r}N" for r in reps]
    q = FinGroup(table, labels=labels)
    proj = GroupHom(g, q, [which[x] for x in g.gens])
    return q, proj, reps


def extension_generators(p: Group, e: Group) -> list:
    """Elements t_1..t_k with <p, t_1..t_k> = e (greedy in closure order)."""
    gens = list(p.gens)
    extra = []
    current = set(p.elements)
    for x in e.elements:
        if x not in current:
            extra.append(x)
            gens.append(x)
            current = set(bfs_closure(gens, e.identity, e.mul, e.bound))
    return extra


def extend_hom(phi: GroupHom, e: Group, target: Group, limit: int | None = None) -> list[GroupHom]:
    """All homomorphisms e -> target that restrict to phi on phi.source."""
    p = phi.source
    if not p.is_subgroup_of(e):
        raise GroupError("source of phi is not a subgroup of e")
    if p.element_set == e.element_set:
        return [GroupHom(e, target, [phi(x) for x in e.gens])]
    extra = extension_generators(p, e)
    pgens = list(p.gens)
    # a candidate image n for t must satisfy n phi(x) n^-1 = phi(t x t^-1)
    cands = []
    for t in extra:
        ok = []
        for n in target.elements:
            if all(target.conj(n, phi(x)) == phi(e.conj(t, x)) for x in pgens):
                if not _power_check(e, target, phi, t, n):
                    continue
                ok.append(n)
        cands.append(ok)
    # the generating set used for the search: gens of p, then extra
    src = e._spawn(pgens + extra)
    out = []
    for imgs in itertools.product(*cands):
        hom = GroupHom.try_build(src, target, [phi(x) for x in pgens] + list(imgs))
        if hom is None:
            continue
        out.append(GroupHom(e, target, [hom(x) for x in e.gens]))
        if limit is not None and len(out) >= limit:
            break
    return out


def _power_check(e, target, phi, t, n) -> bool:
    """If t^k lies in p then n^k must equal phi(t^k)."""
    k, y, m = 1, t, n
    while y not in phi.mapping:
        y = e.mul(y, t)
        m = target.mul(m, n)
        k += 1
        if k > len(e):
            return True
    return phi(y) == m


def all_subgroups(g: Group) -> list[Group]:
    """All subgroups by iterated joins of cyclic subgroups (desk scale only)."""
    seen: dict[frozenset, Group] = {}
    cyclic = []
    for x in g.elements:
        c = g.subgroup([x])
        key = c.element_set
        if key not in seen:
            seen[key] = c
            cyclic.append(c)
    frontier = list(seen.values())
    while frontier:
        new = []
        for s in frontier:
            for c in cyclic:
                if c.element_set <= s.element_set:
                    continue
                j = g.subgroup_from_elements(list(s.gens) + list(c.gens))
                key = j.element_set
                if key not in seen:
                    seen[key] = j
                    new.append(j)
        frontier = new
    out = list(seen.values())
    out.sort(key=lambda s: (len(s), sorted(g.index_of(x) for x in s.elements)))
    return out


def normal_subgroups(g: Group) -> list[Group]:
    return [s for s in all_subgroups(g) if s.is_normal_in(g)]
