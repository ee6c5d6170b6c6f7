"""Words in free groups, endomorphisms given by generator images, and
finite-index subgroups via folded (Stallings) graphs.

Generators are numbered 1..n; a word is a tuple of nonzero integers where
``-i`` stands for the inverse of generator ``i``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import intlinalg


class WordError(ValueError):
    pass


def reduce(raw: Iterable[int], n: int) -> tuple[int, ...]:
    stack: list[int] = []
    for a in raw:
        if a == 0 or abs(a) > n:
            raise WordError(f"generator index {a} out of range for rank {n}")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


class Word:
    __slots__ = ("letters", "rank")

    def __init__(self, letters: Iterable[int] = (), rank: int = 1):
        if rank < 1:
            raise WordError("rank must be positive")
        self.letters = reduce(letters, rank)
        self.rank = rank

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    @classmethod
    def gen(cls, i: int, rank: int) -> "Word":
        return cls((i,), rank)

    @classmethod
    def parse(cls, text: str, rank: int) -> "Word":
        """Parse ``x1 x2^-1 x3^2`` (``*`` separators allowed, ``1`` is the identity)."""
        text = text.replace("*", " ").strip()
        if text in ("", "1", "e"):
            return cls((), rank)
        letters: list[int] = []
        for tok in text.split():
            m = re.fullmatch(r"x(\d+)(?:\^(-?\d+))?", tok)
            if not m:
                raise WordError(f"cannot parse word token {tok!r}")
            i, e = int(m.group(1)), int(m.group(2) or 1)
            letters.extend([i if e > 0 else -i] * abs(e))
        return cls(letters, rank)

    def _check(self, other: "Word") -> None:
        if self.rank != other.rank:
            raise WordError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.letters + other.letters, self.rank)

    def inverse(self) -> "Word":
        return Word(tuple(-a for a in reversed(self.letters)), self.rank)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k), self.rank)

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.rank == other.rank and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.letters, self.rank))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        out = []
        i = 0
        ls = self.letters
        while i < len(ls):
            j = i
            while j < len(ls) and ls[j] == ls[i]:
                j += 1
            k = (j - i) * (1 if ls[i] > 0 else -1)
            out.append(f"x{abs(ls[i])}" + ("" if k == 1 else f"^{k}"))
            i = j
        return " ".join(out)

    def __repr__(self) -> str:
        return f"Word({self})"


def multiply(a: Word, b: Word) -> Word:
    return a * b


def invert(a: Word) -> Word:
    return a.inverse()


def _cyclic_split(a: Word) -> tuple[Word, Word]:
    """a = p c p^-1 with c cyclically reduced; returns (p, c)."""
    ls = a.letters
    i, j = 0, len(ls) - 1
    while i < j and ls[i] == -ls[j]:
        i += 1
        j -= 1
    return Word(ls[:i], a.rank), Word(ls[i:j + 1], a.rank)


def cyclic_reduce(a: Word) -> Word:
    return _cyclic_split(a)[1]


def conjugate_test(a: Word, b: Word) -> Word | None:
    """Some w with a = w b w^-1, or None when a and b are not conjugate."""
    a._check(b)
    p, ca = _cyclic_split(a)
    q, cb = _cyclic_split(b)
    if len(ca) != len(cb):
        return None
    la, lb = ca.letters, cb.letters
    for k in range(max(len(lb), 1)):
        if lb[k:] + lb[:k] == la:
            # ca = y cb y^-1 with cb = x y, ca = y x
            y = Word(lb[k:], a.rank) if k else Word.identity(a.rank)
            w = p * y * q.inverse()
            assert w * b * w.inverse() == a
            return w
    return None


# ---------------------------------------------------------------------------
# endomorphisms


class FreeMap:
    """Endomorphism of F_n given by the images of x_1..x_n."""

    __slots__ = ("rank", "images")

    def __init__(self, images: Sequence[Word], rank: int | None = None):
        images = tuple(images)
        rank = rank if rank is not None else len(images)
        if len(images) != rank:
            raise WordError("need one image per generator")
        for w in images:
            if w.rank != rank:
                raise WordError("image rank mismatch")
        self.rank = rank
        self.images = images

    @classmethod
    def identity(cls, rank: int) -> "FreeMap":
        return cls([Word.gen(i, rank) for i in range(1, rank + 1)])

    @classmethod
    def conjugation(cls, w: Word) -> "FreeMap":
        n = w.rank
        return cls([w * Word.gen(i, n) * w.inverse() for i in range(1, n + 1)])

    @classmethod
    def parse(cls, texts: Sequence[str], rank: int) -> "FreeMap":
        return cls([Word.parse(t, rank) for t in texts], rank)

    def __call__(self, w: Word) -> Word:
        return apply_map(self, w)

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeMap) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def is_identity(self) -> bool:
        return self == FreeMap.identity(self.rank)

    def __str__(self) -> str:
        return ", ".join(f"x{i} -> {w}" for i, w in enumerate(self.images, 1))

    __repr__ = __str__


def apply_map(f: FreeMap, w: Word) -> Word:
    if f.rank != w.rank:
        raise WordError("rank mismatch")
    out: list[int] = []
    inv_cache: dict[int, tuple[int, ...]] = {}
    for a in w.letters:
        if a > 0:
            out.extend(f.images[a - 1].letters)
        else:
            if a not in inv_cache:
                inv_cache[a] = f.images[-a - 1].inverse().letters
            out.extend(inv_cache[a])
    return Word(out, f.rank)


def compose_maps(f: FreeMap, g: FreeMap) -> FreeMap:
    """f after g."""
    if f.rank != g.rank:
        raise WordError("rank mismatch")
    return FreeMap([apply_map(f, w) for w in g.images])


def is_inner(f: FreeMap) -> Word | None:
    """w with f(x_i) = w x_i w^-1 for every i, if f is inner.

    A conjugator for x_1 has the form p x_1^k, where f(x_1) = p c p^-1 with
    c cyclically reduced; the prefixes of f(x_1) x_1^-1 are tried first and
    then the finitely many shifts by powers of x_1 that can matter.
    """
    n = f.rank
    if any(w.is_identity() for w in f.images):
        raise WordError("map sends a generator to the identity; not an automorphism")
    x1 = Word.gen(1, n)
    probe = f.images[0] * x1.inverse()
    candidates: list[Word] = [Word(probe.letters[:k], n) for k in range(len(probe) + 1)]
    p, c = _cyclic_split(f.images[0])
    if c != x1:
        return None
    bound = sum(len(w) for w in f.images) + 1
    candidates += [p * x1 ** k for k in range(-bound, bound + 1)]
    seen = set()
    for w in candidates:
        if w in seen:
            continue
        seen.add(w)
        if FreeMap.conjugation(w) == f:
            return w
    return None


# ---------------------------------------------------------------------------
# subgroups as folded graphs


def _label_order(n: int) -> list[int]:
    out = []
    for i in range(1, n + 1):
        out += [i, -i]
    return out


@dataclass(frozen=True)
class SubgroupGraph:
    """Folded core graph: ``edges[s]`` maps signed labels to target states.

    States are numbered breadth-first from the basepoint 0 in label order
    x1, x1^-1, x2, ..., so equal subgroups give identical graphs.
    """

    rank: int
    edges: tuple[tuple[tuple[int, int], ...], ...]
    _adj: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_adj", tuple(dict(e) for e in self.edges))

    @property
    def num_states(self) -> int:
        return len(self.edges)

    def step(self, state: int, label: int) -> int | None:
        return self._adj[state].get(label)

    def read(self, w: Word, start: int = 0) -> int | None:
        s = start
        for a in w.letters:
            s = self._adj[s].get(a)
            if s is None:
                return None
        return s

    def is_complete(self) -> bool:
        labels = _label_order(self.rank)
        return all(all(a in adj for a in labels) for adj in self._adj)

    # spanning tree -----------------------------------------------------
    def tree(self) -> tuple[list[Word], set[tuple[int, int]]]:
        """Tree paths from the basepoint and the set of positive tree edges."""
        paths: list[Word | None] = [None] * self.num_states
        paths[0] = Word.identity(self.rank)
        tree_edges: set[tuple[int, int]] = set()
        queue = deque([0])
        labels = _label_order(self.rank)
        while queue:
            s = queue.popleft()
            for a in labels:
                t = self._adj[s].get(a)
                if t is not None and paths[t] is None:
                    paths[t] = paths[s] * Word((a,), self.rank)
                    tree_edges.add((s, a) if a > 0 else (t, -a))
                    queue.append(t)
        return paths, tree_edges  # type: ignore[return-value]

    def free_generators(self) -> list[Word]:
        paths, tree_edges = self.tree()
        gens = []
        for s in range(self.num_states):
            for a in range(1, self.rank + 1):
                t = self._adj[s].get(a)
                if t is not None and (s, a) not in tree_edges:
                    gens.append(paths[s] * Word((a,), self.rank) * paths[t].inverse())
        return gens

    def generator_edges(self) -> list[tuple[int, int]]:
        _, tree_edges = self.tree()
        return [(s, a) for s in range(self.num_states) for a in range(1, self.rank + 1)
                if self._adj[s].get(a) is not None and (s, a) not in tree_edges]

    def rewrite(self, w: Word) -> list[int]:
        """Exponent vector of a subgroup element over ``free_generators()``."""
        gen_edges = self.generator_edges()
        pos = {e: k for k, e in enumerate(gen_edges)}
        vec = [0] * len(gen_edges)
        s = 0
        for a in w.letters:
            t = self._adj[s].get(a)
            if t is None:
                raise WordError(f"{w} is not in the subgroup")
            key = (s, a) if a > 0 else (t, -a)
            if key in pos:
                vec[pos[key]] += 1 if a > 0 else -1
            s = t
        if s != 0:
            raise WordError(f"{w} is not in the subgroup")
        return vec

    def rebased(self, state: int) -> "SubgroupGraph":
        return _canonical(self.rank, [dict(a) for a in self._adj], state)

    def __str__(self) -> str:
        lines = []
        for s, adj in enumerate(self._adj):
            outs = " ".join(f"x{a}->{t}" for a, t in sorted(adj.items()) if a > 0)
            lines.append(f"{s}: {outs}")
        return "\n".join(lines)


def _canonical(rank: int, adj: list[dict[int, int]], base: int) -> SubgroupGraph:
    labels = _label_order(rank)
    order = {base: 0}
    queue = deque([base])
    while queue:
        s = queue.popleft()
        for a in labels:
            t = adj[s].get(a)
            if t is not None and t not in order:
                order[t] = len(order)
                queue.append(t)
    edges: list[list[tuple[int, int]]] = [[] for _ in order]
    for s, k in order.items():
        edges[k] = sorted((a, order[t]) for a, t in adj[s].items() if t in order)
    return SubgroupGraph(rank, tuple(tuple(e) for e in edges))


def subgroup_from_generators(gens: Iterable[Word], rank: int | None = None) -> SubgroupGraph:
    gens = list(gens)
    if rank is None:
        if not gens:
            raise WordError("rank required for an empty generating set")
        rank = gens[0].rank
    for g in gens:
        if g.rank != rank:
            raise WordError("rank mismatch among generators")

    parent: list[int] = [0]
    adj: list[dict[int, int]] = [{}]

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def new_state() -> int:
        parent.append(len(parent))
        adj.append({})
        return len(parent) - 1

    pending: list[tuple[int, int]] = []

    def add_edge(s: int, a: int, t: int) -> None:
        for u, lab, v in ((s, a, t), (t, -a, s)):
            u = find(u)
            cur = adj[u].get(lab)
            if cur is None:
                adj[u][lab] = v
            elif find(cur) != find(v):
                pending.append((cur, v))

    def settle() -> None:
        while pending:
            x, y = pending.pop()
            x, y = find(x), find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            parent[y] = x
            moved = adj[y]
            adj[y] = {}
            for lab, v in moved.items():
                add_edge(x, lab, v)

    for g in gens:
        cur = 0
        ls = g.letters
        for k, a in enumerate(ls):
            nxt = 0 if k == len(ls) - 1 else new_state()
            add_edge(cur, a, nxt)
            settle()
            cur = nxt

    roots = {find(x) for x in range(len(parent))}
    clean: dict[int, dict[int, int]] = {r: {} for r in roots}
    for r in roots:
        for lab, v in adj[r].items():
            clean[r][lab] = find(v)
    # prune hanging trees (not through the basepoint)
    base = find(0)
    changed = True
    while changed:
        changed = False
        for r in list(clean):
            if r != base and len(clean[r]) <= 1:
                for lab, v in clean[r].items():
                    clean[v].pop(-lab, None)
                del clean[r]
                changed = True
    ids = {r: i for i, r in enumerate(sorted(clean))}
    dense = [dict() for _ in ids]
    for r, d in clean.items():
        dense[ids[r]] = {lab: ids[v] for lab, v in d.items()}
    return _canonical(rank, dense, ids[base])


def whole_group(rank: int) -> SubgroupGraph:
    return subgroup_from_generators([Word.gen(i, rank) for i in range(1, rank + 1)], rank)


def membership(g: SubgroupGraph, w: Word) -> bool:
    if w.rank != g.rank:
        raise WordError("rank mismatch")
    return g.read(w) == 0


def index(g: SubgroupGraph) -> int | float:
    return g.num_states if g.is_complete() else float("inf")


def image_subgroup(f: FreeMap, g: SubgroupGraph) -> SubgroupGraph:
    return subgroup_from_generators([apply_map(f, w) for w in g.free_generators()], g.rank)


def equal_subgroups(g1: SubgroupGraph, g2: SubgroupGraph) -> bool:
    return all(membership(g2, w) for w in g1.free_generators()) and \
        all(membership(g1, w) for w in g2.free_generators())


def conjugate_subgroups(g1: SubgroupGraph, g2: SubgroupGraph) -> Word | None:
    """w with w g1 w^-1 = g2, searched over coset representatives of g1."""
    if index(g1) == float("inf"):
        raise WordError("conjugateSubgroups needs a finite-index subgroup")
    paths, _ = g1.tree()
    for s in range(g1.num_states):
        # basepoint moved to s accepts t_s^-1 g1 t_s
        if equal_subgroups(g1.rebased(s), g2):
            return paths[s].inverse()
    return None


def reidemeister_schreier(g: SubgroupGraph) -> list[Word]:
    if index(g) == float("inf"):
        raise WordError("Reidemeister-Schreier needs a finite-index subgroup")
    return g.free_generators()


# ---------------------------------------------------------------------------
# induced action on an abelian quotient


@dataclass
class QuotientAction:
    """Matrix of an endomorphism on the free part of sub^ab / <relators>.

    Columns are images of basis vectors. ``basis`` holds subgroup words whose
    classes form the basis used for ``matrix``.
    """

    matrix: list[list[int]]
    basis: list[Word]
    torsion: list[int]
    free_rank: int
    _graph: SubgroupGraph = field(repr=False)
    _u: list[list[int]] = field(repr=False)
    _rank_rel: int = field(repr=False)

    def coordinates(self, w: Word) -> list[int]:
        v = intlinalg.matvec(self._u, self._graph.rewrite(w))
        return v[self._rank_rel:]

    def in_basis(self, words: Sequence[Word]) -> list[list[int]]:
        """The same matrix expressed in another basis of the free quotient."""
        b = intlinalg.transpose([self.coordinates(w) for w in words])
        if len(words) != self.free_rank or abs(intlinalg.det(b)) != 1:
            raise WordError("given words do not form a basis of the free quotient")
        binv = intlinalg.inverse_unimodular(b)
        return intlinalg.matmul(binv, intlinalg.matmul(self.matrix, b))


def abelian_quotient_matrix(sub: SubgroupGraph, extra_relators: Iterable[Word], f: FreeMap) -> QuotientAction:
    if index(sub) == float("inf"):
        raise WordError("finite index required")
    if not equal_subgroups(image_subgroup(f, sub), sub):
        raise WordError("map does not preserve the subgroup")
    gens = sub.free_generators()
    r = len(gens)
    paths, _ = sub.tree()
    rel_vecs: list[list[int]] = []
    for rho in extra_relators:
        for s in range(sub.num_states):
            if sub.read(rho, s) == s:
                v = sub.rewrite(paths[s] * rho * paths[s].inverse())
                if any(v) and v not in rel_vecs:
                    rel_vecs.append(v)
    images = [sub.rewrite(apply_map(f, w)) for w in gens]
    for v in rel_vecs:
        fv = [sum(images[k][i] * v[k] for k in range(r)) for i in range(r)]
        if intlinalg.solve_in_lattice(rel_vecs, fv) is None:
            raise WordError("map does not preserve the relator subgroup")
    if rel_vecs:
        rel = intlinalg.transpose(rel_vecs)
        d, u, _ = intlinalg.smith_normal_form(rel)
        diag = intlinalg.diagonal(d)
    else:
        u, diag = intlinalg.identity(r), []
    rank_rel = sum(1 for x in diag if x)
    torsion = [x for x in diag if x > 1]
    m = intlinalg.transpose(images)
    uinv = intlinalg.inverse_unimodular(u)
    conj = intlinalg.matmul(u, intlinalg.matmul(m, uinv))
    block = [row[rank_rel:] for row in conj[rank_rel:]]
    basis = []
    for j in range(rank_rel, r):
        col = [uinv[i][j] for i in range(r)]
        w = Word.identity(sub.rank)
        for k, e in enumerate(col):
            w = w * gens[k] ** e
        basis.append(w)
    return QuotientAction(block, basis, torsion, r - rank_rel, sub, u, rank_rel)
