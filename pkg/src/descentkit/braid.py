"""Artin braid groups acting on free groups, and the four-point elliptic example.

Convention: a braid on ``strands`` strands has generators s1..s_{strands-1}.
By default it acts on the free group of rank ``strands`` (loops x_1..x_n
around n punctures of the plane). With ``rank = strands - 1`` the last loop
is not free: x_strands stands for (x_1 ... x_{strands-1})^-1, the loop around
infinity of a punctured sphere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .words import (FreeMap, QuotientAction, SubgroupGraph, Word, abelian_quotient_matrix,
                    compose_maps, conjugate_test, equal_subgroups, image_subgroup, index,
                    is_inner, reidemeister_schreier, subgroup_from_generators)
from . import intlinalg

MAX_RELATION_STRANDS = 8


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise BraidError("a braid needs at least 2 strands")
        for a in self.letters:
            if a == 0 or abs(a) > self.strands - 1:
                raise BraidError(f"generator s{abs(a)} out of range for {self.strands} strands")

    @classmethod
    def parse(cls, text: str, strands: int) -> "BraidWord":
        """``s1 s2 s3^-1``; ``*`` also separates; ``(...)^k`` groups are expanded."""
        return cls(strands, tuple(_parse_braid(text.replace("*", " "))))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise BraidError("strand count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        base = self.letters if k >= 0 else tuple(-a for a in reversed(self.letters))
        return BraidWord(self.strands, base * abs(k))

    def inverse(self) -> "BraidWord":
        return self ** -1

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(f"s{a}" if a > 0 else f"s{-a}^-1" for a in self.letters)


def _parse_braid(text: str) -> list[int]:
    text = text.strip()
    out: list[int] = []
    pos = 0
    token = re.compile(r"\s*(?:s(\d+)(?:\^(-?\d+))?|(\()|(\))(?:\^(-?\d+))?)")
    stack: list[list[int]] = [out]
    while pos < len(text):
        m = token.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "" or text[pos:].strip() == "1":
                break
            raise BraidError(f"cannot parse braid near column {pos + 1}: {text!r}")
        pos = m.end()
        if m.group(1):
            i, e = int(m.group(1)), int(m.group(2) or 1)
            stack[-1].extend([i if e > 0 else -i] * abs(e))
        elif m.group(3):
            stack.append([])
        else:
            if len(stack) == 1:
                raise BraidError("unbalanced parenthesis in braid word")
            inner = stack.pop()
            e = int(m.group(5) or 1)
            block = inner if e > 0 else [-a for a in reversed(inner)]
            stack[-1].extend(block * abs(e))
    if len(stack) != 1:
        raise BraidError("unbalanced parenthesis in braid word")
    return out


def _loops(strands: int, rank: int) -> list[Word]:
    """x_1..x_strands as words of F_rank."""
    xs = [Word.gen(i, rank) for i in range(1, rank + 1)]
    if rank == strands - 1:
        prod = Word.identity(rank)
        for x in xs:
            prod = prod * x
        xs.append(prod.inverse())
    return xs


def generator_map(i: int, strands: int, rank: int | None = None) -> FreeMap:
    """Automorphism for s_i (i > 0) or s_|i|^-1 (i < 0)."""
    rank = strands if rank is None else rank
    if rank not in (strands, strands - 1):
        raise BraidError("rank must be strands or strands - 1")
    xs = _loops(strands, rank)
    k = abs(i)
    img = list(xs)
    a, b = xs[k - 1], xs[k]
    if i > 0:
        img[k - 1] = a * b * a.inverse()
        img[k] = a
    else:
        img[k - 1] = b
        img[k] = b.inverse() * a * b
    return FreeMap(img[:rank], rank)


def artin_rep(b: BraidWord, rank: int | None = None) -> FreeMap:
    rank = b.strands if rank is None else rank
    f = FreeMap.identity(rank)
    cache: dict[int, FreeMap] = {}
    for a in b.letters:
        if a not in cache:
            cache[a] = generator_map(a, b.strands, rank)
        f = compose_maps(f, cache[a])
    return f


@dataclass
class RelationResult:
    relation: str
    passed: bool


def braid_relations_check(strands: int, bound: int = MAX_RELATION_STRANDS) -> list[RelationResult]:
    if strands > bound:
        raise BraidError(f"strands {strands} exceeds bound {bound}")
    out = []
    n = strands - 1
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            si, sj = BraidWord(strands, (i,)), BraidWord(strands, (j,))
            if j - i >= 2:
                lhs, rhs = si * sj, sj * si
                name = f"s{i}*s{j} = s{j}*s{i}"
            elif j == i + 1:
                lhs, rhs = si * sj * si, sj * si * sj
                name = f"s{i}*s{j}*s{i} = s{j}*s{i}*s{j}"
            else:
                continue
            out.append(RelationResult(name, artin_rep(lhs) == artin_rep(rhs)))
    for i in range(1, n + 1):
        b = BraidWord(strands, (i, -i))
        out.append(RelationResult(f"s{i}*s{i}^-1 = 1", artin_rep(b).is_identity()))
    # sphere relations, on F_{strands-1} where x_strands = (x_1 ... x_{strands-1})^-1
    up = BraidWord(strands, tuple(range(1, n + 1)))
    out.append(RelationResult(f"(s1*...*s{n})^{strands} = 1 on F{n}", artin_rep(up ** strands, n).is_identity()))
    down = BraidWord(strands, tuple(range(n, 0, -1)))
    out.append(RelationResult(f"s1*...*s{n}*s{n}*...*s1 inner on F{n}", is_inner(artin_rep(up * down, n)) is not None))
    return out


def strand_permutation(b: BraidWord) -> tuple[int, ...]:
    """Permutation of strand endpoints, tracked one crossing at a time."""
    pos = list(range(b.strands))
    for a in b.letters:
        k = abs(a)
        pos[k - 1], pos[k] = pos[k], pos[k - 1]
    return tuple(pos)


@dataclass
class PurityResult:
    pure: bool
    witnesses: list[Word | None]


def is_pure(b: BraidWord) -> PurityResult:
    f = artin_rep(b)
    wits = [conjugate_test(f.images[i], Word.gen(i + 1, f.rank)) for i in range(f.rank)]
    return PurityResult(all(w is not None for w in wits), wits)


# ---------------------------------------------------------------------------
# the four-point elliptic example


def listed_r2_generators() -> list[Word]:
    """x2 x1^-1, x3 x1^-1, x1 x1, x1 x2, x1 x3 in F_3."""
    return [Word.parse(t, 3) for t in ("x2 x1^-1", "x3 x1^-1", "x1 x1", "x1 x2", "x1 x3")]


def parity_kernel(rank: int = 3) -> SubgroupGraph:
    """Kernel of F_rank -> Z/2 sending every generator to 1 (even-length words)."""
    gens = [Word.gen(1, rank) ** 2]
    for i in range(1, rank + 1):
        gens.append(Word.gen(1, rank) * Word.gen(i, rank))
        gens.append(Word.gen(i, rank) * Word.gen(1, rank) ** -1)
    return subgroup_from_generators(gens, rank)


def elliptic_relators() -> list[Word]:
    """x1^2, x2^2, x3^2 and x4^2 = (x1 x2 x3)^-2."""
    xs = [Word.gen(i, 3) for i in (1, 2, 3)]
    return [x ** 2 for x in xs] + [(xs[0] * xs[1] * xs[2]) ** -2]


def elliptic_basis() -> list[Word]:
    return [Word.parse("x2 x1", 3), Word.parse("x3 x1", 3)]


def spherical_kernel_words(strands: int) -> list[tuple[str, BraidWord]]:
    n = strands - 1
    full = BraidWord(strands, tuple(range(1, n + 1)))
    w1 = full ** strands
    w2 = BraidWord(strands, tuple(range(1, n)) + (n, n) + tuple(range(n - 1, 0, -1)))
    return [(f"({'*'.join(f's{i}' for i in range(1, n + 1))})^{strands}", w1), (str(w2), w2)]


@dataclass
class KernelWordReport:
    name: str
    braid: BraidWord
    identity_on_free_group: bool
    inner_witness: Word | None
    preserves_r2: bool | None
    elliptic_matrix: list[list[int]] | None


def spherical_kernel_check(strands: int = 4) -> list[KernelWordReport]:
    rank = strands - 1
    out = []
    for name, w in spherical_kernel_words(strands):
        out.append(_kernel_word_report(name, w, rank))
    return out


def _kernel_word_report(name: str, w: BraidWord, rank: int) -> KernelWordReport:
    f = artin_rep(w, rank)
    inner = is_inner(f)
    preserves = matrix = None
    if w.strands == 4:
        r2 = parity_kernel(3)
        preserves = equal_subgroups(image_subgroup(f, r2), r2)
        if preserves:
            matrix = elliptic_action(f).in_basis(elliptic_basis())
    return KernelWordReport(name, w, f.is_identity(), inner, preserves, matrix)


def elliptic_action(f: FreeMap) -> QuotientAction:
    return abelian_quotient_matrix(parity_kernel(3), elliptic_relators(), f)


EXPECTED_MATRICES = {
    "s1": [[1, 1], [0, 1]],
    "s2": [[2, 1], [-1, 0]],
    "s3": [[1, 1], [0, 1]],
    "s1*s3^-1": [[1, 0], [0, 1]],
}


@dataclass
class EllipticRow:
    name: str
    matrix: list[list[int]]
    determinant: int
    expected: list[list[int]] | None
    note: str = ""

    @property
    def matches(self) -> bool | None:
        return None if self.expected is None else self.matrix == self.expected


@dataclass
class EllipticScenario:
    r2_index: int
    r2_free_rank: int
    listed_generators_equal_r2: bool
    rs_generators: list[Word]
    torsion: list[int]
    free_rank: int
    preserves_r2: dict[str, bool]
    rows: list[EllipticRow]
    kernel_words: list[KernelWordReport]
    s2_decomposition: list[int]
    checks: dict[str, bool] = field(default_factory=dict)


def elliptic_scenario() -> EllipticScenario:
    r2 = parity_kernel(3)
    listed = subgroup_from_generators(listed_r2_generators(), 3)
    rs = reidemeister_schreier(r2)
    preserves = {}
    for i in (1, 2, 3):
        preserves[f"s{i}"] = equal_subgroups(image_subgroup(artin_rep(BraidWord(4, (i,)), 3), r2), r2)
    rows = []
    basis = elliptic_basis()
    action = None
    for name in ("s1", "s2", "s3", "s1*s3^-1"):
        f = artin_rep(BraidWord.parse(name, 4), 3)
        action = elliptic_action(f)
        m = action.in_basis(basis)
        note = "non-faithful witness" if name == "s1*s3^-1" and m == [[1, 0], [0, 1]] else ""
        rows.append(EllipticRow(name, m, intlinalg.det(m), EXPECTED_MATRICES[name], note))
    kernel = spherical_kernel_check(4)
    for k in kernel:
        if k.elliptic_matrix is not None:
            rows.append(EllipticRow(k.name, k.elliptic_matrix, intlinalg.det(k.elliptic_matrix), None,
                                    "spherical kernel word"))
    s2 = artin_rep(BraidWord(4, (2,)), 3)
    dec_action = elliptic_action(s2)
    b = intlinalg.transpose([dec_action.coordinates(w) for w in basis])
    img = dec_action.coordinates(s2(basis[0]))
    decomposition = intlinalg.matvec(intlinalg.inverse_unimodular(b), img)
    scen = EllipticScenario(
        r2_index=int(index(r2)),
        r2_free_rank=len(rs),
        listed_generators_equal_r2=equal_subgroups(listed, r2),
        rs_generators=rs,
        torsion=action.torsion if action else [],
        free_rank=action.free_rank if action else 0,
        preserves_r2=preserves,
        rows=rows,
        kernel_words=kernel,
        s2_decomposition=decomposition,
    )
    scen.checks = {
        "all determinants 1": all(r.determinant == 1 for r in rows),
        "expected matrices reproduced": all(r.matches for r in rows if r.expected is not None),
        "s2(x2x1) = 2*(x2x1) - (x3x1)": decomposition == [2, -1],
        "R2 index 2, 5 free generators": scen.r2_index == 2 and len(rs) == 5,
        "listed generators generate R2": scen.listed_generators_equal_r2,
        "B4 generators preserve R2": all(preserves.values()),
    }
    return scen
