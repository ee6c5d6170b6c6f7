"""Generated corpora of small extension and cover models (|E| <= 16)."""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import ObstructionContext, analyse
from .extension import CoverModel, ExtensionModel, cmod_check, defined_over_check, regularity_index_check
from .named import alternating, cyclic, dihedral, direct_product, klein, quaternion, semidirect_cyclic
from .permgroup import (Group, all_subgroups, centralizer_in_sd, coset_action, normal_subgroups, normalizer_in_sd,
                        symmetric_group)

MAX_ORDER = 16
MAX_DEGREE = 6


def corpus_groups() -> list[Group]:
    gs = [cyclic(n) for n in (2, 3, 4, 6, 8)]
    gs += [dihedral(n) for n in (3, 4, 5, 6, 8)]
    gs += [klein(), quaternion(), alternating(4)]
    gs.append(direct_product(cyclic(4), cyclic(2), name="C4xC2"))
    gs.append(direct_product(cyclic(2), cyclic(2), cyclic(2), name="C2^3"))
    gs.append(direct_product(symmetric_group(3), cyclic(2), name="S3xC2"))
    gs.append(direct_product(dihedral(4), cyclic(2), name="D4xC2"))
    gs.append(direct_product(quaternion(), cyclic(2), name="Q8xC2"))
    gs.append(direct_product(cyclic(4), cyclic(4), name="C4xC4"))
    gs += [semidirect_cyclic(3, 4, 2, "Dic12"), semidirect_cyclic(4, 4, 3, "C4x|C4"),
           semidirect_cyclic(8, 2, 5, "M16"), semidirect_cyclic(8, 2, 3, "SD16")]
    return [g for g in gs if len(g) <= MAX_ORDER]


@dataclass
class RegularityCase:
    group: str
    cover: CoverModel
    condition4: bool
    index_eh: int
    index_pr: int

    @property
    def counterexample(self) -> bool:
        return self.condition4 and self.index_eh != self.index_pr


def regularity_corpus() -> list[RegularityCase]:
    """Every (E, P normal, H) with R = H cap P, for the implication (4) => equal indices."""
    out = []
    for e in corpus_groups():
        subs = all_subgroups(e)
        for p in normal_subgroups(e):
            ext = ExtensionModel(e, p)
            for h in subs:
                c = CoverModel(ext, h, h.intersection(p))
                rep = defined_over_check(c)
                idx = regularity_index_check(c)
                out.append(RegularityCase(e.name or "?", c, rep.regular, idx.index_eh, idx.index_pr))
    return out


@dataclass
class SplitCase:
    group: str
    split: bool
    p_order: int
    k_order: int
    degree: int
    extends: bool
    split_lift: bool | None
    definable: bool

    @property
    def consistent(self) -> bool:
        if not self.split:
            return self.extends == self.definable
        return self.extends == self.split_lift == self.definable


@dataclass
class CorpusInstance:
    group: str
    ext: ExtensionModel
    section: dict | None  # homomorphic section when the sequence splits
    k_order: int
    degree: int
    ctx: ObstructionContext | None  # None when CMod fails


def corpus_instances(max_degree: int = MAX_DEGREE, include_nonsplit: bool = False):
    """Instances with psi the coset action of P on one of its subgroups."""
    cache: dict[tuple, tuple] = {}
    for e in corpus_groups():
        for p in normal_subgroups(e):
            if len(p) in (1, len(e)):
                continue
            ext = ExtensionModel(e, p)
            sec = ext.homomorphic_section()
            if sec is None and not include_nonsplit:
                continue
            for k in all_subgroups(p):
                d = len(p) // len(k)
                if d > max_degree or d < 2:
                    continue
                psi, _ = coset_action(p, k)
                g = psi.image()
                key = (g.degree, g.element_set)
                if key not in cache:
                    cache[key] = (normalizer_in_sd(g), centralizer_in_sd(g))
                n, c = cache[key]
                cm = cmod_check(psi, e, n, c)
                ctx = ObstructionContext(ext, psi, n, c, cm) if cm.holds else None
                yield CorpusInstance(e.name or "?", ext, sec, len(k), d, ctx)


def split_corpus(max_degree: int = MAX_DEGREE, include_nonsplit: bool = False) -> tuple[list[SplitCase], int]:
    """Obstruction verdicts over corpus_instances.

    Split extensions only unless include_nonsplit is set. Returns the cases
    and the number of instances skipped because CMod fails.
    """
    out, skipped = [], 0
    for inst in corpus_instances(max_degree, include_nonsplit):
        if inst.ctx is None:
            skipped += 1
            continue
        rep = analyse(inst.ctx)
        lift = None if inst.section is None else rep.split_lift is not None
        out.append(SplitCase(inst.group, inst.section is not None, len(inst.ext.p), inst.k_order, inst.degree,
                             rep.extensions > 0, lift, rep.definable))
    return out, skipped
