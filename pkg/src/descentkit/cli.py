"""Command-line driver: `descentkit <subcommand> ...`.

Exit status: 0 computed (whatever the verdict), 1 input error, 2 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import braid, curves, fixtures
from .cohomology import CohomologyError, ObstructionContext, analyse, h1, h2
from .curves import CurveError, DescentDatum, WCurve, j_invariant
from .cyclo import FieldError
from .document import Built, DocumentError, build, parse
from .extension import (CoverModel, defined_over_check, galois_closure, regularity_index_check)
from .permgroup import BoundExceeded, GroupError, coset_action, is_transitive, normal_core


class InvariantViolation(RuntimeError):
    pass


def _mat(m) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in m) + "]"


def _yn(b) -> str:
    return "yes" if b else "no"


def _label(g) -> str:
    n = len(g)
    if any(g.element_order(x) == n for x in g):
        return f"C{n}"
    return f"order {n}"


def _load(path: str, convention: str | None = None) -> Built:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return build(parse(text), convention)


# ---------------------------------------------------------------------------
# subcommands; each returns report lines


def cmd_braid_elliptic(args) -> list[str]:
    scen = braid.elliptic_scenario()
    out = ["# braid-elliptic: B4 acting on F3 (x4 = (x1 x2 x3)^-1), quotient R2/<squares>",
           f"R2 index: {scen.r2_index}",
           f"R2 free generators: {', '.join(str(w) for w in scen.rs_generators)}",
           f"listed generators generate R2: {_yn(scen.listed_generators_equal_r2)}",
           f"quotient: free rank {scen.free_rank}, torsion {scen.torsion or 'none'}",
           "basis: x2x1, x3x1 (matrix columns are images)"]
    for r in scen.rows:
        tag = " -> identity (non-faithful witness)" if r.note == "non-faithful witness" else ""
        if r.note == "spherical kernel word":
            tag = " (spherical kernel word)"
        check = "" if r.matches is None else f"  expected {_mat(r.expected)}: {'match' if r.matches else 'MISMATCH'}"
        out.append(f"{r.name}: {_mat(r.matrix)} det {r.determinant}{tag}{check}")
    a, b = scen.s2_decomposition
    out.append(f"s2(x2x1) = {a}*(x2x1) {'-' if b < 0 else '+'} {abs(b)}*(x3x1)")
    for k in scen.kernel_words:
        status = "identity" if k.identity_on_free_group else (
            f"inner by {k.inner_witness}" if k.inner_witness is not None else "not inner")
        out.append(f"kernel word {k.name}: on F3 {status}; preserves R2: {_yn(k.preserves_r2)}; "
                   f"quotient matrix {_mat(k.elliptic_matrix) if k.elliptic_matrix else '-'}")
    if args.file:
        built = _load(args.file)
        for s in built.doc.of_kind("braid"):
            w = built[s.name]
            if w.strands != 4:
                out.append(f"braid {s.name}: {w.strands} strands, quotient only defined for 4")
                continue
            f = braid.artin_rep(w, 3)
            m = braid.elliptic_action(f).in_basis(braid.elliptic_basis())
            out.append(f"braid {s.name} = {w}: {_mat(m)}")
    for name, ok in scen.checks.items():
        out.append(f"check {name}: {'pass' if ok else 'FAIL'}")
    if not all(scen.checks.values()):
        raise InvariantViolation("elliptic scenario checks failed: " + "; ".join(out[-4:]))
    return out


def cmd_coset_action(args) -> list[str]:
    built = _load(args.file)
    out = ["# coset-action: left translation on left cosets, coset 1 = the subgroup"]
    subs = built.doc.of_kind("subgroup")
    if not subs:
        raise DocumentError("document has no [subgroup ...] section")
    for s in subs:
        h = built[s.name]
        g = built[s.require("parent").value]
        hom, reps = coset_action(g, h)
        img = hom.image()
        core = normal_core(g, h)
        kernel = hom.kernel()
        out.append(f"[{s.name} in {s.require('parent').value}]")
        out.append(f"index: {len(reps)}")
        for x, y in zip(g.gens, hom.images):
            out.append(f"image {x}: {y}")
        out.append(f"image order: {len(img)}")
        out.append(f"transitive: {_yn(is_transitive(img))}")
        out.append(f"kernel order: {len(kernel)}")
        out.append(f"core order: {len(core)}")
        out.append(f"faithful: {_yn(len(kernel) == 1)}")
        if not kernel.equals(core) or not is_transitive(img):
            raise InvariantViolation("coset action kernel differs from the normal core")
    return out


def cmd_defined_over(args) -> list[str]:
    built = _load(args.file)
    out = ["# defined-over: conditions on (E, P, H, R)"]
    for s in built.doc.of_kind("extension"):
        ext = built[s.name]
        if "H" not in ext or "R" not in ext:
            continue
        c = CoverModel(ext["model"], ext["H"], ext["R"])
        rep = defined_over_check(c)
        idx = regularity_index_check(c)
        out.append(f"[{s.name}] |E| {len(c.ext.e)}, |P| {len(c.ext.p)}, |H| {len(c.h)}, |R| {len(c.r)}")
        out += rep.lines()
        out.append(f"[E:H] = {idx.index_eh}, [P:R] = {idx.index_pr}, equal: {_yn(idx.equal)}")
        if rep.intersection and rep.normalizes:
            cl = galois_closure(c)
            out.append(f"core of H: order {len(cl.h_hat)}; core of R in P: order {len(cl.r_hat)}")
            out.append(f"core(H) cap P = core(R): {_yn(cl.intersection_ok)}")
            out.append(f"core(H) R = H: {_yn(cl.regular_closure)}")
        if rep.regular and not idx.equal:
            raise InvariantViolation("condition (4) holds but the indices differ")
    if len(out) == 1:
        raise DocumentError("no [extension ...] section with H and R lines")
    return out


def _obstruction_inputs(args):
    if args.fixture:
        table = {"d4": fixtures.d4_c4, "q8": fixtures.q8_c4, "cmod-fail": fixtures.cmod_failing}
        ext, psi = table[args.fixture]()
        return ext.name, ext, psi, None
    if not args.file:
        raise DocumentError("obstruction needs a file or --fixture")
    built = _load(args.file)
    ename, ext = built.first("extension")
    _, psi = built.first("hom")
    section = None
    if built.doc.of_kind("section"):
        section = built.first("section")[1]
    model = ext["model"]
    if psi.source.element_set != model.p.element_set:
        raise DocumentError("the hom must be defined on P")
    return ename, model, psi, section


def cmd_obstruction(args) -> list[str]:
    name, ext, psi, section = _obstruction_inputs(args)
    out = ["# obstruction: lifting psi: P -> S_d to E, via lambda, Lambda and Omega",
           "convention: phi_U psi(x) phi_U^-1 = psi(U x U^-1); Q acts on Z(G) by conjugation with phi_u;",
           "            definable iff delta(theta) * Omega is a coboundary for some theta "
           "(equivalently Omega^-1 lies in the image of delta)",
           f"model: {name}",
           f"|E| = {len(ext.e)}, |P| = {len(ext.p)}, |Q| = {len(ext.q)}, degree {psi.target.identity.degree}"]
    from .extension import cmod_check
    cm = cmod_check(psi, ext.e)
    out.append(f"|G| = {len(cm.g)}, |N| = {len(cm.n)}, |C| = {len(cm.c)}")
    out.append(f"CMod: {'holds' if cm.holds else 'FAILS at U = ' + str(cm.failing)}")
    if not cm.holds:
        out.append("definable-over-A': no (CMod fails, A' is not the group of moduli)")
        return out
    ctx = ObstructionContext(ext, psi, cm.n, cm.c, cm)
    rep = analyse(ctx)
    out.append(f"|Z(G)| = {rep.z_order}, |CG/G| = {rep.cg_mod_g}")
    out.append(f"lambda trivial: {_yn(rep.lambda_trivial)}")
    out.append(f"lifts Lambda: {rep.lifts}")
    for i, (ob, v) in enumerate(zip(rep.obstructions, rep.verdicts)):
        nontriv = v.omega_class_order != 1
        h2o = "?" if v.h2_order is None else v.h2_order
        where = f"H^2({_label(ob.module.q)}, {_label(ob.module.m)})"
        out.append(f"Lambda #{i + 1}: obstruction-class: {'nontrivial' if nontriv else 'trivial'} in {where}")
        out.append(f"Lambda #{i + 1}: |H^2| = {h2o}; class order {v.omega_class_order}; "
                   f"thetas scanned {v.thetas_scanned}; cancelled by delta(theta): {_yn(v.definable)}")
    if section is not None:
        sec_lift = analyse_with_section(ctx, section)
        out.append(f"user section: Omega class order {sec_lift}")
    out.append(f"definable-over-A': {_yn(rep.definable)}")
    out.append(f"extensions of psi to E: {'found' if rep.extensions else 'none'}")
    if rep.split is None or rep.split is False:
        out.append("split criterion: not applicable (sequence does not split)")
    else:
        out.append(f"split criterion lift: {'found' if rep.split_lift else 'none'}")
    out.append(f"consistency: {'ok' if rep.consistent else 'VIOLATED'}")
    if not rep.consistent:
        raise InvariantViolation("extendHom, split criterion and definability disagree")
    return out


def analyse_with_section(ctx, section) -> str:
    from .cohomology import class_order2, enumerate_lifts, obstruction_cocycle
    orders = []
    for lift in enumerate_lifts(ctx):
        ob = obstruction_cocycle(ctx, lift, section)
        orders.append(str(class_order2(ob.omega, ob.module)))
    return ", ".join(orders) or "-"


def cmd_weil(args) -> list[str]:
    built = _load(args.file, args.convention)
    out = ["# weil: cocycle f_{st} = ^s f_t o f_s and the induced right action"]
    for s in built.doc.of_kind("datum"):
        d: DescentDatum = built[s.name]
        out.append(f"[{s.name}] curve: {d.curve}")
        out.append(f"field: {d.curve.field.describe()}")
        out.append(f"group order: {len(d.group)}")
        if isinstance(d.curve, WCurve):
            out.append(f"j-invariant: {j_invariant(d.curve)}")
        v = curves.weil_cocycle_check(d)
        for g in d.group:
            out.append(f"map for {g.name or g}: {d.maps[g]}; maps X to ^gX: {_yn(v.maps_ok.get(g))}")
        if v.passed and not all(v.maps_ok.values()):
            out.append("cocycle: identity holds, but not every map is an isomorphism onto the conjugate")
        elif v.passed:
            out.append("cocycle: holds")
            a = curves.induced_action_check(d)
            out.append(f"induced action: right action {_yn(a.right_action)}, invertible {_yn(a.invertible)}, "
                       f"identity ok {_yn(a.identity_ok)}, order {a.order}")
            if not (a.right_action and a.identity_ok):
                raise InvariantViolation("cocycle holds but the induced action is not a right action")
        else:
            s1, t1 = v.failing
            out.append(f"cocycle: FAILS at ({s1.name or s1}, {t1.name or t1})")
    if len(out) == 1:
        raise DocumentError("document has no [datum ...] section")
    return out


def cmd_superelliptic(args) -> list[str]:
    m, n, q = args.m, args.n, args.q
    out = [f"# superelliptic {m} {n} {q}: y^q = prod (x^n - a_i)(x^n + 1/c(a_i)), a_i = (1+i) zeta_m^i"]
    k = curves.build_superelliptic(m, n, q, args.omega_prime)
    out.append(f"field: {k.field.describe()}")
    out.append(f"f(x) degree: {k.x.f.degree()}, constant term nonzero: {_yn(not k.x.f.coeff(0) == 0)}")
    out.append(f"omega = {k.omega} (omega^n = {k.omega ** n})")
    out.append(f"omega' = {k.omega_prime} (omega'^q = {k.omega_prime ** q}); required constant {k.kappa}")
    out.append(f"mu: {k.mu}")
    for name, g in (("gamma", k.gamma), ("nu", k.nu)):
        out.append(f"{name} is an automorphism of X: {_yn(curves.maps_to(g, k.x, k.x))}")
    rows = curves.superelliptic_check(k)
    for r in rows:
        out.append(f"(i, j) = ({r.i}, {r.j}): maps X to ^cX: {_yn(r.maps_ok)}; "
                   f"composite {r.composite}; composite-identity: {_yn(r.composite_identity)}")
    ident = curves.MonomialMap.identity(k.field)
    out.append(f"sanity: identity map recognized as identity: {_yn(curves.is_identity_on(ident, k.x))}")
    if args.omega_prime == "corrected":
        lit = curves.build_superelliptic(m, n, q, "literal")
        ok = all(r.maps_ok for r in curves.superelliptic_check(lit))
        out.append(f"literal omega' with omega'^q = -1: mu maps X to ^cX: {_yn(ok)}")
    valid = [r for r in rows if r.maps_ok]
    if valid and all(not r.composite_identity for r in valid) and len(valid) == len(rows):
        out.append("cocycle: FAILS for all candidates")
    elif not valid:
        out.append("cocycle: undecided (no candidate maps X to ^cX)")
    else:
        out.append("cocycle: holds for some candidate")
    return out


def cmd_elliptic_d6(args) -> list[str]:
    r = curves.d6_scenario()
    out = ["# elliptic-d6: y^2 = x^3 + cbrt2 x + i, models under <sigma, tau>",
           f"field: {r.field}",
           f"group order: {r.group_order} (full automorphism group {r.full_group_order}); {r.fixed_field_note}",
           "g | model | matches listed model | u | u2u3 | u3u2 | u2u3 solutions | u3u2 solutions"]
    for row in r.rows:
        sol = {c: ",".join(f"z12^{k}" for k in row.search[c]) or "-" for c in curves.CONVENTIONS}
        out.append(f"{row.g} | {row.model} | {_yn(row.model_matches)} | {row.u} | "
                   f"{_yn(row.verdict['u2u3'])} | {_yn(row.verdict['u3u2'])} | {sol['u2u3']} | {sol['u3u2']}")
    for c, v in r.cocycle.items():
        if v.passed:
            out.append(f"cocycle {c}: holds")
        else:
            out.append(f"cocycle {c}: fails at ({v.failing[0].name}, {v.failing[1].name})")
    out += [f"note: {x}" for x in r.notes]
    return out


def cmd_cohomology(args) -> list[str]:
    built = _load(args.file)
    out = ["# cohomology: H^1 and H^2 by cochain enumeration"]
    for s in built.doc.of_kind("module"):
        mod = built[s.name]
        a, b = h1(mod), h2(mod)
        out.append(f"[{s.name}] |Q| = {len(mod.q)}, |M| = {len(mod.m)}, trivial action: {_yn(mod.is_trivial_action())}")
        out.append(f"H^1 order: {a.order}")
        out.append(f"H^2 order: {b.order}")
    if len(out) == 1:
        raise DocumentError("document has no [module ...] section")
    return out


def cmd_selftest(args) -> list[str]:
    from .selftest import run_selftest
    rows = run_selftest()
    out = ["# selftest: reproduced worked examples"]
    width = max(len(n) for n, _ in rows)
    for name, ok in rows:
        out.append(f"{name.ljust(width)}  {'pass' if ok else 'FAIL'}")
    passed = sum(ok for _, ok in rows)
    out.append(f"summary: {passed}/{len(rows)} pass")
    args._selftest_ok = passed == len(rows)
    return out


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage mistakes are input errors (exit 1), not invariant violations
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", default=argparse.SUPPRESS,
                        help="also write the report to this file")
    p = _Parser(prog="descentkit", description="Descent and braid computations at desk scale.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(*a, **kw):
        return _add(*a, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("braid-elliptic", help="B4 action on the elliptic quotient")
    s.add_argument("file", nargs="?", help="optional document with [braid ...] sections")
    s.set_defaults(func=cmd_braid_elliptic)

    s = sub.add_parser("coset-action", help="coset actions of the subgroups in a document")
    s.add_argument("file")
    s.set_defaults(func=cmd_coset_action)

    s = sub.add_parser("defined-over", help="conditions (1)-(4) for extension sections with H and R")
    s.add_argument("file")
    s.set_defaults(func=cmd_defined_over)

    s = sub.add_parser("obstruction", help="CMod, lifts and the Omega obstruction")
    s.add_argument("file", nargs="?")
    s.add_argument("--fixture", choices=["d4", "q8", "cmod-fail"], help="use a built-in model")
    s.set_defaults(func=cmd_obstruction)

    s = sub.add_parser("weil", help="Weil cocycle and induced action for datum sections")
    s.add_argument("file")
    s.add_argument("--convention", choices=list(curves.CONVENTIONS),
                   help="exponent convention for u values (overrides the document)")
    s.set_defaults(func=cmd_weil)

    s = sub.add_parser("superelliptic", aliases=["kontogeorgis"],
                       help="field of moduli not a field of definition: y^q = f(x) family")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--omega-prime", choices=["corrected", "literal"], default="corrected")
    s.set_defaults(func=cmd_superelliptic)

    s = sub.add_parser("elliptic-d6", help="six twisted models and the u table under both conventions")
    s.set_defaults(func=cmd_elliptic_d6)

    s = sub.add_parser("cohomology", help="H^1, H^2 of module sections")
    s.add_argument("file")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("selftest", help="pass/fail matrix of the reproduced worked examples")
    s.set_defaults(func=cmd_selftest)
    return p


INPUT_ERRORS = (DocumentError, FieldError, CurveError, GroupError, BoundExceeded, CohomologyError,
                braid.BraidError, ValueError, OSError)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lines = args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    report = getattr(args, "report", None)
    if report:
        Path(report).write_text(text, encoding="utf-8")
    if args.command == "selftest" and not getattr(args, "_selftest_ok", True):
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
