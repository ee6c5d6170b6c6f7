"""Input documents: `[kind name]` sections of `key value` (or `key = value`) lines.

Example::

    [group G]
    degree 4
    gen r (1 2 3 4)
    gen s (2 4)

    [subgroup P]
    parent G
    gen r

Kinds: group, subgroup, extension, hom, module, section, field, aut, curve,
datum, braid. Names must be unique and defined before they are referenced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .braid import BraidError, BraidWord
from .cohomology import GModule, cyclic_table
from .curves import Curve, CurveError, DescentDatum, LPoly, MonomialMap, WCurve, iso_map, CONVENTIONS
from .cyclo import Field, FieldAut, FieldError, aut_closure, identity_aut, parse_expr
from .extension import ExtensionError, ExtensionModel
from .permgroup import Group, GroupError, GroupHom, Perm, PermGroup, symmetric_group

KINDS = ("group", "subgroup", "extension", "hom", "module", "section", "field", "aut", "curve",
         "datum", "braid")

# keys that refer to earlier sections, per kind
REFERENCES = {
    "subgroup": ("parent",),
    "extension": ("E", "P", "H", "R"),
    "hom": ("source",),
    "module": ("acting",),
    "section": ("extension",),
    "aut": ("field",),
    "curve": ("field",),
    "datum": ("curve", "aut"),
}


class DocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line, self.column = line, column


@dataclass
class Entry:
    key: str
    value: str
    line: int = 0


@dataclass
class Section:
    kind: str
    name: str
    entries: list[Entry] = field(default_factory=list)
    line: int = 0

    def get(self, key: str, default=None) -> str | None:
        for e in self.entries:
            if e.key == key:
                return e.value
        return default

    def all(self, key: str) -> list[Entry]:
        return [e for e in self.entries if e.key == key]

    def require(self, key: str) -> Entry:
        found = self.all(key)
        if not found:
            raise DocumentError(f"section [{self.kind} {self.name}] needs a '{key}' line", self.line)
        return found[0]

    def shape(self) -> tuple:
        return (self.kind, self.name, tuple((e.key, e.value) for e in self.entries))


@dataclass
class InputDocument:
    sections: list[Section]

    def __getitem__(self, name: str) -> Section:
        for s in self.sections:
            if s.name == name:
                return s
        raise KeyError(name)

    def of_kind(self, kind: str) -> list[Section]:
        return [s for s in self.sections if s.kind == kind]

    def shape(self) -> tuple:
        return tuple(s.shape() for s in self.sections)


HEADER = re.compile(r"^\[\s*([A-Za-z]+)\s+([A-Za-z_][\w']*)\s*\]$")


def parse(text: str) -> InputDocument:
    sections: list[Section] = []
    names: dict[str, int] = {}
    current: Section | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            m = HEADER.match(stripped)
            if not m:
                raise DocumentError("malformed section header (expected [kind name])", lineno, 1)
            kind, name = m.group(1), m.group(2)
            if kind not in KINDS:
                raise DocumentError(f"unknown section kind '{kind}'", lineno, 2)
            if name in names:
                raise DocumentError(f"duplicate section name '{name}' (first defined on line {names[name]})",
                                    lineno)
            names[name] = lineno
            current = Section(kind, name, [], lineno)
            sections.append(current)
            continue
        if current is None:
            raise DocumentError("content before the first section header", lineno, 1)
        parts = stripped.split(None, 1)
        key = parts[0]
        value = parts[1].strip() if len(parts) > 1 else ""
        if value.startswith("=") and not value.startswith("=="):
            value = value[1:].strip()
        elif key.endswith("=") and len(key) > 1:
            key = key[:-1]
        current.entries.append(Entry(key, value, lineno))
    doc = InputDocument(sections)
    _check_references(doc)
    return doc


def _check_references(doc: InputDocument):
    seen: dict[str, str] = {}
    for s in doc.sections:
        for key in REFERENCES.get(s.kind, ()):
            for e in s.all(key):
                ref = e.value.split()[0] if e.value else ""
                if s.kind == "datum" and key == "aut":
                    ref = e.value.split()[0]
                if ref not in seen:
                    raise DocumentError(f"[{s.kind} {s.name}] refers to undefined section '{ref}'", e.line)
        seen[s.name] = s.kind


def dump(doc: InputDocument) -> str:
    """Canonical text form; parse(dump(d)) has the same shape as d."""
    out = []
    for s in doc.sections:
        out.append(f"[{s.kind} {s.name}]")
        for e in s.entries:
            out.append(f"{e.key} {e.value}".rstrip())
        out.append("")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# building objects


class Built:
    """Objects constructed from a document, keyed by section name."""

    def __init__(self, doc: InputDocument, convention: str | None = None):
        self.doc = doc
        self.convention = convention
        self.objects: dict[str, object] = {}
        self.gen_names: dict[str, dict[str, object]] = {}
        for s in doc.sections:
            try:
                self.objects[s.name] = getattr(self, f"_build_{s.kind}")(s)
            except DocumentError:
                raise
            except (GroupError, ExtensionError, FieldError, CurveError, BraidError, ValueError) as exc:
                raise DocumentError(f"[{s.kind} {s.name}]: {exc}", s.line) from None

    def __getitem__(self, name: str):
        return self.objects[name]

    def first(self, kind: str):
        for s in self.doc.sections:
            if s.kind == kind:
                return s.name, self.objects[s.name]
        raise DocumentError(f"document has no [{kind} ...] section")

    # -- groups -----------------------------------------------------------

    def _perm(self, text: str, degree: int, entry: Entry, names: dict | None = None) -> Perm:
        text = text.strip()
        if names and text in names:
            return names[text]
        try:
            return Perm.from_cycles(text, degree)
        except (GroupError, ValueError) as exc:
            raise DocumentError(str(exc), entry.line) from None

    def _build_group(self, s: Section) -> PermGroup:
        degree = int(s.require("degree").value)
        names = {}
        gens = []
        for e in s.all("gen"):
            m = LABELLED.match(e.value)
            pairs = [(m.group(1), m.group(2))] if m else [(None, t) for t in _split_gens(e.value)]
            for label, cyc in pairs:
                p = self._perm(cyc, degree, e)
                names[label or f"g{len(gens) + 1}"] = p
                gens.append(p)
        self.gen_names[s.name] = names
        return PermGroup(gens, degree, name=s.name)

    def _build_subgroup(self, s: Section) -> Group:
        parent = self.objects[s.require("parent").value]
        names = dict(self.gen_names.get(s.require("parent").value, {}))
        gens = []
        own = {}
        for e in s.all("gen"):
            m = LABELLED.match(e.value)
            pairs = [(m.group(1), m.group(2))] if m else [(None, t) for t in _split_gens(e.value)]
            for label, tok in pairs:
                p = self._perm(tok, parent.degree, e, names)
                if p not in parent:
                    raise DocumentError(f"{p} is not in {s.require('parent').value}", e.line)
                if label:
                    own[label] = p
                gens.append(p)
        names.update(own)
        self.gen_names[s.name] = names
        return parent.subgroup(gens, name=s.name)

    def _build_extension(self, s: Section) -> dict:
        e = self.objects[s.require("E").value]
        p = self.objects[s.require("P").value]
        out = {"model": ExtensionModel(e, p, name=s.name)}
        for key in ("H", "R"):
            if s.get(key):
                out[key] = self.objects[s.get(key)]
        return out

    def _build_hom(self, s: Section) -> GroupHom:
        src_name = s.require("source").value
        src = self.objects[src_name]
        degree = int(s.require("target").value.split()[-1])
        names = self.gen_names.get(src_name, {})
        images = {}
        for e in s.all("image"):
            parts = e.value.split(None, 1)
            if len(parts) != 2:
                raise DocumentError("image lines read 'image <generator> <cycles>'", e.line)
            g = self._perm(parts[0], src.degree, e, names)
            images[g] = self._perm(parts[1], degree, e)
        missing = [g for g in src.gens if g not in images]
        if missing:
            raise DocumentError(f"no image given for generator {missing[0]}", s.line)
        target = symmetric_group(degree) if degree > 1 else PermGroup([], 1)
        try:
            return GroupHom(src, target, [images[g] for g in src.gens], name=s.name)
        except GroupError as exc:
            raise DocumentError(str(exc), s.line) from None

    def _build_module(self, s: Section) -> GModule:
        acting = self.objects[s.require("acting").value]
        if isinstance(acting, dict):
            acting = acting["model"].q
        n = int(s.require("coefficients").value.removeprefix("Z/"))
        m = cyclic_table(n)
        mult = {}
        names = self.gen_names.get(s.require("acting").value, {})
        for e in s.all("action"):
            g, k = e.value.rsplit(None, 1)
            mult[self._perm(g, acting.degree, e, names) if isinstance(acting, PermGroup) else int(g)] = int(k)
        gens = list(acting.gens)
        images = [mult.get(g, 1) % n for g in gens]
        units = FinGroupUnits(n)
        hom = GroupHom(acting, units, images)
        return GModule(acting, m, lambda u, x: (hom(u) * x) % n, name=s.name)

    def _build_section(self, s: Section) -> dict:
        ext = self.objects[s.require("extension").value]["model"]
        e = ext.e
        reps = [self._perm(x.value, e.degree, x) for x in s.all("rep")]
        if len(reps) != len(ext.q):
            raise DocumentError(f"need {len(ext.q)} rep lines, one per element of Q", s.line)
        out = {}
        for r in reps:
            if r not in e:
                raise DocumentError(f"{r} is not in E", s.line)
            u = ext.proj(r)
            if u in out:
                raise DocumentError("two reps lie in the same coset of P", s.line)
            out[u] = r
        if out[0] != e.identity:
            raise DocumentError("the rep of the identity coset must be ()", s.line)
        return out

    # -- fields and curves ------------------------------------------------

    def _build_field(self, s: Section) -> Field:
        return parse_field_line(" ".join(f"{e.key} {e.value}" for e in s.entries))

    def _build_aut(self, s: Section) -> FieldAut:
        fld = self.objects[s.require("field").value]
        k = int(s.require("zeta").value)
        t_img = parse_expr(s.get("t"), fld) if s.get("t") else None
        return FieldAut(fld, k, t_img, name=s.name)

    def _build_curve(self, s: Section) -> Curve:
        if s.get("curve"):
            return parse_curve_line(s.get("curve"), s.name)
        fld = self.objects[s.require("field").value]
        if s.get("f"):
            q = int(s.get("q", "2"))
            return Curve(fld, q, LPoly.parse(s.get("f"), fld), s.name)
        return WCurve(fld, parse_expr(s.require("A").value, fld), parse_expr(s.require("B").value, fld), s.name)

    def _build_datum(self, s: Section) -> DescentDatum:
        curve = self.objects[s.require("curve").value]
        fld = curve.field
        auts = []
        for e in s.all("aut"):
            a = self.objects[e.value.split()[0]]
            if a.field != fld:
                raise DocumentError("automorphism of a different field", e.line)
            auts.append(a)
        if not auts:
            raise DocumentError("a datum needs at least one 'aut' line", s.line)
        group = aut_closure(auts)
        byname = {a.name: a for a in auts}
        convention = self.convention or s.get("convention", "u2u3")
        if convention not in CONVENTIONS:
            raise DocumentError(f"convention must be one of {', '.join(CONVENTIONS)}", s.line)
        maps = {}
        for e in s.all("u") + s.all("map"):
            word, rest = _split_word(e)
            g = identity_aut(fld)
            for tok in word:
                if tok == "1":
                    continue
                if tok not in byname:
                    raise DocumentError(f"unknown automorphism '{tok}'", e.line)
                g = g.compose(byname[tok])
            g = next(x for x in group if x == g)
            if e.key == "u":
                maps[g] = iso_map(fld, parse_expr(rest, fld), convention)
            else:
                maps[g] = parse_monomial_map(rest, fld, e)
            g.name = "*".join(word)
        return DescentDatum(curve, group, maps)

    def _build_braid(self, s: Section) -> BraidWord:
        return BraidWord.parse(s.require("word").value, int(s.require("strands").value))


class FinGroupUnits(Group):
    """(Z/n)^* under multiplication, used for module actions."""

    def __init__(self, n: int):
        self.n = n
        units = [k for k in range(1, n + 1) if _gcd(k, n) == 1] if n > 1 else [0]
        super().__init__([u % n for u in units], name=f"(Z/{n})*")

    @property
    def identity(self):
        return 1 % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def inv(self, a):
        return pow(a, -1, self.n) if self.n > 1 else 0

    def _spawn(self, gens, name=None):
        return FinGroupUnits(self.n)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


LABELLED = re.compile(r"^([A-Za-z_]\w*)\s+(\(.*)$")


def _split_gens(value: str) -> list[str]:
    """Generator tokens: names or cycle strings, separated by commas or spaces.

    Adjacent cycles separated only by spaces, as in "(1 2) (3 4)", form one
    permutation.
    """
    out, buf, depth, glue = [], "", 0, False
    for ch in value:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in ", ":
            if buf.strip():
                tok = buf.strip()
                if glue and out and out[-1].endswith(")") and tok.startswith("("):
                    out[-1] += tok
                else:
                    out.append(tok)
                glue = True
            if ch == ",":
                glue = False
            buf = ""
            continue
        buf += ch
    if buf.strip():
        tok = buf.strip()
        if glue and out and out[-1].endswith(")") and tok.startswith("("):
            out[-1] += tok
        else:
            out.append(tok)
    return out


def _split_word(e: Entry) -> tuple[list[str], str]:
    if ":" not in e.value:
        raise DocumentError("expected '<aut word> : <value>'", e.line)
    word, rest = e.value.split(":", 1)
    return [w for w in re.split(r"[*\s]+", word.strip()) if w], rest.strip()


FIELD_LINE = re.compile(r"^cyclo\s+(\d+)(?:\s+kummer\s+t\^(\d+)\s*=\s*(.+))?$")


def parse_field_line(text: str) -> Field:
    """`cyclo 12` or `cyclo 12 kummer t^3=2`"""
    m = FIELD_LINE.match(text.strip())
    if not m:
        raise DocumentError(f"malformed field description {text!r} (expected 'cyclo N [kummer t^m=c]')")
    n = int(m.group(1))
    if m.group(2) is None:
        return Field(n)
    c = parse_expr(m.group(3), Field(n))
    return Field(n, int(m.group(2)), c)


CURVE_LINE = re.compile(r"^(?:curve\s+)?A\s*=\s*(.+?)\s*,\s*B\s*=\s*(.+?)\s+over\s+(.+)$")


def parse_curve_line(text: str, name: str = "E") -> WCurve:
    """`curve A = t, B = z4 over cyclo 12 kummer t^3=2`"""
    m = CURVE_LINE.match(text.strip())
    if not m:
        raise DocumentError(f"malformed curve description {text!r}")
    fld = parse_field_line(m.group(3))
    return WCurve(fld, parse_expr(m.group(1), fld), parse_expr(m.group(2), fld), name)


MAP_LINE = re.compile(r"^x\s*->\s*(.+?)\s+(-?\d+)\s+(-?\d+)\s*;\s*y\s*->\s*(.+?)\s+(-?\d+)\s+(-?\d+)$")


def parse_monomial_map(text: str, fld: Field, entry: Entry | None = None) -> MonomialMap:
    """`x -> <coef> <x-exp> <y-exp>; y -> <coef> <x-exp> <y-exp>`"""
    m = MAP_LINE.match(text.strip())
    if not m:
        raise DocumentError(f"malformed monomial map {text!r}", entry.line if entry else None)
    return MonomialMap(fld, parse_expr(m.group(1), fld), int(m.group(2)), int(m.group(3)),
                       parse_expr(m.group(4), fld), int(m.group(5)), int(m.group(6)))


def build(doc: InputDocument, convention: str | None = None) -> Built:
    return Built(doc, convention)
