"""Finite categories, functors, natural transformations, and markings.

A finite category is stored as an explicit composition table.  Morphism
identity is by id string: two morphisms are equal iff their ids are equal,
which makes every axiom check a table lookup.  Object and morphism ids are
ordered lexicographically; that ordering is the global tie-breaker wherever
a canonical choice is needed.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import InvalidMarking, MalformedTable, UnknownMorphism


def short_id(s: str) -> str:
    """Canonical id, shortened deterministically when very long."""
    if len(s) <= 120:
        return s
    return s[:96] + "#" + hashlib.sha1(s.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class Mor:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Violation:
    kind: str  # "associativity" | "unit" | "dangling" | "composite"
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "\n".join(f"{v.kind}: {v.detail}" for v in self.violations)


class FinCat:
    """A finite category: objects, morphisms, identities, composition table.

    Values are immutable after construction; every operation on them is pure.
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Iterable[Mor],
        identity: Mapping[str, str],
        comp: Mapping[tuple[str, str], str],
    ):
        self.objects: tuple[str, ...] = tuple(sorted(objects))
        self.morphisms: tuple[Mor, ...] = tuple(
            sorted(morphisms, key=lambda m: m.name)
        )
        self.identity: dict[str, str] = dict(identity)
        self.comp: dict[tuple[str, str], str] = dict(comp)
        self._mor: dict[str, Mor] = {m.name: m for m in self.morphisms}
        self._identity_names = frozenset(self.identity.values())
        self._hom: dict[tuple[str, str], list[str]] = {}
        for m in self.morphisms:
            self._hom.setdefault((m.src, m.tgt), []).append(m.name)
        self._iso_cache: frozenset[str] | None = None

    # -- basic accessors -------------------------------------------------

    def mor(self, name: str) -> Mor:
        try:
            return self._mor[name]
        except KeyError:
            raise UnknownMorphism(name) from None

    def has_mor(self, name: str) -> bool:
        return name in self._mor

    def src(self, name: str) -> str:
        return self.mor(name).src

    def tgt(self, name: str) -> str:
        return self.mor(name).tgt

    def compose(self, g: str, f: str) -> str:
        """g after f.  Defined exactly when tgt(f) == src(g)."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise UnknownMorphism(f"no composite ({g} after {f})") from None

    def hom(self, x: str, y: str) -> list[str]:
        return self._hom.get((x, y), [])

    def is_identity(self, name: str) -> bool:
        return name in self._identity_names

    def nonidentity(self) -> list[str]:
        return [m.name for m in self.morphisms if not self.is_identity(m.name)]

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """All (g, f) with tgt(f) == src(g)."""
        by_src: dict[str, list[str]] = {}
        for m in self.morphisms:
            by_src.setdefault(m.src, []).append(m.name)
        for f in self.morphisms:
            for g in by_src.get(f.tgt, []):
                yield (g, f.name)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def same_table(self, other: "FinCat") -> bool:
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.identity == other.identity
            and self.comp == other.comp
        )

    # -- isomorphisms ----------------------------------------------------

    def iso_set(self) -> frozenset[str]:
        if self._iso_cache is None:
            self._iso_cache = frozenset(
                m.name for m in self.morphisms if self._is_iso(m.name)
            )
        return self._iso_cache

    def _is_iso(self, f: str) -> bool:
        m = self.mor(f)
        if self.is_identity(f):
            return True
        for g in self.hom(m.tgt, m.src):
            if (
                self.compose(g, f) == self.identity[m.src]
                and self.compose(f, g) == self.identity[m.tgt]
            ):
                return True
        return False


def is_iso(C: FinCat, f: str) -> bool:
    """Exhaustive two-sided inverse search over Hom(tgt(f), src(f))."""
    C.mor(f)  # raises UnknownMorphism
    return f in C.iso_set()


# -- validation ------------------------------------------------------------


def check_axioms(C: FinCat) -> ValidationReport:
    """Exhaustive associativity, unit, and totality check."""
    bad: list[Violation] = []
    for o in C.objects:
        if o not in C.identity:
            bad.append(Violation("dangling", f"object {o} has no identity"))
        elif not C.has_mor(C.identity[o]):
            bad.append(Violation("dangling", f"identity of {o} is unknown"))
    for m in C.morphisms:
        if m.src not in set(C.objects) or m.tgt not in set(C.objects):
            bad.append(Violation("dangling", f"morphism {m.name} has bad endpoints"))
    for (g, f), h in C.comp.items():
        if not (C.has_mor(g) and C.has_mor(f) and C.has_mor(h)):
            bad.append(Violation("dangling", f"comp entry ({g},{f})={h} unknown id"))
            continue
        if C.tgt(f) != C.src(g):
            bad.append(Violation("composite", f"({g},{f}) not composable"))
            continue
        if C.src(h) != C.src(f) or C.tgt(h) != C.tgt(g):
            bad.append(Violation("composite", f"({g},{f})={h} has wrong endpoints"))
    if bad:
        return ValidationReport(bad)
    # totality
    for g, f in C.composable_pairs():
        if (g, f) not in C.comp:
            bad.append(Violation("composite", f"missing composite ({g},{f})"))
    if bad:
        return ValidationReport(bad)
    # units
    for m in C.morphisms:
        e_src = C.identity[m.src]
        e_tgt = C.identity[m.tgt]
        if C.compose(m.name, e_src) != m.name:
            bad.append(Violation("unit", f"({m.name}, {e_src})"))
        if C.compose(e_tgt, m.name) != m.name:
            bad.append(Violation("unit", f"({e_tgt}, {m.name})"))
    # associativity on every composable triple
    by_src: dict[str, list[str]] = {}
    for m in C.morphisms:
        by_src.setdefault(m.src, []).append(m.name)
    for f in C.morphisms:
        for g in by_src.get(f.tgt, []):
            gf = C.comp[(g, f.name)]
            for h in by_src.get(C.tgt(g), []):
                if C.comp[(h, gf)] != C.comp[(C.comp[(h, g)], f.name)]:
                    bad.append(Violation("associativity", f"({h}, {g}, {f.name})"))
    return ValidationReport(bad)


def fincat(
    objects: Iterable[str],
    morphisms: Iterable[Mor],
    identity: Mapping[str, str],
    comp: Mapping[tuple[str, str], str],
    check: bool = True,
) -> FinCat:
    """Assemble a FinCat, asserting all axioms unless check=False."""
    C = FinCat(objects, morphisms, identity, comp)
    names = [m.name for m in C.morphisms]
    if len(set(names)) != len(names):
        raise MalformedTable("duplicate morphism ids")
    if len(set(C.objects)) != len(C.objects):
        raise MalformedTable("duplicate object ids")
    if check:
        report = check_axioms(C)
        if not report.ok:
            raise MalformedTable(f"axiom failure:\n{report}")
    return C


def validate_category(data: Mapping) -> FinCat | ValidationReport:
    """Validate FinCat-shaped data.

    Returns a FinCat when all axioms hold, or a ValidationReport listing
    every violated axiom.  Structural junk (duplicate ids, composites of
    non-composable pairs) raises MalformedTable.
    """
    objects = list(data["objects"])
    if len(set(objects)) != len(objects):
        raise MalformedTable(f"duplicate object ids: {sorted(objects)}")
    morphisms = [Mor(m["id"], m["src"], m["tgt"]) for m in data["morphisms"]]
    names = [m.name for m in morphisms]
    if len(set(names)) != len(names):
        raise MalformedTable("duplicate morphism ids")
    identity = dict(data["identity"])
    comp = {(g, f): h for (g, f), h in data["comp"].items()}
    C = FinCat(objects, morphisms, identity, comp)
    report = check_axioms(C)
    if report.ok:
        return C
    return report


# -- markings ---------------------------------------------------------------


@dataclass(frozen=True)
class MarkedFinCat:
    """A finite category with a marking.

    The marked set contains every identity and every isomorphism and is
    closed under composition; ``validate_marking`` enforces this.
    """

    cat: FinCat
    marked: frozenset[str]

    def is_marked(self, m: str) -> bool:
        self.cat.mor(m)
        return m in self.marked


def validate_marking(C: FinCat, marked: Iterable[str]) -> frozenset[str]:
    """Reject a non-closed marking rather than silently saturating it."""
    S = frozenset(marked)
    for m in S:
        if not C.has_mor(m):
            raise InvalidMarking(f"unknown morphism {m}")
    missing = C.iso_set() - S
    if missing:
        raise InvalidMarking(f"isomorphisms not marked: {sorted(missing)}")
    for g, f in C.composable_pairs():
        if g in S and f in S and C.compose(g, f) not in S:
            raise InvalidMarking(f"not closed: ({g} after {f})")
    return S


def marked(C: FinCat, marked_set: Iterable[str]) -> MarkedFinCat:
    return MarkedFinCat(C, validate_marking(C, marked_set))


def saturate_marking(C: FinCat, S: Iterable[str]) -> frozenset[str]:
    """Smallest marking containing S: add all isos, close under composition."""
    for m in S:
        C.mor(m)
    out = set(S) | set(C.iso_set())
    changed = True
    while changed:
        changed = False
        for g, f in C.composable_pairs():
            if g in out and f in out:
                h = C.compose(g, f)
                if h not in out:
                    out.add(h)
                    changed = True
    return frozenset(out)


def flat_marking(C: FinCat) -> MarkedFinCat:
    """Mark exactly the isomorphisms."""
    return MarkedFinCat(C, C.iso_set())


def sharp_marking(C: FinCat) -> MarkedFinCat:
    """Mark every morphism."""
    return MarkedFinCat(C, frozenset(m.name for m in C.morphisms))


def marked_subcategory(Cm: MarkedFinCat) -> FinCat:
    """The wide subcategory on all objects and exactly the marked morphisms."""
    C = Cm.cat
    morphisms = [m for m in C.morphisms if m.name in Cm.marked]
    comp = {
        (g, f): h
        for (g, f), h in C.comp.items()
        if g in Cm.marked and f in Cm.marked
    }
    return fincat(C.objects, morphisms, C.identity, comp)


# -- opposites and products ---------------------------------------------------


def opposite_cat(C: FinCat) -> FinCat:
    morphisms = [Mor(m.name, m.tgt, m.src) for m in C.morphisms]
    comp = {(f, g): h for (g, f), h in C.comp.items()}
    return fincat(C.objects, morphisms, C.identity, comp, check=False)


def opposite(Cm: MarkedFinCat) -> MarkedFinCat:
    return MarkedFinCat(opposite_cat(Cm.cat), Cm.marked)


def pair_id(a: str, b: str) -> str:
    return short_id(f"({a}|{b})")


def product(Cm: MarkedFinCat, Dm: MarkedFinCat) -> MarkedFinCat:
    """Cartesian product; a morphism is marked iff both components are."""
    C, D = Cm.cat, Dm.cat
    objects = [pair_id(x, y) for x in C.objects for y in D.objects]
    morphisms = [
        Mor(pair_id(f.name, g.name), pair_id(f.src, g.src), pair_id(f.tgt, g.tgt))
        for f in C.morphisms
        for g in D.morphisms
    ]
    identity = {
        pair_id(x, y): pair_id(C.identity[x], D.identity[y])
        for x in C.objects
        for y in D.objects
    }
    comp = {}
    for (g1, f1), h1 in C.comp.items():
        for (g2, f2), h2 in D.comp.items():
            comp[(pair_id(g1, g2), pair_id(f1, f2))] = pair_id(h1, h2)
    cat = fincat(objects, morphisms, identity, comp, check=False)
    mk = frozenset(
        pair_id(f, g) for f in Cm.marked for g in Dm.marked
    )
    return MarkedFinCat(cat, mk)


# -- functors and natural transformations -------------------------------------


@dataclass(frozen=True)
class Functor:
    dom: FinCat
    cod: FinCat
    object_map: Mapping[str, str]
    morphism_map: Mapping[str, str]

    def obj(self, x: str) -> str:
        return self.object_map[x]

    def mor(self, f: str) -> str:
        return self.morphism_map[f]

    def validate(self) -> None:
        for x in self.dom.objects:
            if self.object_map.get(x) not in self.cod.objects:
                raise MalformedTable(f"functor: object {x} unmapped or bad image")
        for m in self.dom.morphisms:
            img = self.morphism_map.get(m.name)
            if img is None or not self.cod.has_mor(img):
                raise MalformedTable(f"functor: morphism {m.name} unmapped")
            if (
                self.cod.src(img) != self.obj(m.src)
                or self.cod.tgt(img) != self.obj(m.tgt)
            ):
                raise MalformedTable(f"functor: {m.name} image has wrong endpoints")
        for x in self.dom.objects:
            if self.mor(self.dom.identity[x]) != self.cod.identity[self.obj(x)]:
                raise MalformedTable(f"functor: identity of {x} not preserved")
        for g, f in self.dom.composable_pairs():
            if self.mor(self.dom.compose(g, f)) != self.cod.compose(
                self.mor(g), self.mor(f)
            ):
                raise MalformedTable(f"functor: composite ({g},{f}) not preserved")

    def is_marked(self, dom_marked: frozenset[str], cod_marked: frozenset[str]) -> bool:
        return all(self.mor(m) in cod_marked for m in dom_marked)

    def key(self) -> str:
        os = ",".join(f"{x}>{self.obj(x)}" for x in self.dom.objects)
        ms = ",".join(
            f"{m}>{self.mor(m)}" for m in sorted(self.morphism_map)
            if not self.dom.is_identity(m)
        )
        return short_id(f"F{{{os};{ms}}}")


def identity_functor(C: FinCat) -> Functor:
    return Functor(
        C, C,
        {x: x for x in C.objects},
        {m.name: m.name for m in C.morphisms},
    )


def compose_functors(G: Functor, F: Functor) -> Functor:
    """G after F."""
    if G.dom is not F.cod and not G.dom.same_table(F.cod):
        raise MalformedTable("compose_functors: middle categories differ")
    return Functor(
        F.dom, G.cod,
        {x: G.obj(F.obj(x)) for x in F.dom.objects},
        {m.name: G.mor(F.mor(m.name)) for m in F.dom.morphisms},
    )


def opposite_functor(F: Functor, dom_op: FinCat | None = None,
                     cod_op: FinCat | None = None) -> Functor:
    """The same maps, regarded as a functor between the opposite categories."""
    return Functor(
        dom_op if dom_op is not None else opposite_cat(F.dom),
        cod_op if cod_op is not None else opposite_cat(F.cod),
        dict(F.object_map),
        dict(F.morphism_map),
    )


@dataclass(frozen=True)
class NatTrans:
    src: Functor
    tgt: Functor
    components: Mapping[str, str]  # object of dom -> morphism of cod

    def at(self, x: str) -> str:
        return self.components[x]

    def validate(self) -> None:
        D = self.src.cod
        for x in self.src.dom.objects:
            c = self.components.get(x)
            if c is None or not D.has_mor(c):
                raise MalformedTable(f"nat trans: component at {x} missing")
            if D.src(c) != self.src.obj(x) or D.tgt(c) != self.tgt.obj(x):
                raise MalformedTable(f"nat trans: component at {x} has wrong type")
        for m in self.src.dom.morphisms:
            lhs = D.compose(self.at(m.tgt), self.src.mor(m.name))
            rhs = D.compose(self.tgt.mor(m.name), self.at(m.src))
            if lhs != rhs:
                raise MalformedTable(f"nat trans: naturality fails at {m.name}")

    def key(self) -> str:
        cs = ",".join(f"{x}:{self.at(x)}" for x in self.src.dom.objects)
        return short_id(f"N{{{self.src.key()}=>{self.tgt.key()};{cs}}}")


def vertical_compose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """beta after alpha (componentwise)."""
    D = alpha.src.cod
    return NatTrans(
        alpha.src, beta.tgt,
        {x: D.compose(beta.at(x), alpha.at(x)) for x in alpha.src.dom.objects},
    )


# -- small standard categories (used by tests and the probe suite) ------------


def terminal_cat() -> FinCat:
    return fincat(["*"], [Mor("id_*", "*", "*")], {"*": "id_*"},
                  {("id_*", "id_*"): "id_*"})


def discrete_cat(objects: list[str]) -> FinCat:
    return fincat(
        objects,
        [Mor(f"id_{x}", x, x) for x in objects],
        {x: f"id_{x}" for x in objects},
        {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in objects},
    )


def chain_cat(n: int) -> FinCat:
    """The linear order 0 -> 1 -> ... -> n as a category."""
    objects = [str(i) for i in range(n + 1)]
    morphisms = [Mor(f"id_{x}", x, x) for x in objects]
    identity = {x: f"id_{x}" for x in objects}
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            morphisms.append(Mor(f"a{i}{j}", str(i), str(j)))
    name = {}
    for m in morphisms:
        name[(m.src, m.tgt)] = m.name
    comp = {}
    for f in morphisms:
        for g in morphisms:
            if f.tgt == g.src:
                comp[(g.name, f.name)] = name[(f.src, g.tgt)]
    return fincat(objects, morphisms, identity, comp)


def walking_arrow() -> FinCat:
    return chain_cat(1)


def walking_iso() -> FinCat:
    ms = [Mor("id_a", "a", "a"), Mor("id_b", "b", "b"),
          Mor("u", "a", "b"), Mor("v", "b", "a")]
    comp = {
        ("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b",
        ("u", "id_a"): "u", ("id_b", "u"): "u",
        ("v", "id_b"): "v", ("id_a", "v"): "v",
        ("v", "u"): "id_a", ("u", "v"): "id_b",
    }
    return fincat(["a", "b"], ms, {"a": "id_a", "b": "id_b"}, comp)


def parallel_pair() -> FinCat:
    ms = [Mor("id_a", "a", "a"), Mor("id_b", "b", "b"),
          Mor("u", "a", "b"), Mor("v", "a", "b")]
    comp = {
        ("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b",
        ("u", "id_a"): "u", ("id_b", "u"): "u",
        ("v", "id_a"): "v", ("id_b", "v"): "v",
    }
    return fincat(["a", "b"], ms, {"a": "id_a", "b": "id_b"}, comp)
