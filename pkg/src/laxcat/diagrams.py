"""Strict diagrams of categories and sets over a finite base."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import (
    FinCat,
    Functor,
    MarkedFinCat,
    compose_functors,
    identity_functor,
    opposite,
    opposite_cat,
)
from .constructions import SliceCat, coslice_cat, slice_cat, slice_transition
from .errors import InvalidDiagram


@dataclass
class CatDiagram:
    """A strict functor I -> Cat: a fiber per object, a transition per morphism."""

    base: MarkedFinCat
    fiber: dict[str, FinCat]
    transition: dict[str, Functor]

    def validate(self) -> None:
        I = self.base.cat
        for x in I.objects:
            if x not in self.fiber:
                raise InvalidDiagram(f"no fiber at {x}")
        for m in I.morphisms:
            T = self.transition.get(m.name)
            if T is None:
                raise InvalidDiagram(f"no transition at {m.name}")
            if not (T.dom.same_table(self.fiber[m.src])
                    and T.cod.same_table(self.fiber[m.tgt])):
                raise InvalidDiagram(f"transition at {m.name} has wrong endpoints")
            T.validate()
        for x in I.objects:
            T = self.transition[I.identity[x]]
            if T.object_map != identity_functor(self.fiber[x]).object_map or \
               T.morphism_map != identity_functor(self.fiber[x]).morphism_map:
                raise InvalidDiagram(f"transition at identity of {x} is not id")
        for g, f in I.composable_pairs():
            lhs = self.transition[I.compose(g, f)]
            rhs = compose_functors(self.transition[g], self.transition[f])
            if lhs.object_map != rhs.object_map or lhs.morphism_map != rhs.morphism_map:
                raise InvalidDiagram(f"functoriality fails at ({g}, {f})")


def fiberwise_op(F: CatDiagram) -> CatDiagram:
    """Replace every fiber and transition by its opposite; same base."""
    fibers = {x: opposite_cat(C) for x, C in F.fiber.items()}
    trans = {}
    for m, T in F.transition.items():
        src, tgt = F.base.cat.src(m), F.base.cat.tgt(m)
        trans[m] = Functor(fibers[src], fibers[tgt],
                           dict(T.object_map), dict(T.morphism_map))
    return CatDiagram(F.base, fibers, trans)


def constant_diagram(Im: MarkedFinCat, fiber: FinCat) -> CatDiagram:
    I = Im.cat
    idf = identity_functor(fiber)
    return CatDiagram(Im, {x: fiber for x in I.objects},
                      {m.name: idf for m in I.morphisms})


@dataclass
class MarkedCatDiagram:
    """A strict diagram of marked categories; transitions are marked functors."""

    base: MarkedFinCat
    fiber: dict[str, MarkedFinCat]
    transition: dict[str, Functor]

    def underlying(self) -> CatDiagram:
        return CatDiagram(self.base, {x: F.cat for x, F in self.fiber.items()},
                          dict(self.transition))

    def validate(self) -> None:
        self.underlying().validate()
        I = self.base.cat
        for m in I.morphisms:
            T = self.transition[m.name]
            if not T.is_marked(self.fiber[I.src(m.name)].marked,
                               self.fiber[I.tgt(m.name)].marked):
                raise InvalidDiagram(f"transition at {m.name} is not marked")


# -- slice and coslice diagrams -------------------------------------------------


@dataclass
class SliceDiagram:
    """Functorial (co)slices: a CatDiagram whose fibers decode to SliceCats."""

    diagram: CatDiagram
    slices: dict[str, SliceCat]


def coslice_diagram(Im: MarkedFinCat) -> SliceDiagram:
    """i |-> I_{i/}, contravariant: a CatDiagram over opposite(I)."""
    I = Im.cat
    slices = {i: coslice_cat(Im, i) for i in I.objects}
    trans = {}
    for m in I.morphisms:
        # precomposition I_{tgt/} -> I_{src/} along m, covariant over I^op
        trans[m.name] = slice_transition(Im, slices[m.tgt], slices[m.src], m.name)
    diag = CatDiagram(opposite(Im), {i: slices[i].cat for i in I.objects}, trans)
    diag.validate()
    return SliceDiagram(diag, slices)


def slice_diagram(Im: MarkedFinCat) -> SliceDiagram:
    """i |-> I_{/i}, covariant: a CatDiagram over I."""
    I = Im.cat
    slices = {i: slice_cat(Im, i) for i in I.objects}
    trans = {}
    for m in I.morphisms:
        trans[m.name] = slice_transition(Im, slices[m.src], slices[m.tgt], m.name)
    diag = CatDiagram(Im, {i: slices[i].cat for i in I.objects}, trans)
    diag.validate()
    return SliceDiagram(diag, slices)


# -- set-valued diagrams ---------------------------------------------------------


@dataclass
class SetDiagram:
    """A strict functor base -> Set."""

    base: FinCat
    values: dict[str, tuple]
    action: dict[str, dict]

    def validate(self) -> None:
        B = self.base
        for x in B.objects:
            if x not in self.values:
                raise InvalidDiagram(f"no value set at {x}")
        for m in B.morphisms:
            fn = self.action.get(m.name)
            if fn is None:
                raise InvalidDiagram(f"no action at {m.name}")
            if set(fn) != set(self.values[m.src]):
                raise InvalidDiagram(f"action at {m.name} has wrong domain")
            if not set(fn.values()) <= set(self.values[m.tgt]):
                raise InvalidDiagram(f"action at {m.name} has bad image")
        for x in B.objects:
            fn = self.action[B.identity[x]]
            if any(fn[e] != e for e in self.values[x]):
                raise InvalidDiagram(f"identity action at {x} is not id")
        for g, f in B.composable_pairs():
            gf = self.action[B.compose(g, f)]
            for e in self.values[B.src(f)]:
                if gf[e] != self.action[g][self.action[f][e]]:
                    raise InvalidDiagram(f"functoriality fails at ({g}, {f})")


def restrict_set_diagram(F: SetDiagram, G: Functor) -> SetDiagram:
    """F after G, for G: B -> base(F)."""
    return SetDiagram(
        G.dom,
        {b: F.values[G.obj(b)] for b in G.dom.objects},
        {m.name: F.action[G.mor(m.name)] for m in G.dom.morphisms},
    )
