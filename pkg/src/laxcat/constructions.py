"""Derived categories: twisted arrows, slices, functor categories.

Derived object ids are canonical serializations of their content, so goldens
are diffable and stable across runs.  Enumeration order is by object id, then
by morphism id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .core import (
    FinCat,
    Functor,
    MarkedFinCat,
    Mor,
    NatTrans,
    fincat,
    compose_functors,
    opposite_cat,
    short_id,
    validate_marking,
)
from .errors import SizeBoundExceeded, UnknownObject


@dataclass(frozen=True)
class SizeCaps:
    """Caps on derived categories; fail loudly, never truncate silently."""

    max_objects: int = 64
    max_morphisms: int = 512
    # hard ceiling on raw functor candidates explored per functor category
    max_candidates: int = 200_000

    def check_objects(self, what: str, n: int) -> None:
        if n > self.max_objects:
            raise SizeBoundExceeded(what, "object", n, self.max_objects)

    def check_morphisms(self, what: str, n: int) -> None:
        if n > self.max_morphisms:
            raise SizeBoundExceeded(what, "morphism", n, self.max_morphisms)


DEFAULT_CAPS = SizeCaps()


# -- generating data -----------------------------------------------------------


def generating_morphisms(C: FinCat) -> tuple[list[str], dict[str, tuple[str, ...]]]:
    """A generating set plus a decomposition word for every morphism.

    Words are in diagram order: word (f, g) denotes g after f.  Identities
    decompose as the empty word at their object.
    """
    words: dict[str, tuple[str, ...]] = {
        C.identity[x]: () for x in C.objects
    }
    gens: list[str] = []

    def close() -> None:
        changed = True
        while changed:
            changed = False
            for (g, f), h in C.comp.items():
                if h not in words and g in words and f in words:
                    words[h] = words[f] + words[g]
                    changed = True

    for m in C.morphisms:
        if m.name not in words:
            gens.append(m.name)
            words[m.name] = (m.name,)
            close()
    return gens, words


# -- functor enumeration --------------------------------------------------------


def enumerate_functors(
    C: FinCat,
    D: FinCat,
    obj_filter: Callable[[str, str], bool] | None = None,
    gen_filter: Callable[[str, str], bool] | None = None,
    max_candidates: int = DEFAULT_CAPS.max_candidates,
) -> Iterator[Functor]:
    """All functors C -> D, by backtracking over objects then generators.

    obj_filter / gen_filter prune assignments early; both default to no
    constraint.  Raises SizeBoundExceeded if the explored candidate count
    passes max_candidates.
    """
    gens, words = generating_morphisms(C)
    objs = list(C.objects)
    explored = 0

    def assign_objects(i: int, omap: dict[str, str]) -> Iterator[dict[str, str]]:
        nonlocal explored
        if i == len(objs):
            yield dict(omap)
            return
        x = objs[i]
        for y in D.objects:
            if obj_filter is not None and not obj_filter(x, y):
                continue
            explored += 1
            if explored > max_candidates:
                raise SizeBoundExceeded("functor enumeration", "candidate",
                                        explored, max_candidates)
            omap[x] = y
            yield from assign_objects(i + 1, omap)
            del omap[x]

    def eval_word(word: tuple[str, ...], gmap: dict[str, str], x: str,
                  omap: dict[str, str]) -> str:
        cur = D.identity[omap[x]]
        for w in word:
            cur = D.compose(gmap[w], cur)
        return cur

    for omap in assign_objects(0, {}):

        def assign_gens(i: int, gmap: dict[str, str]) -> Iterator[dict[str, str]]:
            nonlocal explored
            if i == len(gens):
                yield dict(gmap)
                return
            g = gens[i]
            gs, gt = C.src(g), C.tgt(g)
            for d in D.hom(omap[gs], omap[gt]):
                if gen_filter is not None and not gen_filter(g, d):
                    continue
                explored += 1
                if explored > max_candidates:
                    raise SizeBoundExceeded("functor enumeration", "candidate",
                                            explored, max_candidates)
                gmap[g] = d
                yield from assign_gens(i + 1, gmap)
                del gmap[g]

        for gmap in assign_gens(0, {}):
            mmap = {
                m.name: eval_word(words[m.name], gmap, m.src, omap)
                for m in C.morphisms
            }
            ok = True
            for (g, f), h in C.comp.items():
                if mmap[h] != D.compose(mmap[g], mmap[f]):
                    ok = False
                    break
            if ok:
                yield Functor(C, D, omap, mmap)


def enumerate_nat_trans(
    F: Functor,
    G: Functor,
    component_filter: Callable[[str, str], bool] | None = None,
) -> Iterator[NatTrans]:
    """All natural transformations F => G, with early naturality pruning."""
    C, D = F.dom, F.cod
    objs = list(C.objects)
    index = {x: i for i, x in enumerate(objs)}
    # morphisms whose naturality square can be checked once both endpoints
    # are assigned; keyed by the later endpoint
    squares: dict[int, list[str]] = {i: [] for i in range(len(objs))}
    for m in C.morphisms:
        squares[max(index[m.src], index[m.tgt])].append(m.name)

    def rec(i: int, comps: dict[str, str]) -> Iterator[NatTrans]:
        if i == len(objs):
            yield NatTrans(F, G, dict(comps))
            return
        x = objs[i]
        for c in D.hom(F.obj(x), G.obj(x)):
            if component_filter is not None and not component_filter(x, c):
                continue
            comps[x] = c
            good = True
            for m in squares[i]:
                if D.compose(comps[C.tgt(m)], F.mor(m)) != D.compose(
                    G.mor(m), comps[C.src(m)]
                ):
                    good = False
                    break
            if good:
                yield from rec(i + 1, comps)
            del comps[x]

    yield from rec(0, {})


# -- functor categories ----------------------------------------------------------


@dataclass
class FunCat:
    """A functor category together with decodings of its ids."""

    cat: FinCat
    functors: dict[str, Functor]
    transformations: dict[str, NatTrans]

    def functor_id(self, F: Functor) -> str:
        return F.key()

    def nat_id(self, a: NatTrans) -> str:
        return a.key()


def _assemble_funcat(functors: list[Functor], D: FinCat, what: str,
                     caps: SizeCaps) -> FunCat:
    caps.check_objects(what, len(functors))
    by_id = {F.key(): F for F in functors}
    ids = sorted(by_id)
    trans: dict[str, NatTrans] = {}
    morphisms: list[Mor] = []
    identity: dict[str, str] = {}
    for fid in ids:
        F = by_id[fid]
        for gid in ids:
            G = by_id[gid]
            for a in enumerate_nat_trans(F, G):
                nid = a.key()
                trans[nid] = a
                morphisms.append(Mor(nid, fid, gid))
                if fid == gid and all(
                    D.is_identity(a.at(x)) for x in F.dom.objects
                ):
                    identity[fid] = nid
                caps.check_morphisms(what, len(morphisms))
    comp = {}
    by_src: dict[str, list[str]] = {}
    for m in morphisms:
        by_src.setdefault(m.src, []).append(m.name)
    # composites resolve through a component-tuple index instead of building
    # a NatTrans and serializing its id for every composable pair
    obj_order = functors[0].dom.objects if functors else ()
    mtgt = {m.name: m.tgt for m in morphisms}
    comp_tuple = {m.name: tuple(trans[m.name].components[x] for x in obj_order)
                  for m in morphisms}
    index = {(m.src, mtgt[m.name], comp_tuple[m.name]): m.name
             for m in morphisms}
    dcomp = D.comp
    for m in morphisms:
        t1 = comp_tuple[m.name]
        for nid in by_src.get(m.tgt, []):
            t2 = comp_tuple[nid]
            comp[(nid, m.name)] = index[(
                m.src, mtgt[nid],
                tuple(dcomp[(b, a)] for a, b in zip(t1, t2)))]
    cat = fincat(ids, morphisms, identity, comp, check=False)
    return FunCat(cat, by_id, trans)


def functor_category(C: FinCat, D: FinCat, caps: SizeCaps = DEFAULT_CAPS) -> FunCat:
    """Objects: all functors C -> D; morphisms: all natural transformations."""
    functors = list(enumerate_functors(C, D, max_candidates=caps.max_candidates))
    return _assemble_funcat(functors, D, f"Fun({C.n_objects}o,{D.n_objects}o)", caps)


def marked_functor_category(
    Cm: MarkedFinCat, Dm: MarkedFinCat, caps: SizeCaps = DEFAULT_CAPS
) -> FunCat:
    """Full subcategory of functor_category(C, D) on the marked functors."""
    C, D = Cm.cat, Dm.cat

    def gen_ok(g: str, d: str) -> bool:
        # necessary condition only; closure can mark composites of unmarked
        # generators, so a full filter still runs below
        return g not in Cm.marked or d in Dm.marked

    functors = [
        F
        for F in enumerate_functors(C, D, gen_filter=gen_ok,
                                    max_candidates=caps.max_candidates)
        if F.is_marked(Cm.marked, Dm.marked)
    ]
    return _assemble_funcat(functors, D, "Fun†", caps)


# -- twisted arrow category -------------------------------------------------------


@dataclass
class TwistedArrowCat:
    cat: FinCat
    base: FinCat
    proj_src: Functor  # to base, first coordinate (covariant)
    proj_tgt: Functor  # to opposite(base), second coordinate
    legs: dict[str, tuple[str, str]]  # morphism id -> (a, b)


def tw_mor_id(a: str, b: str, f: str, f2: str) -> str:
    return short_id(f"({a}|{b}):{f}>{f2}")


def twisted_arrow(I: FinCat, caps: SizeCaps = DEFAULT_CAPS) -> TwistedArrowCat:
    """Objects are the morphisms of I; morphisms f -> f' are twisted squares
    (a: src f -> src f', b: tgt f' -> tgt f) with b(f'a) = f."""
    objects = [m.name for m in I.morphisms]
    caps.check_objects("twisted arrow", len(objects))
    morphisms: list[Mor] = []
    identity: dict[str, str] = {}
    legs: dict[str, tuple[str, str]] = {}
    for f in I.morphisms:
        for f2 in I.morphisms:
            for a in I.hom(f.src, f2.src):
                fa = I.compose(f2.name, a)
                for b in I.hom(f2.tgt, f.tgt):
                    if I.compose(b, fa) != f.name:
                        continue
                    mid = tw_mor_id(a, b, f.name, f2.name)
                    morphisms.append(Mor(mid, f.name, f2.name))
                    legs[mid] = (a, b)
                    if f.name == f2.name and I.is_identity(a) and I.is_identity(b):
                        identity[f.name] = mid
    caps.check_morphisms("twisted arrow", len(morphisms))
    comp = {}
    by_src: dict[str, list[Mor]] = {}
    for m in morphisms:
        by_src.setdefault(m.src, []).append(m)
    for m1 in morphisms:
        a1, b1 = legs[m1.name]
        for m2 in by_src.get(m1.tgt, []):
            a2, b2 = legs[m2.name]
            comp[(m2.name, m1.name)] = tw_mor_id(
                I.compose(a2, a1), I.compose(b1, b2), m1.src, m2.tgt
            )
    cat = fincat(objects, morphisms, identity, comp)
    proj_src = Functor(
        cat, I,
        {f: I.src(f) for f in objects},
        {m.name: legs[m.name][0] for m in morphisms},
    )
    proj_tgt = Functor(
        cat, opposite_cat(I),
        {f: I.tgt(f) for f in objects},
        {m.name: legs[m.name][1] for m in morphisms},
    )
    proj_src.validate()
    proj_tgt.validate()
    return TwistedArrowCat(cat, I, proj_src, proj_tgt, legs)


# -- slices and coslices ------------------------------------------------------------


@dataclass
class SliceCat:
    """I_{/i} or I_{i/} with the marking pulled back along the forgetful functor."""

    marked: MarkedFinCat
    forget: Functor  # to the underlying base category
    base_object: str
    kind: str  # "slice" | "coslice"
    witness: dict[str, str]  # slice morphism id -> underlying morphism of I

    @property
    def cat(self) -> FinCat:
        return self.marked.cat


def slice_mor_id(a: str, f: str, g: str) -> str:
    return short_id(f"({a}):{f}>{g}")


def _slice_like(Im: MarkedFinCat, i: str, kind: str) -> SliceCat:
    I = Im.cat
    if i not in I.objects:
        raise UnknownObject(i)
    if kind == "slice":
        objects = [m.name for m in I.morphisms if m.tgt == i]
    else:
        objects = [m.name for m in I.morphisms if m.src == i]
    morphisms: list[Mor] = []
    identity: dict[str, str] = {}
    witness: dict[str, str] = {}
    for f in objects:
        for g in objects:
            if kind == "slice":
                # a: src f -> src g with g a = f
                cands = [a for a in I.hom(I.src(f), I.src(g))
                         if I.compose(g, a) == f]
            else:
                # a: tgt f -> tgt g with a f = g
                cands = [a for a in I.hom(I.tgt(f), I.tgt(g))
                         if I.compose(a, f) == g]
            for a in cands:
                mid = slice_mor_id(a, f, g)
                morphisms.append(Mor(mid, f, g))
                witness[mid] = a
                if f == g and I.is_identity(a):
                    identity[f] = mid
    comp = {}
    by_src: dict[str, list[Mor]] = {}
    for m in morphisms:
        by_src.setdefault(m.src, []).append(m)
    for m1 in morphisms:
        for m2 in by_src.get(m1.tgt, []):
            comp[(m2.name, m1.name)] = slice_mor_id(
                I.compose(witness[m2.name], witness[m1.name]), m1.src, m2.tgt
            )
    cat = fincat(objects, morphisms, identity, comp)
    mk = frozenset(m for m in witness if witness[m] in Im.marked)
    validate_marking(cat, mk)
    forget = Functor(
        cat, I,
        {f: (I.src(f) if kind == "slice" else I.tgt(f)) for f in objects},
        dict(witness),
    )
    forget.validate()
    return SliceCat(MarkedFinCat(cat, mk), forget, i, kind, witness)


def slice_cat(Im: MarkedFinCat, i: str) -> SliceCat:
    """I_{/i}: morphisms into i."""
    return _slice_like(Im, i, "slice")


def coslice_cat(Im: MarkedFinCat, i: str) -> SliceCat:
    """I_{i/}: morphisms out of i."""
    return _slice_like(Im, i, "coslice")


def slice_transition(Im: MarkedFinCat, sl_from: SliceCat, sl_to: SliceCat,
                     a: str) -> Functor:
    """Postcomposition I_{/x} -> I_{/y} along a: x -> y (slice kind), or
    precomposition I_{x/} -> I_{y/} along a: y -> x (coslice kind)."""
    I = Im.cat
    if sl_from.kind == "slice":
        omap = {f: I.compose(a, f) for f in sl_from.cat.objects}
    else:
        omap = {f: I.compose(f, a) for f in sl_from.cat.objects}
    mmap = {}
    for m in sl_from.cat.morphisms:
        w = sl_from.witness[m.name]
        mmap[m.name] = slice_mor_id(w, omap[m.src], omap[m.tgt])
    F = Functor(sl_from.cat, sl_to.cat, omap, mmap)
    F.validate()
    return F
