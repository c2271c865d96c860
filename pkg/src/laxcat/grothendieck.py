"""Covariant and contravariant Grothendieck constructions with induced markings.

The cartesian construction is derived from the cocartesian one via opposites,
so exactly one construction bears the correctness burden.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FinCat,
    Functor,
    MarkedFinCat,
    Mor,
    fincat,
    is_iso,
    opposite,
    opposite_cat,
    opposite_functor,
    short_id,
    validate_marking,
)
from .constructions import (
    DEFAULT_CAPS,
    SizeCaps,
    enumerate_functors,
    enumerate_nat_trans,
    _assemble_funcat,
    FunCat,
)
from .diagrams import CatDiagram, fiberwise_op
from .errors import UnknownMorphism


def total_obj_id(i: str, x: str) -> str:
    return short_id(f"({i}|{x})")


def total_mor_id(phi: str, f: str, x: str) -> str:
    return short_id(f"({phi}|{f}|{x})")


@dataclass
class FiberedCat:
    """A total category fibered over a marked base.

    A morphism is marked iff its fiber component is invertible (the strict
    (co)cartesian condition) and it lies over a marked base morphism.
    """

    total: MarkedFinCat
    proj: Functor  # to base (cocartesian) or to opposite(base) (cartesian)
    base_marked: MarkedFinCat  # the marked category proj lands in
    flavor: str  # "cocartesian" | "cartesian"
    obj_part: dict[str, tuple[str, str]]  # total object -> (base obj, fiber obj)
    fiber_part: dict[str, tuple[str, str]]  # total morphism -> (base mor, fiber mor)
    fiber_of: dict[str, FinCat]  # base obj -> fiber category (from the diagram)


def grothendieck_cocart(F: CatDiagram, caps: SizeCaps = DEFAULT_CAPS) -> FiberedCat:
    """Total category of pairs (i, x); morphisms (phi: i -> j, f: F(phi)x -> y)."""
    F.validate()
    Im = F.base
    I = Im.cat
    objects: list[str] = []
    obj_part: dict[str, tuple[str, str]] = {}
    for i in I.objects:
        for x in F.fiber[i].objects:
            oid = total_obj_id(i, x)
            objects.append(oid)
            obj_part[oid] = (i, x)
    caps.check_objects("grothendieck total", len(objects))

    morphisms: list[Mor] = []
    identity: dict[str, str] = {}
    fiber_part: dict[str, tuple[str, str]] = {}
    srcs: dict[str, str] = {}
    for phi in I.morphisms:
        T = F.transition[phi.name]
        Fj = F.fiber[phi.tgt]
        for x in F.fiber[phi.src].objects:
            fx = T.obj(x)
            for f in Fj.morphisms:
                if Fj.src(f.name) != fx:
                    continue
                mid = total_mor_id(phi.name, f.name, x)
                s = total_obj_id(phi.src, x)
                t = total_obj_id(phi.tgt, f.tgt)
                morphisms.append(Mor(mid, s, t))
                fiber_part[mid] = (phi.name, f.name)
                srcs[mid] = x
                if I.is_identity(phi.name) and Fj.is_identity(f.name):
                    identity[s] = mid
    caps.check_morphisms("grothendieck total", len(morphisms))

    comp = {}
    by_src: dict[str, list[Mor]] = {}
    for m in morphisms:
        by_src.setdefault(m.src, []).append(m)
    for m1 in morphisms:
        phi, f = fiber_part[m1.name]
        for m2 in by_src.get(m1.tgt, []):
            psi, g = fiber_part[m2.name]
            Tpsi = F.transition[psi]
            Fk = F.fiber[I.tgt(psi)]
            comp[(m2.name, m1.name)] = total_mor_id(
                I.compose(psi, phi), Fk.compose(g, Tpsi.mor(f)), srcs[m1.name]
            )
    cat = fincat(objects, morphisms, identity, comp)

    marked = frozenset(
        mid for mid, (phi, f) in fiber_part.items()
        if phi in Im.marked and is_iso(F.fiber[I.tgt(phi)], f)
    )
    validate_marking(cat, marked)
    total = MarkedFinCat(cat, marked)
    proj = Functor(
        cat, I,
        {o: obj_part[o][0] for o in objects},
        {m.name: fiber_part[m.name][0] for m in morphisms},
    )
    proj.validate()
    return FiberedCat(total, proj, Im, "cocartesian", obj_part, fiber_part,
                      dict(F.fiber))


def grothendieck_cart(F: CatDiagram, caps: SizeCaps = DEFAULT_CAPS) -> FiberedCat:
    """Cartesian fibration over opposite(I): the opposite of the cocartesian
    construction applied to the fiberwise-opposite diagram."""
    E = grothendieck_cocart(fiberwise_op(F), caps)
    total = opposite(E.total)
    base_op = opposite(F.base)
    proj = opposite_functor(E.proj, dom_op=total.cat, cod_op=base_op.cat)
    proj.validate()
    return FiberedCat(total, proj, base_op, "cartesian", E.obj_part,
                      E.fiber_part, E.fiber_of)


def is_cocartesian(E: FiberedCat, m: str) -> bool:
    """Strict model: true iff the fiber component of m is an isomorphism.

    For the cartesian flavor this detects cartesian morphisms (the fiber
    components live in the opposite fibers, where invertibility agrees).
    """
    E.total.cat.mor(m)
    phi, f = E.fiber_part[m]
    return is_iso(E.fiber_of[_transition_target(E, phi)], f)


def _transition_target(E: FiberedCat, phi: str) -> str:
    # fiber components of a morphism over phi live in the fiber at tgt(phi),
    # measured in the cocartesian presentation
    if E.flavor == "cocartesian":
        return E.base_marked.cat.tgt(phi)
    return E.base_marked.cat.src(phi)  # base is opposite(I); src here = tgt in I


def strict_fiber(E: FiberedCat, i: str) -> FinCat:
    """The subcategory of the total category over id_i; isomorphic to F(i)."""
    C = E.total.cat
    base = E.base_marked.cat
    objs = [o for o, (j, _) in E.obj_part.items() if j == i]
    ms = [m for m in C.morphisms
          if E.fiber_part[m.name][0] == base.identity[i]]
    names = {m.name for m in ms}
    comp = {(g, f): h for (g, f), h in C.comp.items()
            if g in names and f in names}
    return fincat(objs, ms, {o: C.identity[o] for o in objs}, comp)


# -- sections --------------------------------------------------------------------


def marked_sections(E: FiberedCat, caps: SizeCaps = DEFAULT_CAPS,
                    require_marked: bool = True) -> FunCat:
    """Strict sections of proj that send marked base morphisms into the
    induced marking; morphisms are vertical natural transformations."""
    base = E.base_marked
    total = E.total

    def obj_ok(i: str, e: str) -> bool:
        return E.proj.obj(e) == i

    def gen_ok(g: str, d: str) -> bool:
        return E.proj.mor(d) == g

    sections = []
    for s in enumerate_functors(base.cat, total.cat, obj_filter=obj_ok,
                                gen_filter=gen_ok,
                                max_candidates=caps.max_candidates):
        # generators lie over themselves, hence so do all composites
        if require_marked and not s.is_marked(base.marked, total.marked):
            continue
        sections.append(s)

    caps.check_objects("section category", len(sections))
    by_id = {s.key(): s for s in sections}
    ids = sorted(by_id)
    from .core import vertical_compose

    trans = {}
    morphisms: list[Mor] = []
    identity: dict[str, str] = {}
    idents = {i: base.cat.identity[i] for i in base.cat.objects}
    for sid in ids:
        for tid in ids:
            s, t = by_id[sid], by_id[tid]
            for a in enumerate_nat_trans(
                s, t,
                component_filter=lambda x, c: E.proj.mor(c) == idents[x],
            ):
                nid = a.key()
                trans[nid] = a
                morphisms.append(Mor(nid, sid, tid))
                if sid == tid and all(
                    total.cat.is_identity(a.at(x)) for x in base.cat.objects
                ):
                    identity[sid] = nid
                caps.check_morphisms("section category", len(morphisms))
    comp = {}
    by_src: dict[str, list[Mor]] = {}
    for m in morphisms:
        by_src.setdefault(m.src, []).append(m)
    for m1 in morphisms:
        for m2 in by_src.get(m1.tgt, []):
            comp[(m2.name, m1.name)] = vertical_compose(
                trans[m2.name], trans[m1.name]).key()
    cat = fincat(ids, morphisms, identity, comp)
    return FunCat(cat, by_id, trans)


def all_sections(E: FiberedCat, caps: SizeCaps = DEFAULT_CAPS) -> FunCat:
    """The unmarked section category (as over a flat base)."""
    return marked_sections(E, caps, require_marked=False)


# -- pullbacks -------------------------------------------------------------------


def pullback_fibered(t: Functor, t_marked: MarkedFinCat, E: FiberedCat,
                     caps: SizeCaps = DEFAULT_CAPS) -> FiberedCat:
    """The strict pullback I x_J (total E) with the pullback marking.

    t: I -> J must be a marked functor from t_marked into E.base_marked.
    """
    if E.flavor != "cocartesian":
        raise ValueError("pullback_fibered expects a cocartesian FiberedCat")
    Im = t_marked
    I = Im.cat
    T = E.total.cat
    if not t.is_marked(Im.marked, E.base_marked.marked):
        raise ValueError("t is not a marked functor")

    # ids follow the (base | fiber-component) scheme of grothendieck_cocart so
    # the guaranteed isomorphism with grothendieck_cocart(F∘t) is literal
    objects: list[str] = []
    obj_part: dict[str, tuple[str, str]] = {}
    pair_oid: dict[tuple[str, str], str] = {}
    for i in I.objects:
        for e, (j, x) in E.obj_part.items():
            if j == t.obj(i):
                oid = total_obj_id(i, x)
                objects.append(oid)
                obj_part[oid] = (i, x)
                pair_oid[(i, e)] = oid
    caps.check_objects("pullback total", len(objects))

    def mor_id(phi: str, m: str) -> str:
        return total_mor_id(phi, E.fiber_part[m][1],
                            E.obj_part[T.src(m)][1])

    morphisms: list[Mor] = []
    identity: dict[str, str] = {}
    parts: dict[str, tuple[str, str]] = {}
    for phi in I.morphisms:
        for m in T.morphisms:
            if E.proj.mor(m.name) != t.mor(phi.name):
                continue
            mid = mor_id(phi.name, m.name)
            s = pair_oid[(phi.src, m.src)]
            tt = pair_oid[(phi.tgt, m.tgt)]
            morphisms.append(Mor(mid, s, tt))
            parts[mid] = (phi.name, m.name)
            if I.is_identity(phi.name) and T.is_identity(m.name):
                identity[s] = mid
    caps.check_morphisms("pullback total", len(morphisms))

    comp = {}
    by_src: dict[str, list[Mor]] = {}
    for m in morphisms:
        by_src.setdefault(m.src, []).append(m)
    for m1 in morphisms:
        p1, e1 = parts[m1.name]
        for m2 in by_src.get(m1.tgt, []):
            p2, e2 = parts[m2.name]
            comp[(m2.name, m1.name)] = mor_id(
                I.compose(p2, p1), T.compose(e2, e1))
    cat = fincat(objects, morphisms, identity, comp)
    marked = frozenset(
        mid for mid, (phi, m) in parts.items()
        if phi in Im.marked and m in E.total.marked
    )
    validate_marking(cat, marked)
    proj = Functor(cat, I,
                   {o: obj_part[o][0] for o in objects},
                   {m.name: parts[m.name][0] for m in morphisms})
    proj.validate()
    # fiber components transport from E so cocartesian detection still works
    fiber_part = {mid: (phi, E.fiber_part[m][1]) for mid, (phi, m) in parts.items()}
    fiber_of = {i: E.fiber_of[t.obj(i)] for i in I.objects}
    return FiberedCat(MarkedFinCat(cat, marked), proj, Im, "cocartesian",
                      obj_part, fiber_part, fiber_of)
