"""Seeded theorem checks with counterexample dumps.

Each check generates random instances, runs a comparison whose two sides are
computed independently, and reports pass/fail/skip per instance.  Skips come
only from resource bounds, never from falsified comparisons.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field, replace
from typing import Callable

from .core import (
    FinCat,
    Functor,
    MarkedFinCat,
    Mor,
    chain_cat,
    discrete_cat,
    fincat,
    flat_marking,
    parallel_pair,
    product,
    saturate_marking,
    sharp_marking,
    terminal_cat,
    validate_marking,
    walking_iso,
)
from .constructions import DEFAULT_CAPS, SizeCaps, enumerate_functors, twisted_arrow
from .diagrams import CatDiagram, MarkedCatDiagram, restrict_set_diagram
from .equiv import is_equivalent, is_fully_faithful, is_isomorphic
from .errors import (
    GenerationExhausted,
    LaxcatError,
    SearchBudgetExceeded,
    SizeBoundExceeded,
)
from .generator import GenParams, gen_category, gen_diagram, gen_marking, gen_set_diagram
from .grothendieck import (
    all_sections,
    grothendieck_cart,
    grothendieck_cocart,
    marked_sections,
    pullback_fibered,
)
from .io_formats import canonical_json, category_to_data, diagram_to_data
from .limits import (
    cat_limit,
    cat_limit_map,
    iso_comma,
    lax_limit,
    marked_cat_limit,
    oplax_limit,
    set_colimit,
    set_limit,
)
from .localization import (
    Bounds,
    _product_functor,
    check_localization_up,
    localize,
    probe_check_colimit_theorem,
)


def _nonposet5() -> FinCat:
    # two objects, a non-identity idempotent, and a parallel pair through it
    ms = [Mor("id_0", "0", "0"), Mor("id_1", "1", "1"), Mor("e", "0", "0"),
          Mor("u", "0", "1"), Mor("v", "0", "1")]
    comp = {("e", "e"): "e", ("u", "e"): "u", ("v", "e"): "v"}
    for n in ("e", "u", "v"):
        comp[(n, "id_0")] = n
    comp[("id_1", "u")] = "u"
    comp[("id_1", "v")] = "v"
    comp[("id_0", "e")] = "e"
    comp[("id_0", "id_0")] = "id_0"
    comp[("id_1", "id_1")] = "id_1"
    return fincat(["0", "1"], ms, {"0": "id_0", "1": "id_1"}, comp)


def probe_suite() -> dict[str, FinCat]:
    return {
        "terminal": terminal_cat(),
        "discrete2": discrete_cat(["a", "b"]),
        "arrow": chain_cat(1),
        "iso": walking_iso(),
        "chain2": chain_cat(2),
        "parallel": parallel_pair(),
        "nonposet5": _nonposet5(),
    }


def _cospan_cat() -> FinCat:
    ms = [Mor("id_a", "a", "a"), Mor("id_b", "b", "b"), Mor("id_c", "c", "c"),
          Mor("f", "a", "c"), Mor("g", "b", "c")]
    comp = {("id_c", "f"): "f", ("f", "id_a"): "f",
            ("id_c", "g"): "g", ("g", "id_b"): "g",
            ("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b",
            ("id_c", "id_c"): "id_c"}
    return fincat(["a", "b", "c"], ms,
                  {"a": "id_a", "b": "id_b", "c": "id_c"}, comp)


# check runs get roomier caps than interactive construction; probe functor
# categories routinely outgrow the 64/512 defaults without being infeasible
CHECK_CAPS = SizeCaps(max_objects=2048, max_morphisms=32768,
                      max_candidates=1_000_000)


@dataclass
class Ctx:
    caps: SizeCaps = CHECK_CAPS
    bounds: Bounds = field(default_factory=Bounds)
    probes: dict[str, FinCat] = field(default_factory=probe_suite)


@dataclass
class Failure:
    kind: str  # "diagram" | "category" | ...
    data: dict
    reason: str
    reeval: Callable | None = None  # instance -> True iff the failure persists


_SKIP_ERRORS = (SizeBoundExceeded, SearchBudgetExceeded, GenerationExhausted)


def _gen_instance(p: GenParams):
    C = gen_category(p)
    M = gen_marking(C, p)
    return gen_diagram(M, p)


# -- individual checks ------------------------------------------------------------


def _lax_lim_agrees(F: CatDiagram, caps: SizeCaps) -> bool:
    lax = lax_limit(F, caps)
    secs = marked_sections(grothendieck_cocart(F, caps), caps)
    return bool(is_equivalent(lax.cat, secs.cat))


def _oplax_lim_agrees(F: CatDiagram, caps: SizeCaps) -> bool:
    opl = oplax_limit(F, caps)
    secs = marked_sections(grothendieck_cart(F, caps), caps)
    return bool(is_equivalent(opl.cat, secs.cat))


def _check_thm_lax_lim(p: GenParams, ctx: Ctx):
    F = _gen_instance(p)
    if _lax_lim_agrees(F, ctx.caps):
        return "pass", None
    return "fail", Failure("diagram", diagram_to_data(F),
                           "end-formula lax limit not equivalent to marked sections",
                           lambda d: not _lax_lim_agrees(d, ctx.caps))


def _check_thm_oplax_lim(p: GenParams, ctx: Ctx):
    F = _gen_instance(p)
    if _oplax_lim_agrees(F, ctx.caps):
        return "pass", None
    return "fail", Failure("diagram", diagram_to_data(F),
                           "oplax limit not equivalent to cartesian marked sections",
                           lambda d: not _oplax_lim_agrees(d, ctx.caps))


def _colim_probe_ok(F: CatDiagram, ctx: Ctx, cartesian: bool) -> tuple[bool, str]:
    v = probe_check_colimit_theorem(F, ctx.probes, ctx.caps, cartesian=cartesian)
    if not v.ok:
        return False, f"mapping-out comparison failed: {v.failures}"
    E = grothendieck_cart(F, ctx.caps) if cartesian else grothendieck_cocart(F, ctx.caps)
    r = localize(E.total, ctx.bounds)
    if r.ok:
        up = check_localization_up(E.total, r, ctx.probes, ctx.caps)
        if not up.ok:
            return False, f"localization universal property failed: {up.failures}"
    return True, ""


def _check_thm_lax_colim_probe(p: GenParams, ctx: Ctx):
    F = _gen_instance(p)
    ok, reason = _colim_probe_ok(F, ctx, cartesian=False)
    if ok:
        return "pass", None
    return "fail", Failure("diagram", diagram_to_data(F), reason,
                           lambda d: not _colim_probe_ok(d, ctx, False)[0])


def _check_thm_oplax_colim_probe(p: GenParams, ctx: Ctx):
    F = _gen_instance(p)
    ok, reason = _colim_probe_ok(F, ctx, cartesian=True)
    if ok:
        return "pass", None
    return "fail", Failure("diagram", diagram_to_data(F), reason,
                           lambda d: not _colim_probe_ok(d, ctx, True)[0])


def _sharp_collapse_ok(F: CatDiagram, caps: SizeCaps) -> bool:
    lax = lax_limit(F, caps)
    opl = oplax_limit(F, caps)
    I = F.base.cat
    if I.n_objects == 2:  # arrow shape: pseudo-limit is the source fiber
        oracle = F.fiber[I.objects[0]]
    else:  # cospan shape: pseudo-limit is the iso-comma category
        oracle = iso_comma(F.transition["f"], F.transition["g"], caps)
    return bool(is_equivalent(lax.cat, opl.cat)) \
        and bool(is_equivalent(lax.cat, oracle))


def _check_prop_sharp_limit(p: GenParams, ctx: Ctx):
    shape = chain_cat(1) if p.seed % 2 == 0 else _cospan_cat()
    F = gen_diagram(sharp_marking(shape), p)
    if _sharp_collapse_ok(F, ctx.caps):
        return "pass", None
    return "fail", Failure("diagram", diagram_to_data(F),
                           "sharp lax/oplax limit does not collapse to the pseudo-limit",
                           lambda d: not _sharp_collapse_ok(d, ctx.caps))


def _ghn_flat_ok(F: CatDiagram, caps: SizeCaps, bounds: Bounds) -> bool:
    lax = lax_limit(F, caps)
    E = grothendieck_cocart(F, caps)
    if not is_equivalent(lax.cat, all_sections(E, caps).cat):
        return False
    r = localize(E.total, bounds)
    return r.ok and bool(is_equivalent(r.cat, E.total.cat))


def _check_ghn_flat(p: GenParams, ctx: Ctx):
    C = gen_category(p)
    F = gen_diagram(flat_marking(C), p)
    if _ghn_flat_ok(F, ctx.caps, ctx.bounds):
        return "pass", None
    return "fail", Failure("diagram", diagram_to_data(F),
                           "flat reduction failed (full sections or identity localization)",
                           lambda d: not _ghn_flat_ok(d, ctx.caps, ctx.bounds))


def _cofinal_left_ok(S, caps: SizeCaps) -> bool:
    tw = twisted_arrow(S.base, caps)
    R = restrict_set_diagram(S, tw.proj_src)
    cls_s = set_colimit(S)
    cls_r = set_colimit(R)
    # the projection must induce a well-defined bijection on colimit classes
    induced: dict[int, int] = {}
    for (f, e), c in cls_r.items():
        target = cls_s[(tw.proj_src.obj(f), e)]
        if induced.setdefault(c, target) != target:
            return False
    return len(induced) == len(set(cls_s.values())) \
        and len(set(induced.values())) == len(induced)


def _cofinal_right_ok(S, caps: SizeCaps) -> bool:
    tw = twisted_arrow(S.base, caps)
    R = restrict_set_diagram(S, tw.proj_src)
    lim_s = set_limit(S)
    lim_r = set_limit(R)
    objs_s = sorted(S.base.objects)
    objs_r = sorted(tw.cat.objects)
    restricted = set()
    for fam in lim_s:
        by_obj = dict(zip(objs_s, fam))
        restricted.add(tuple(by_obj[tw.proj_src.obj(f)] for f in objs_r))
    return len(restricted) == len(lim_s) and restricted == set(map(tuple, lim_r))


def _check_cofinality(p: GenParams, ctx: Ctx, side: str):
    C = gen_category(p)
    S = gen_set_diagram(C, p)
    ok = _cofinal_left_ok(S, ctx.caps) if side == "left" \
        else _cofinal_right_ok(S, ctx.caps)
    if ok:
        return "pass", None
    data = {"category": category_to_data(C),
            "values": {x: list(v) for x, v in S.values.items()},
            "action": {m: {str(k): v for k, v in f.items()}
                       for m, f in S.action.items()}}
    return "fail", Failure("set-diagram", data,
                           f"{side} cofinality of the twisted-arrow projection failed")


def _gen_marked_diagram(M: MarkedFinCat, p: GenParams) -> MarkedCatDiagram:
    import random

    F = gen_diagram(M, p)
    rng = random.Random(("fibmark", p.seed).__repr__())
    I = F.base.cat
    picks = {x: {m.name for m in F.fiber[x].morphisms
                 if rng.random() < p.marking_density}
             for x in I.objects}
    changed = True
    while changed:
        changed = False
        for x in I.objects:
            sat = saturate_marking(F.fiber[x], frozenset(picks[x]))
            if sat - picks[x]:
                picks[x] |= sat
                changed = True
        for m in I.morphisms:
            T = F.transition[m.name]
            img = {T.mor(f) for f in picks[m.src]}
            if img - picks[m.tgt]:
                picks[m.tgt] |= img
                changed = True
    fibers = {x: MarkedFinCat(F.fiber[x], frozenset(picks[x]))
              for x in I.objects}
    d = MarkedCatDiagram(F.base, fibers, F.transition)
    d.validate()
    return d


def _marked_limit_ok(p: GenParams, ctx: Ctx) -> bool:
    from .core import pair_id
    from .limits import _family_mor_id, _family_obj_id

    C = gen_category(p)
    M = gen_marking(C, p)
    Fm = _gen_marked_diagram(M, p)
    Gm = _gen_marked_diagram(M, replace(p, seed=p.seed + 1))
    I = M.cat
    # componentwise marking is a valid marking (validate_marking raises otherwise)
    limF, resF = marked_cat_limit(Fm, ctx.caps)
    limG, resG = marked_cat_limit(Gm, ctx.caps)
    # binary products: limit of the pointwise product vs product of limits
    fibers = {x: product(Fm.fiber[x], Gm.fiber[x]) for x in I.objects}
    trans = {m.name: _product_functor(fibers[m.src], fibers[m.tgt],
                                      Fm.transition[m.name], Gm.transition[m.name])
             for m in I.morphisms}
    Hm = MarkedCatDiagram(Fm.base, fibers, trans)
    limH, resH = marked_cat_limit(Hm, ctx.caps)
    P = product(limF, limG)
    if P.cat.n_objects != limH.cat.n_objects \
            or len(P.cat.morphisms) != len(limH.cat.morphisms):
        return False
    # match pairs of families with families of pairs
    omap = {}
    for oF in limF.cat.objects:
        for oG in limG.cat.objects:
            fam = {b: pair_id(resF.obj_family[oF][b], resG.obj_family[oG][b])
                   for b in I.objects}
            omap[pair_id(oF, oG)] = _family_obj_id(fam)
    mmap = {}
    for mF in limF.cat.morphisms:
        for mG in limG.cat.morphisms:
            fam = {b: pair_id(resF.mor_family[mF.name][b],
                              resG.mor_family[mG.name][b]) for b in I.objects}
            mmap[pair_id(mF.name, mG.name)] = _family_mor_id(fam)
    try:
        iso = Functor(P.cat, limH.cat, omap, mmap)
        iso.validate()
    except LaxcatError:
        return False
    if len(set(mmap.values())) != len(mmap):
        return False
    return all((m in P.marked) == (mmap[m] in limH.marked) for m in mmap)


def _check_marked_limit(p: GenParams, ctx: Ctx):
    if _marked_limit_ok(p, ctx):
        return "pass", None
    return "fail", Failure("params", {"seed": p.seed},
                           "marked limit marking invalid or not compatible with products")


def _restricted_diagram(F: CatDiagram, t: Functor, Im: MarkedFinCat) -> CatDiagram:
    I = Im.cat
    return CatDiagram(Im, {i: F.fiber[t.obj(i)] for i in I.objects},
                      {m.name: F.transition[t.mor(m.name)] for m in I.morphisms})


def _pullback_ok(p: GenParams, ctx: Ctx) -> bool:
    import random

    F = _gen_instance(p)
    Jm = F.base
    rng = random.Random(("pullback", p.seed).__repr__())
    q = replace(p, seed=p.seed + 7, max_objects=3, max_morphisms=6)
    C = gen_category(q)
    Im = gen_marking(C, q)
    cands = [t for t in enumerate_functors(Im.cat, Jm.cat,
                                           max_candidates=ctx.caps.max_candidates)
             if t.is_marked(Im.marked, Jm.marked)]
    if not cands:
        Im = Jm
        t = Functor(Jm.cat, Jm.cat,
                    {x: x for x in Jm.cat.objects},
                    {m.name: m.name for m in Jm.cat.morphisms})
    else:
        t = cands[rng.randrange(len(cands))]
    E = grothendieck_cocart(F, ctx.caps)
    PB = pullback_fibered(t, Im, E, ctx.caps)
    G = _restricted_diagram(F, t, Im)
    EG = grothendieck_cocart(G, ctx.caps)
    return PB.total.cat.same_table(EG.total.cat) \
        and PB.total.marked == EG.total.marked


def _check_pullback_remark(p: GenParams, ctx: Ctx):
    if _pullback_ok(p, ctx):
        return "pass", None
    return "fail", Failure("params", {"seed": p.seed},
                           "pullback of the fibration differs from the restricted construction")


def _ff_lemma_ok(p: GenParams, ctx: Ctx) -> bool:
    import random

    from .equiv import iso_classes

    F = _gen_instance(p)
    I = F.base.cat
    rng = random.Random(("ff", p.seed).__repr__())
    chosen = {x: {o for o in F.fiber[x].objects if rng.random() < 0.6}
              for x in I.objects}
    # close under transitions and under isomorphism (replete full subcategories)
    changed = True
    while changed:
        changed = False
        for x in I.objects:
            classes = iso_classes(F.fiber[x])
            closure = {o for o in F.fiber[x].objects
                       if any(classes[o] == classes[c] for c in chosen[x])}
            if closure - chosen[x]:
                chosen[x] = closure
                changed = True
        for m in I.morphisms:
            T = F.transition[m.name]
            img = {T.obj(o) for o in chosen[m.src]}
            if img - chosen[m.tgt]:
                chosen[m.tgt] |= img
                changed = True

    def full_sub(C: FinCat, objs: set[str]) -> FinCat:
        ms = [m for m in C.morphisms if m.src in objs and m.tgt in objs]
        keep = {m.name for m in ms}
        return fincat(sorted(objs), ms,
                      {x: C.identity[x] for x in objs},
                      {k: v for k, v in C.comp.items()
                       if k[0] in keep and k[1] in keep})

    subfibers = {x: full_sub(F.fiber[x], chosen[x]) for x in I.objects}
    subtrans = {}
    for m in I.morphisms:
        T = F.transition[m.name]
        subtrans[m.name] = Functor(
            subfibers[m.src], subfibers[m.tgt],
            {o: T.obj(o) for o in subfibers[m.src].objects},
            {mm.name: T.mor(mm.name) for mm in subfibers[m.src].morphisms})
    G = CatDiagram(F.base, subfibers, subtrans)
    G.validate()
    limF = cat_limit(F, ctx.caps)
    limG = cat_limit(G, ctx.caps)
    eta = {x: Functor(subfibers[x], F.fiber[x],
                      {o: o for o in subfibers[x].objects},
                      {mm.name: mm.name for mm in subfibers[x].morphisms})
           for x in I.objects}
    inc = cat_limit_map(eta, limG, limF)
    if not is_fully_faithful(inc):
        return False
    # essential image is detected componentwise
    image = {inc.obj(o) for o in limG.cat.objects}
    classes = iso_classes(limF.cat)
    in_image = {o: any(classes[o] == classes[i] for i in image)
                for o in limF.cat.objects}
    for o in limF.cat.objects:
        componentwise = all(limF.obj_family[o][x] in chosen[x] for x in I.objects)
        if in_image[o] != componentwise:
            return False
    return True


def _check_ff_lemma(p: GenParams, ctx: Ctx):
    if _ff_lemma_ok(p, ctx):
        return "pass", None
    return "fail", Failure("params", {"seed": p.seed},
                           "limit of full inclusions not fully faithful with componentwise image")


def _monotonicity_ok(p: GenParams, ctx: Ctx) -> bool:
    import random

    C = gen_category(p)
    M1 = gen_marking(C, p)
    rng = random.Random(("mono", p.seed).__repr__())
    extra = {m.name for m in C.morphisms if rng.random() < 0.4}
    M2 = MarkedFinCat(C, saturate_marking(C, M1.marked | frozenset(extra)))
    F = gen_diagram(M1, p)
    F2 = CatDiagram(M2, F.fiber, F.transition)
    s1 = marked_sections(grothendieck_cocart(F, ctx.caps), ctx.caps)
    s2 = marked_sections(grothendieck_cocart(F2, ctx.caps), ctx.caps)
    objs1 = set(s1.cat.objects)
    objs2 = set(s2.cat.objects)
    if not objs2 <= objs1:
        return False
    hom1 = {(m.src, m.tgt, m.name) for m in s1.cat.morphisms
            if m.src in objs2 and m.tgt in objs2}
    hom2 = {(m.src, m.tgt, m.name) for m in s2.cat.morphisms}
    return hom1 == hom2


def _check_monotonicity(p: GenParams, ctx: Ctx):
    if _monotonicity_ok(p, ctx):
        return "pass", None
    return "fail", Failure("params", {"seed": p.seed},
                           "larger marking did not give a full subcategory of sections")


def _check_cofinality_left(p: GenParams, ctx: Ctx):
    return _check_cofinality(p, ctx, "left")


def _check_cofinality_right(p: GenParams, ctx: Ctx):
    return _check_cofinality(p, ctx, "right")


CHECKS: dict[str, Callable] = {
    "thm-lax-lim": _check_thm_lax_lim,
    "thm-oplax-lim": _check_thm_oplax_lim,
    "thm-lax-colim-probe": _check_thm_lax_colim_probe,
    "thm-oplax-colim-probe": _check_thm_oplax_colim_probe,
    "prop-sharp-limit": _check_prop_sharp_limit,
    "ghn-flat": _check_ghn_flat,
    "cofinality-left": _check_cofinality_left,
    "cofinality-right": _check_cofinality_right,
    "marked-limit": _check_marked_limit,
    "pullback-remark": _check_pullback_remark,
    "ff-lemma": _check_ff_lemma,
    "monotonicity": _check_monotonicity,
}

# mapping-out probe categories grow like 2^(objects of the total category),
# so the colimit-side checks run on smaller instances than the limit side
_SMALL = GenParams(max_objects=2, max_morphisms=5,
                   fiber_max_objects=2, fiber_max_morphisms=4)

DEFAULT_PARAMS: dict[str, GenParams] = {
    "thm-lax-colim-probe": _SMALL,
    "thm-oplax-colim-probe": _SMALL,
}

# the same explosion argues for lower caps (so a bad draw skips fast instead
# of assembling a huge functor category) and a shorter localization ladder
_PROBE_CTX = Ctx(
    caps=SizeCaps(max_objects=512, max_morphisms=8192,
                  max_candidates=1_000_000),
    bounds=Bounds(word_length=4, max_morphisms=2048, max_words=30_000),
)

DEFAULT_CTX: dict[str, Ctx] = {
    "thm-lax-colim-probe": _PROBE_CTX,
    "thm-oplax-colim-probe": _PROBE_CTX,
}


# -- counterexample minimization ---------------------------------------------------


def _removable_morphisms(C: FinCat) -> list[str]:
    """Non-identity morphisms whose removal keeps the table composition-closed."""
    out = []
    for m in C.morphisms:
        if C.is_identity(m.name):
            continue
        needed = any(h == m.name and g != m.name and f != m.name
                     for (g, f), h in C.comp.items())
        if not needed:
            out.append(m.name)
    return out


def _delete_base_object(F: CatDiagram, x: str) -> CatDiagram:
    I = F.base.cat
    objs = [o for o in I.objects if o != x]
    ms = [m for m in I.morphisms if m.src != x and m.tgt != x]
    keep = {m.name for m in ms}
    sub = fincat(objs, ms, {o: I.identity[o] for o in objs},
                 {k: v for k, v in I.comp.items()
                  if k[0] in keep and k[1] in keep})
    base = MarkedFinCat(sub, frozenset(F.base.marked & keep))
    return CatDiagram(base, {o: F.fiber[o] for o in objs},
                      {m: T for m, T in F.transition.items() if m in keep})


def _delete_base_morphism(F: CatDiagram, m: str) -> CatDiagram:
    I = F.base.cat
    ms = [mm for mm in I.morphisms if mm.name != m]
    keep = {mm.name for mm in ms}
    sub = fincat(list(I.objects), ms, dict(I.identity),
                 {k: v for k, v in I.comp.items()
                  if k[0] in keep and k[1] in keep})
    base = MarkedFinCat(sub, frozenset(F.base.marked & keep))
    return CatDiagram(base, dict(F.fiber),
                      {k: T for k, T in F.transition.items() if k in keep})


def minimize_diagram(F: CatDiagram, still_fails: Callable) -> CatDiagram:
    """Greedy deletion of base objects and removable base morphisms while the
    failure persists; each candidate is revalidated before the retest."""
    changed = True
    while changed:
        changed = False
        for x in list(F.base.cat.objects):
            if F.base.cat.n_objects <= 1:
                break
            try:
                F2 = _delete_base_object(F, x)
                F2.validate()
                if still_fails(F2):
                    F = F2
                    changed = True
            except LaxcatError:
                continue
        for m in _removable_morphisms(F.base.cat):
            try:
                F2 = _delete_base_morphism(F, m)
                F2.validate()
                if still_fails(F2):
                    F = F2
                    changed = True
            except LaxcatError:
                continue
    return F


# -- report and runner ------------------------------------------------------------


@dataclass
class CheckReport:
    theorem: str
    seed: int
    instances: int
    passes: int
    failures: list[dict]
    bound_exceeded: int
    wall_time: float
    params: dict

    def to_data(self) -> dict:
        # canonical bytes exclude wall time: equal runs serialize identically
        return {
            "theorem": self.theorem,
            "seed": self.seed,
            "instances": self.instances,
            "passes": self.passes,
            "failures": self.failures,
            "bound_exceeded": self.bound_exceeded,
            "params": self.params,
        }

    def canonical(self) -> str:
        return canonical_json(self.to_data())


def instance_seed(seed: int, k: int) -> int:
    return seed * 1_000_003 + k


def _run_one(theorem: str, p: GenParams, ctx: Ctx) -> str:
    """Worker for parallel runs; statuses only, Failure closures stay local."""
    try:
        status, _ = CHECKS[theorem](p, ctx)
    except _SKIP_ERRORS:
        return "skip"
    return status


def run_check(theorem: str, seed: int = 0, count: int = 50,
              params: GenParams | None = None, ctx: Ctx | None = None,
              out_dir: str | None = None, minimize: bool = True,
              jobs: int = 1) -> CheckReport:
    if theorem not in CHECKS:
        raise KeyError(f"unknown theorem {theorem!r}")
    params = params or DEFAULT_PARAMS.get(theorem, GenParams())
    ctx = ctx or DEFAULT_CTX.get(theorem) or Ctx()
    fn = CHECKS[theorem]
    t0 = time.monotonic()
    passes = 0
    skips = 0
    failures: list[dict] = []
    instances = [replace(params, seed=instance_seed(seed, k))
                 for k in range(count)]
    statuses: dict[int, str] = {}
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rs = pool.map(_run_one, [theorem] * count, instances,
                          [ctx] * count)
            statuses = dict(enumerate(rs))
    for k in range(count):
        p = instances[k]
        if statuses.get(k) == "skip":
            skips += 1
            continue
        if statuses.get(k) == "pass":
            passes += 1
            continue
        # sequential run, or a parallel failure replayed for its witness
        try:
            status, failure = fn(p, ctx)
        except _SKIP_ERRORS:
            skips += 1
            continue
        if status == "pass":
            passes += 1
            continue
        entry = {"instance": k, "seed": p.seed, "reason": failure.reason}
        if out_dir is not None:
            data = failure.data
            if minimize and failure.kind == "diagram" and failure.reeval is not None:
                from .io_formats import diagram_from_data

                def refails(F2, reeval=failure.reeval):
                    try:
                        return bool(reeval(F2))
                    except LaxcatError:
                        return False

                small = minimize_diagram(diagram_from_data(data), refails)
                data = diagram_to_data(small)
            os.makedirs(out_dir, exist_ok=True)
            path = os.path.join(out_dir, f"{theorem}-{k}.json")
            with open(path, "w") as fh:
                fh.write(canonical_json({
                    "theorem": theorem, "seed": p.seed,
                    "kind": failure.kind, "reason": failure.reason,
                    "params": {"seed": p.seed,
                               "max_objects": p.max_objects,
                               "max_morphisms": p.max_morphisms},
                    "instance": data,
                }))
            entry["path"] = path
        failures.append(entry)
    return CheckReport(theorem, seed, count, passes, failures, skips,
                       time.monotonic() - t0,
                       {"max_objects": params.max_objects,
                        "max_morphisms": params.max_morphisms,
                        "fiber_max_objects": params.fiber_max_objects})
