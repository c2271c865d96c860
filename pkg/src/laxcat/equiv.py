"""Isomorphism and equivalence of finite categories.

Equivalence goes through skeletons: finite categories are equivalent iff
their skeletons are isomorphic.  Positive verdicts carry a validated witness
functor; negative verdicts carry a concrete distinguishing certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FinCat, Functor, compose_functors, is_iso
from .errors import SearchBudgetExceeded

DEFAULT_BUDGET = 10**6


@dataclass
class EquivalenceVerdict:
    verdict: str  # "isomorphic" | "equivalent" | "inequivalent"
    witness: Functor | None = None
    certificate: str | None = None

    def __bool__(self) -> bool:
        return self.verdict != "inequivalent"


# -- skeletons -------------------------------------------------------------


def iso_classes(C: FinCat) -> dict[str, str]:
    """Map each object to the lexicographically least object isomorphic to it."""
    rep = {x: x for x in C.objects}

    def find(x: str) -> str:
        while rep[x] != x:
            rep[x] = rep[rep[x]]
            x = rep[x]
        return x

    for m in C.morphisms:
        if is_iso(C, m.name):
            a, b = find(m.src), find(m.tgt)
            if a != b:
                lo, hi = min(a, b), max(a, b)
                rep[hi] = lo
    return {x: find(x) for x in C.objects}


@dataclass
class SkeletonResult:
    cat: FinCat
    inclusion: Functor  # skeleton -> C, an equivalence by construction
    retraction: Functor  # C -> skeleton, via chosen isos to representatives


def skeleton(C: FinCat) -> SkeletonResult:
    """Full subcategory on one representative per isomorphism class."""
    reps = iso_classes(C)
    keep = sorted(set(reps.values()))
    keep_set = set(keep)
    from .core import Mor, fincat

    morphisms = [m for m in C.morphisms if m.src in keep_set and m.tgt in keep_set]
    names = {m.name for m in morphisms}
    comp = {(g, f): h for (g, f), h in C.comp.items() if g in names and f in names}
    skel = fincat(keep, morphisms, {x: C.identity[x] for x in keep}, comp,
                  check=False)
    inclusion = Functor(skel, C, {x: x for x in keep},
                        {m.name: m.name for m in morphisms})
    # chosen iso rho_x: x -> rep(x); identity when x is its own representative
    rho: dict[str, str] = {}
    rho_inv: dict[str, str] = {}
    for x in C.objects:
        r = reps[x]
        if r == x:
            rho[x] = C.identity[x]
            rho_inv[x] = C.identity[x]
        else:
            u = min(m for m in C.hom(x, r) if is_iso(C, m))
            rho[x] = u
            rho_inv[x] = min(
                v for v in C.hom(r, x)
                if C.compose(v, u) == C.identity[x]
                and C.compose(u, v) == C.identity[r]
            )
    retraction = Functor(
        C, skel,
        {x: reps[x] for x in C.objects},
        {m.name: C.compose(rho[m.tgt], C.compose(m.name, rho_inv[m.src]))
         for m in C.morphisms},
    )
    retraction.validate()
    return SkeletonResult(skel, inclusion, retraction)


# -- isomorphism search -------------------------------------------------------


def _object_profile(C: FinCat, x: str) -> tuple:
    outs = sorted(len(C.hom(x, y)) for y in C.objects)
    ins = sorted(len(C.hom(y, x)) for y in C.objects)
    endo = len(C.hom(x, x))
    iso_endo = sum(1 for m in C.hom(x, x) if is_iso(C, m))
    return (tuple(outs), tuple(ins), endo, iso_endo)


def _cat_invariants(C: FinCat) -> dict:
    hom_sizes = sorted(
        len(C.hom(x, y)) for x in C.objects for y in C.objects
    )
    return {
        "objects": C.n_objects,
        "morphisms": C.n_morphisms,
        "hom_multiset": tuple(hom_sizes),
        "profiles": tuple(sorted(_object_profile(C, x) for x in C.objects)),
    }


def is_isomorphic(C: FinCat, D: FinCat,
                  budget: int = DEFAULT_BUDGET) -> EquivalenceVerdict:
    """Backtracking search for a bijective functor, pruned by invariants."""
    inv_c, inv_d = _cat_invariants(C), _cat_invariants(D)
    for key in ("objects", "morphisms", "hom_multiset", "profiles"):
        if inv_c[key] != inv_d[key]:
            return EquivalenceVerdict(
                "inequivalent", certificate=f"invariant mismatch: {key} "
                f"{inv_c[key]!r} vs {inv_d[key]!r}")

    prof_c = {x: _object_profile(C, x) for x in C.objects}
    prof_d = {y: _object_profile(D, y) for y in D.objects}
    nodes = 0

    objs = sorted(C.objects)

    # both searches keep explicit stacks: functor-category skeletons can be
    # deeper than the interpreter's recursion limit
    def match_objects():
        nonlocal nodes
        if not objs:
            yield {}
            return
        omap: dict[str, str] = {}
        used: set[str] = set()
        stack = [iter(D.objects)]
        while stack:
            x = objs[len(stack) - 1]
            if x in omap:
                used.discard(omap.pop(x))
            advanced = False
            for y in stack[-1]:
                if y in used or prof_c[x] != prof_d[y]:
                    continue
                nodes += 1
                if nodes > budget:
                    raise SearchBudgetExceeded(budget)
                # hom-size consistency against already-matched objects
                ok = all(
                    len(C.hom(x, x2)) == len(D.hom(y, y2))
                    and len(C.hom(x2, x)) == len(D.hom(y2, y))
                    for x2, y2 in omap.items()
                ) and len(C.hom(x, x)) == len(D.hom(y, y))
                if not ok:
                    continue
                omap[x] = y
                used.add(y)
                advanced = True
                break
            if not advanced:
                stack.pop()
            elif len(stack) == len(objs):
                yield dict(omap)
            else:
                stack.append(iter(D.objects))

    mor_names = sorted(m.name for m in C.morphisms)

    def match_morphisms(omap: dict[str, str]):
        nonlocal nodes
        mmap: dict[str, str] = {}
        used: set[str] = set()

        def undo(f: str, d: str, forced: list[str]) -> None:
            for h in forced:
                used.discard(mmap[h])
                del mmap[h]
            used.discard(d)
            del mmap[f]

        def try_assign(f: str, d: str) -> list[str] | None:
            """Commits f -> d plus every composite both force; None on clash."""
            mmap[f] = d
            used.add(d)
            forced: list[str] = []
            good = True
            for g in list(mmap):
                for (a, b) in ((f, g), (g, f)):
                    if C.tgt(b) != C.src(a):
                        continue
                    h = C.compose(a, b)
                    dh = D.compose(mmap[a], mmap[b])
                    if h in mmap:
                        if mmap[h] != dh:
                            good = False
                            break
                    else:
                        if dh in used:
                            good = False
                            break
                        mmap[h] = dh
                        used.add(dh)
                        forced.append(h)
                if not good:
                    break
            if good:
                return forced
            undo(f, d, forced)
            return None

        def advance(f: str, it) -> tuple[str, list[str]] | None:
            nonlocal nodes
            for d in it:
                if d in used:
                    continue
                if C.is_identity(f) != D.is_identity(d):
                    continue
                if is_iso(C, f) != is_iso(D, d):
                    continue
                nodes += 1
                if nodes > budget:
                    raise SearchBudgetExceeded(budget)
                forced = try_assign(f, d)
                if forced is not None:
                    return d, forced
            return None

        # frames: [position, name, candidate iterator, choice, forced names]
        frames: list[list] = []
        i = 0
        while True:
            while i < len(mor_names) and mor_names[i] in mmap:
                i += 1  # forced earlier by a composition constraint
            if i == len(mor_names):
                yield dict(mmap)
            else:
                f = mor_names[i]
                frames.append(
                    [i, f, iter(D.hom(omap[C.src(f)], omap[C.tgt(f)])),
                     None, None])
            while frames:
                fr = frames[-1]
                if fr[3] is not None:
                    undo(fr[1], fr[3], fr[4])
                    fr[3] = fr[4] = None
                nd = advance(fr[1], fr[2])
                if nd is not None:
                    fr[3], fr[4] = nd
                    i = fr[0] + 1
                    break
                frames.pop()
            else:
                return

    for omap in match_objects():
        for mmap in match_morphisms(omap):
            F = Functor(C, D, omap, mmap)
            try:
                F.validate()
            except Exception:
                continue
            return EquivalenceVerdict("isomorphic", witness=F)
    return EquivalenceVerdict(
        "inequivalent",
        certificate=f"canonical search exhausted at {nodes} nodes")


def is_equivalent(C: FinCat, D: FinCat,
                  budget: int = DEFAULT_BUDGET) -> EquivalenceVerdict:
    """is_isomorphic on skeletons; witness transported along the inclusions."""
    sc, sd = skeleton(C), skeleton(D)
    verdict = is_isomorphic(sc.cat, sd.cat, budget=budget)
    if verdict.verdict == "inequivalent":
        return verdict
    witness = compose_functors(
        sd.inclusion, compose_functors(verdict.witness, sc.retraction))
    witness.validate()
    assert is_fully_faithful(witness) and is_essentially_surjective(witness)
    return EquivalenceVerdict("equivalent", witness=witness)


# -- functor-level checks -------------------------------------------------------


def is_fully_faithful(F: Functor) -> bool:
    for x in F.dom.objects:
        for y in F.dom.objects:
            image = [F.mor(m) for m in F.dom.hom(x, y)]
            if len(set(image)) != len(image):
                return False
            if sorted(image) != sorted(F.cod.hom(F.obj(x), F.obj(y))):
                return False
    return True


def is_essentially_surjective(F: Functor) -> bool:
    hit = {F.obj(x) for x in F.dom.objects}
    for d in F.cod.objects:
        if d in hit:
            continue
        if not any(
            is_iso(F.cod, m) for h in hit for m in F.cod.hom(h, d)
        ):
            return False
    return True


def functor_is_equivalence(F: Functor) -> bool:
    return is_fully_faithful(F) and is_essentially_surjective(F)
