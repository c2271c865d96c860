"""Seeded random generation of categories, markings, and diagrams.

The backbone is a free category on a random acyclic quiver quotiented by a
random set of parallel-path identifications; acyclicity keeps the free
category finite and the quotient valid by construction.  Curated non-poset
seeds are mixed in at low probability since DAG quotients are always posets
up to identification.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .core import (
    FinCat,
    Functor,
    MarkedFinCat,
    Mor,
    fincat,
    parallel_pair,
    saturate_marking,
    short_id,
    walking_iso,
)
from .constructions import enumerate_functors, generating_morphisms
from .diagrams import CatDiagram, SetDiagram
from .errors import GenerationExhausted


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    max_objects: int = 4
    max_morphisms: int = 14  # non-identity morphisms
    relation_density: float = 0.5
    marking_density: float = 0.3
    fiber_max_objects: int = 3
    fiber_max_morphisms: int = 6
    nonposet_prob: float = 0.12
    max_set_size: int = 3
    retries: int = 40


def _monoid3() -> FinCat:
    # one object, absorbing element: a*a = aa, everything with aa gives aa
    ms = [Mor("id_x", "x", "x"), Mor("a", "x", "x"), Mor("aa", "x", "x")]
    comp = {("a", "a"): "aa", ("a", "aa"): "aa", ("aa", "a"): "aa",
            ("aa", "aa"): "aa"}
    for n in ("a", "aa"):
        comp[("id_x", n)] = n
        comp[(n, "id_x")] = n
    comp[("id_x", "id_x")] = "id_x"
    return fincat(["x"], ms, {"x": "id_x"}, comp)


def _curated(rng: random.Random) -> FinCat:
    return [walking_iso, _monoid3, parallel_pair][rng.randrange(3)]()


_Path = tuple[str, tuple[str, ...]]  # (source object, edge names in order)


def _dag_paths(objects, edges):
    """All composable edge sequences, including the empty path per object."""
    tgt = {e: j for e, (_, j) in edges.items()}
    by_src: dict[str, list[str]] = {}
    for e, (i, _) in edges.items():
        by_src.setdefault(i, []).append(e)
    paths: list[_Path] = [(x, ()) for x in objects]
    frontier = [((x, ()), x) for x in objects]
    while frontier:
        nxt = []
        for (s, p), end in frontier:
            for e in by_src.get(end, []):
                q = (s, p + (e,))
                paths.append(q)
                nxt.append((q, tgt[e]))
        frontier = nxt
    return paths, tgt


def gen_category(p: GenParams) -> FinCat:
    """Random finite category; identical params give identical output."""
    rng = random.Random(("cat", p.seed, p.max_objects, p.max_morphisms,
                         p.relation_density).__repr__())
    if rng.random() < p.nonposet_prob:
        return _curated(rng)

    n = rng.randint(1, max(1, p.max_objects))
    objects = [f"o{i}" for i in range(n)]
    edges: dict[str, tuple[str, str]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            k = rng.choices([0, 1, 2], weights=[45, 40, 15])[0]
            for c in range(k):
                edges[f"e{i}{j}{'ab'[c]}"] = (objects[i], objects[j])
    # trim edges until the free category fits the morphism budget
    while True:
        paths, tgt_of = _dag_paths(objects, edges)
        if len(paths) - n <= p.max_morphisms or not edges:
            break
        del edges[rng.choice(sorted(edges))]

    def path_tgt(path: _Path) -> str:
        s, es = path
        return tgt_of[es[-1]] if es else s

    # random parallel-path identifications, then congruence closure
    parent: dict[_Path, _Path] = {q: q for q in paths}

    def find(q):
        while parent[q] != q:
            parent[q] = parent[parent[q]]
            q = parent[q]
        return q

    def union(a, b) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        lo, hi = sorted((ra, rb), key=lambda q: (len(q[1]), q[1], q[0]))
        parent[hi] = lo
        return True

    groups: dict[tuple[str, str], list[_Path]] = {}
    for q in paths:
        groups.setdefault((q[0], path_tgt(q)), []).append(q)
    for key in sorted(groups):
        grp = groups[key]
        for a in range(len(grp)):
            for b in range(a + 1, len(grp)):
                if len(grp[a][1]) >= 1 and len(grp[b][1]) >= 1 \
                        and rng.random() < p.relation_density:
                    union(grp[a], grp[b])
    by_src: dict[str, list[str]] = {}
    for e, (i, _) in edges.items():
        by_src.setdefault(i, []).append(e)
    by_tgt: dict[str, list[str]] = {}
    for e, (_, j) in edges.items():
        by_tgt.setdefault(j, []).append(e)
    changed = True
    while changed:
        changed = False
        classes: dict[_Path, list[_Path]] = {}
        for q in paths:
            classes.setdefault(find(q), []).append(q)
        for members in classes.values():
            base = members[0]
            for q in members[1:]:
                for e in by_src.get(path_tgt(base), []):
                    if union((base[0], base[1] + (e,)), (q[0], q[1] + (e,))):
                        changed = True
                for e in by_tgt.get(base[0], []):
                    s = edges[e][0]
                    if union((s, (e,) + base[1]), (s, (e,) + q[1])):
                        changed = True

    reps = sorted({find(q) for q in paths}, key=lambda q: (q[0], len(q[1]), q[1]))

    def mname(rep: _Path) -> str:
        s, es = rep
        return f"id_{s}" if not es else short_id("*".join(es))

    morphisms = [Mor(mname(r), r[0], path_tgt(r)) for r in reps]
    identity = {x: f"id_{x}" for x in objects}
    comp = {}
    for r1 in reps:
        for r2 in reps:
            if path_tgt(r1) != r2[0]:
                continue
            comp[(mname(r2), mname(r1))] = mname(find((r1[0], r1[1] + r2[1])))
    return fincat(objects, morphisms, identity, comp)


def gen_marking(C: FinCat, p: GenParams) -> MarkedFinCat:
    rng = random.Random(("marking", p.seed, p.marking_density).__repr__())
    picked = {m.name for m in C.morphisms
              if not C.is_identity(m.name) and rng.random() < p.marking_density}
    picked.update(C.identity.values())
    return MarkedFinCat(C, saturate_marking(C, frozenset(picked)))


def _backtrack_transitions(I: FinCat, fibers: dict[str, FinCat],
                           rng: random.Random) -> dict[str, Functor] | None:
    """Assign functors to a generating set of I, derive the rest from the
    decomposition words, and keep only strictly functorial assignments."""
    gens, words = generating_morphisms(I)
    gens = sorted(gens)
    candidates: dict[str, list[Functor]] = {}
    for g in gens:
        cs = list(enumerate_functors(fibers[I.src(g)], fibers[I.tgt(g)]))
        if not cs:
            return None
        rng.shuffle(cs)
        candidates[g] = cs

    from .core import compose_functors, identity_functor

    def derive(assign: dict[str, Functor]) -> dict[str, Functor] | None:
        tr = {I.identity[x]: identity_functor(fibers[x]) for x in I.objects}
        for m in I.morphisms:
            if I.is_identity(m.name):
                continue
            T = identity_functor(fibers[m.src])
            for g in words[m.name]:
                T = compose_functors(assign[g], T)
            if m.name in tr and tr[m.name].key() != T.key():
                return None
            tr[m.name] = T
        for (g, f), h in I.comp.items():
            if compose_functors(tr[g], tr[f]).key() != tr[h].key():
                return None
        return tr

    limit = 4000  # assignment attempts per fiber draw

    def rec(i: int, assign: dict[str, Functor], budget: list[int]):
        if i == len(gens):
            return derive(assign)
        for c in candidates[gens[i]]:
            if budget[0] <= 0:
                return None
            budget[0] -= 1
            assign[gens[i]] = c
            got = rec(i + 1, assign, budget)
            if got is not None:
                return got
        assign.pop(gens[i], None)
        return None

    return rec(0, {}, [limit])


def gen_diagram(Im: MarkedFinCat, p: GenParams) -> CatDiagram:
    """Random strict diagram of categories over the marked base; retries with
    fresh fibers when no strictly functorial transition assignment exists."""
    rng = random.Random(("diagram", p.seed).__repr__())
    I = Im.cat
    fiber_params = replace(p, max_objects=p.fiber_max_objects,
                           max_morphisms=p.fiber_max_morphisms)
    for _ in range(p.retries):
        fibers = {x: gen_category(replace(fiber_params,
                                          seed=rng.randrange(2 ** 32)))
                  for x in I.objects}
        tr = _backtrack_transitions(I, fibers, rng)
        if tr is not None:
            d = CatDiagram(Im, fibers, tr)
            d.validate()
            return d
    raise GenerationExhausted(
        f"no strict diagram over base with {I.n_objects} objects "
        f"after {p.retries} retries")


def gen_set_diagram(C: FinCat, p: GenParams) -> SetDiagram:
    """Random functor to finite sets, built the same way as gen_diagram."""
    rng = random.Random(("setdiag", p.seed).__repr__())
    gens, words = generating_morphisms(C)
    gens = sorted(gens)
    for _ in range(p.retries):
        values = {x: tuple(range(rng.randint(1, p.max_set_size)))
                  for x in C.objects}
        assign = {g: {e: rng.choice(values[C.tgt(g)]) for e in values[C.src(g)]}
                  for g in gens}
        action = {C.identity[x]: {e: e for e in values[x]} for x in C.objects}
        ok = True
        for m in C.morphisms:
            if C.is_identity(m.name):
                continue
            f = {e: e for e in values[m.src]}
            for g in words[m.name]:
                f = {e: assign[g][v] for e, v in f.items()}
            if m.name in action and action[m.name] != f:
                ok = False
                break
            action[m.name] = f
        if ok:
            for (g, f2), h in C.comp.items():
                if {e: action[g][v] for e, v in action[f2].items()} != action[h]:
                    ok = False
                    break
        if ok:
            d = SetDiagram(C, values, action)
            d.validate()
            return d
    # random assignments on generators can be incompatible with the
    # relations of C; a representable functor is always strict
    c = rng.choice(C.objects)
    values = {x: tuple(sorted(m.name for m in C.morphisms
                              if m.src == c and m.tgt == x))
              for x in C.objects}
    action = {m.name: {e: C.compose(m.name, e) for e in values[m.src]}
              for m in C.morphisms}
    d = SetDiagram(C, values, action)
    d.validate()
    return d
