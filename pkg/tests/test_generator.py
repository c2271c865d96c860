"""Seeded generation: determinism, validity, and distribution sanity."""

from dataclasses import replace

from laxcat.core import check_axioms, validate_marking, walking_arrow
from laxcat.equiv import is_equivalent
from laxcat.generator import (
    GenParams,
    gen_category,
    gen_diagram,
    gen_marking,
    gen_set_diagram,
)


def test_determinism():
    for s in range(10):
        p = GenParams(seed=s)
        a, b = gen_category(p), gen_category(p)
        assert a.same_table(b)
        ma, mb = gen_marking(a, p), gen_marking(b, p)
        assert ma.marked == mb.marked
        da, db = gen_diagram(ma, p), gen_diagram(mb, p)
        assert da.base.cat.same_table(db.base.cat)
        assert {i: da.fiber[i].same_table(db.fiber[i]) for i in da.fiber}
        for m in da.transition:
            assert da.transition[m].object_map == db.transition[m].object_map
            assert da.transition[m].morphism_map == db.transition[m].morphism_map


def test_generated_artifacts_validate():
    for s in range(40):
        p = GenParams(seed=s)
        C = gen_category(p)
        assert check_axioms(C).ok
        Cm = gen_marking(C, p)
        validate_marking(Cm.cat, Cm.marked)
        F = gen_diagram(Cm, p)
        F.validate()
        S = gen_set_diagram(Cm.cat, p)
        S.validate()


def test_size_caps_respected():
    for s in range(20):
        p = GenParams(seed=s, max_objects=3, max_morphisms=7)
        C = gen_category(p)
        assert C.n_objects <= 3
        assert len(C.nonidentity()) <= 7


def test_density_extremes():
    C = walking_arrow()
    flat = gen_marking(C, GenParams(seed=0, marking_density=0.0))
    assert flat.marked == C.iso_set()
    sharp = gen_marking(C, GenParams(seed=0, marking_density=1.0))
    assert sharp.marked == frozenset(m.name for m in C.morphisms)


def test_single_edge_no_relations_is_walking_arrow():
    # smallest nontrivial draw collapses to the walking arrow shape
    for s in range(40):
        p = GenParams(seed=s, max_objects=2, max_morphisms=1,
                      relation_density=0.0, nonposet_prob=0.0)
        C = gen_category(p)
        if len(C.nonidentity()) == 1:
            assert is_equivalent(C, walking_arrow())
            break
    else:
        raise AssertionError("no two-object draw in 40 seeds")


def test_distribution_sanity():
    posets = nonposets = 0
    marking_sizes = set()
    for s in range(1000):
        p = GenParams(seed=s)
        C = gen_category(p)
        skeletal_poset = all(len(C.hom(x, y)) <= 1
                             for x in C.objects for y in C.objects)
        if skeletal_poset:
            posets += 1
        else:
            nonposets += 1
        if len(C.nonidentity()) >= 3:
            marking_sizes.add(len(gen_marking(C, p).marked))
    assert posets > 0 and nonposets > 0
    assert len(marking_sizes) >= 3


def test_fiber_caps():
    for s in range(15):
        p = GenParams(seed=s, fiber_max_objects=2, fiber_max_morphisms=3)
        F = gen_diagram(gen_marking(gen_category(p), p), p)
        for fib in F.fiber.values():
            assert fib.n_objects <= 2
            assert len(fib.nonidentity()) <= 3
