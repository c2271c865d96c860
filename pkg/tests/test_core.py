"""Category axioms, markings, and the basic constructors."""

import pytest

from laxcat.core import (
    FinCat,
    Functor,
    MarkedFinCat,
    Mor,
    ValidationReport,
    chain_cat,
    discrete_cat,
    fincat,
    flat_marking,
    is_iso,
    marked,
    marked_subcategory,
    opposite,
    opposite_cat,
    parallel_pair,
    product,
    saturate_marking,
    sharp_marking,
    terminal_cat,
    validate_category,
    validate_marking,
    walking_arrow,
    walking_iso,
)
from laxcat.errors import InvalidMarking, MalformedTable, UnknownMorphism
from laxcat.generator import GenParams, gen_category, gen_marking


def test_validate_terminal():
    C = validate_category({
        "objects": ["*"],
        "morphisms": [{"id": "id_*", "src": "*", "tgt": "*"}],
        "identity": {"*": "id_*"},
        "comp": {("id_*", "id_*"): "id_*"},
    })
    assert isinstance(C, FinCat)


def test_validate_walking_arrow():
    C = walking_arrow()
    assert len(C.objects) == 2 and len(C.morphisms) == 3


def test_validate_reports_unit_law_failure():
    report = validate_category({
        "objects": ["0", "1"],
        "morphisms": [{"id": "id_0", "src": "0", "tgt": "0"},
                      {"id": "id_1", "src": "1", "tgt": "1"},
                      {"id": "u", "src": "0", "tgt": "1"},
                      {"id": "w", "src": "0", "tgt": "1"}],
        "identity": {"0": "id_0", "1": "id_1"},
        "comp": {("id_0", "id_0"): "id_0", ("id_1", "id_1"): "id_1",
                 ("u", "id_0"): "w", ("id_1", "u"): "u",
                 ("w", "id_0"): "w", ("id_1", "w"): "w"},
    })
    assert isinstance(report, ValidationReport)
    assert any(v.kind == "unit" and "u" in v.detail for v in report.violations)
    # a composite with mismatched endpoints is flagged too
    bad = validate_category({
        "objects": ["0", "1"],
        "morphisms": [{"id": "id_0", "src": "0", "tgt": "0"},
                      {"id": "id_1", "src": "1", "tgt": "1"},
                      {"id": "u", "src": "0", "tgt": "1"}],
        "identity": {"0": "id_0", "1": "id_1"},
        "comp": {("id_0", "id_0"): "id_0", ("id_1", "id_1"): "id_1",
                 ("u", "id_0"): "id_0", ("id_1", "u"): "u"},
    })
    assert isinstance(bad, ValidationReport)
    assert any(v.kind == "composite" for v in bad.violations)


def test_duplicate_ids_rejected():
    with pytest.raises(MalformedTable):
        fincat(["x"], [Mor("id_x", "x", "x"), Mor("id_x", "x", "x")],
               {"x": "id_x"}, {("id_x", "id_x"): "id_x"})


def test_is_iso():
    A = walking_arrow()
    assert is_iso(A, "id_0")
    assert not is_iso(A, "a01")
    W = walking_iso()
    assert is_iso(W, "u") and is_iso(W, "v")
    with pytest.raises(UnknownMorphism):
        is_iso(A, "nope")


def test_saturate_marking_examples():
    A = walking_arrow()
    assert saturate_marking(A, []) == frozenset({"id_0", "id_1"})
    C2 = chain_cat(2)
    ids = frozenset(C2.identity.values())
    assert saturate_marking(C2, ["a01"]) == ids | {"a01"}
    assert saturate_marking(C2, ["a01", "a12"]) == ids | {"a01", "a12", "a02"}


def test_saturate_is_idempotent_and_monotone():
    for s in range(20):
        C = gen_category(GenParams(seed=s))
        names = sorted(m.name for m in C.morphisms)
        small = saturate_marking(C, names[: len(names) // 2])
        assert saturate_marking(C, small) == small
        big = saturate_marking(C, names)
        assert small <= big


def test_validate_marking_rejects_non_closed():
    C2 = chain_cat(2)
    ids = list(C2.identity.values())
    with pytest.raises(InvalidMarking):
        validate_marking(C2, ids + ["a01", "a12"])  # missing a02
    with pytest.raises(InvalidMarking):
        validate_marking(C2, ["a01"])  # missing identities


def test_flat_and_sharp():
    A = walking_arrow()
    assert sharp_marking(A).marked == frozenset(m.name for m in A.morphisms)
    assert flat_marking(A).marked == frozenset({"id_0", "id_1"})
    W = walking_iso()
    assert flat_marking(W).marked == frozenset(m.name for m in W.morphisms)


def test_opposite_involution():
    for s in range(10):
        Cm = gen_marking(gen_category(GenParams(seed=s)), GenParams(seed=s))
        back = opposite(opposite(Cm))
        assert back.cat.same_table(Cm.cat)
        assert back.marked == Cm.marked


def test_product_markings():
    sharp1 = sharp_marking(walking_arrow())
    flat1 = flat_marking(walking_arrow())
    P = product(sharp1, flat1)
    validate_marking(P.cat, P.marked)
    # (u, id) marked, (u, u) unmarked, componentwise
    from laxcat.core import pair_id
    assert pair_id("a01", "id_0") in P.marked
    assert pair_id("a01", "a01") not in P.marked


def test_product_with_terminal_is_unit():
    from laxcat.equiv import is_isomorphic
    D = flat_marking(parallel_pair())
    P = product(flat_marking(terminal_cat()), D)
    assert is_isomorphic(P.cat, D.cat)


def test_marked_subcategory():
    C2 = chain_cat(2)
    ids = frozenset(C2.identity.values())
    sub = marked_subcategory(marked(C2, ids | {"a01"}))
    assert set(m.name for m in sub.morphisms) == set(ids) | {"a01"}
    assert marked_subcategory(sharp_marking(C2)).same_table(C2)
    # flat marking of a skeletal poset keeps only identities
    assert all(sub2.src(m.name) == sub2.tgt(m.name)
               for sub2 in [marked_subcategory(flat_marking(C2))]
               for m in sub2.morphisms)


def test_marked_functor_restricts_to_marked_subcategories():
    # a marked functor restricts to the wide subcategories of marked morphisms
    C2 = chain_cat(2)
    Cm = marked(C2, saturate_marking(C2, ["a01"]))
    Dm = sharp_marking(walking_arrow())
    F = Functor(C2, Dm.cat,
                {"0": "0", "1": "1", "2": "1"},
                {"id_0": "id_0", "id_1": "id_1", "id_2": "id_1",
                 "a01": "a01", "a12": "id_1", "a02": "a01"})
    F.validate()
    assert all(F.morphism_map[m] in Dm.marked for m in Cm.marked)


def test_generated_categories_pass_axioms():
    from laxcat.core import check_axioms
    for s in range(30):
        C = gen_category(GenParams(seed=s))
        assert not check_axioms(C).violations


def test_discrete_and_opposite_cat():
    D = discrete_cat(["a", "b"])
    assert opposite_cat(D).same_table(D)
    A = walking_arrow()
    Aop = opposite_cat(A)
    assert Aop.src("a01") == "1" and Aop.tgt("a01") == "0"
