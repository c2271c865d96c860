"""File formats, canonical serialization, and the command-line interface."""

import json

import pytest

from laxcat.cli import main
from laxcat.core import (
    chain_cat,
    flat_marking,
    marked,
    saturate_marking,
    sharp_marking,
    terminal_cat,
    walking_arrow,
    walking_iso,
)
from laxcat.errors import MalformedTable
from laxcat.generator import GenParams, gen_category, gen_diagram, gen_marking
from laxcat.io_formats import (
    canonical_json,
    category_from_data,
    category_to_data,
    diagram_from_data,
    diagram_to_data,
    presentation_from_data,
    presentation_to_data,
)
from laxcat.localization import present


def test_category_roundtrip():
    for s in range(15):
        p = GenParams(seed=s)
        Cm = gen_marking(gen_category(p), p)
        data = category_to_data(Cm.cat, Cm.marked)
        C2, mk2 = category_from_data(json.loads(canonical_json(data)))
        assert C2.same_table(Cm.cat)
        assert mk2 == Cm.marked


def test_category_unknown_keys_rejected():
    data = category_to_data(terminal_cat())
    data["extra"] = 1
    with pytest.raises(MalformedTable):
        category_from_data(data)


def test_identities_synthesized_when_absent():
    data = {"objects": ["a"], "morphisms": [], "composition": []}
    C, mk = category_from_data(data)
    assert C.identity == {"a": "id_a"}
    assert mk is None


def test_diagram_roundtrip():
    for s in range(10):
        p = GenParams(seed=s)
        F = gen_diagram(gen_marking(gen_category(p), p), p)
        F2 = diagram_from_data(json.loads(canonical_json(diagram_to_data(F))))
        assert F2.base.cat.same_table(F.base.cat)
        assert F2.base.marked == F.base.marked
        for i in F.fiber:
            assert F2.fiber[i].same_table(F.fiber[i])
        for m in F.transition:
            assert F2.transition[m].object_map == F.transition[m].object_map


def test_presentation_roundtrip():
    A = walking_arrow()
    pres = present(marked(A, saturate_marking(A, ["a01"])))
    back = presentation_from_data(
        json.loads(canonical_json(presentation_to_data(pres))))
    assert back.objects == pres.objects
    assert back.arrows == pres.arrows
    assert sorted(back.relations, key=str) == sorted(pres.relations, key=str)


def test_canonical_json_is_deterministic():
    data = category_to_data(chain_cat(2))
    assert canonical_json(data) == canonical_json(json.loads(canonical_json(data)))


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(canonical_json(data))
    return str(path)


def test_cli_tw_gives_span(tmp_path, capsys):
    f = _write(tmp_path, "arrow.json", category_to_data(walking_arrow()))
    assert main(["tw", f]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["objects"]) == 3
    assert len(data["morphisms"]) == 2


def test_cli_equiv_exit_codes(tmp_path):
    iso = _write(tmp_path, "iso.json", category_to_data(walking_iso()))
    term = _write(tmp_path, "term.json", category_to_data(terminal_cat()))
    arrow = _write(tmp_path, "arrow.json", category_to_data(walking_arrow()))
    assert main(["equiv", iso, term]) == 0
    assert main(["equiv", arrow, term]) == 1


def test_cli_localize_free_monoid_exits_2(tmp_path, capsys):
    pres = {"objects": ["x"],
            "arrows": [{"id": "m", "src": "x", "tgt": "x"},
                       {"id": "inv_m", "src": "x", "tgt": "x"}],
            "relations": [
                {"lhs": ["m", "inv_m"], "rhs": [], "src": "x", "tgt": "x"},
                {"lhs": ["inv_m", "m"], "rhs": [], "src": "x", "tgt": "x"}]}
    f = _write(tmp_path, "free.json", pres)
    # the localization is the group of integers; every word bound is hit
    assert main(["localize", f, "--word-bound", "4"]) == 2
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "word-bound"
    assert out["bound"]["hom"] == ["x", "x"]


def test_cli_localize_marked_category(tmp_path, capsys):
    A = walking_arrow()
    mk = saturate_marking(A, ["a01"])
    f = _write(tmp_path, "arrow.json", category_to_data(A, mk))
    assert main(["localize", f]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "ok"
    assert len(out["category"]["morphisms"]) + len(
        out["category"]["identities"]) == 4


def test_cli_invalid_input_exits_3(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["validate", str(bad)]) == 3
    junk = _write(tmp_path, "junk.json", {"objects": ["a"], "nope": 1})
    assert main(["validate", junk]) == 3


def test_cli_bound_exceeded_exits_2(tmp_path):
    f = _write(tmp_path, "c2.json", category_to_data(chain_cat(2)))
    assert main(["tw", f, "--max-objects", "2", "--max-morphisms", "2"]) == 2


def test_cli_check_and_report(tmp_path, capsys):
    rc = main(["check", "cofinality-left", "--seed", "1", "--count", "25",
               "--out", str(tmp_path)])
    assert rc == 0
    report = json.loads((tmp_path / "cofinality-left-report.json").read_text())
    assert report["passes"] == 25
    assert report["failures"] == []


def test_cli_check_unknown_theorem_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["check", "not-a-theorem"])


def test_cli_grothendieck_and_sections_roundtrip(tmp_path, capsys):
    p = GenParams(seed=4)
    F = gen_diagram(gen_marking(gen_category(p), p), p)
    f = _write(tmp_path, "diag.json", diagram_to_data(F))
    assert main(["grothendieck", f]) == 0
    total = json.loads(capsys.readouterr().out)["total"]
    C, mk = category_from_data(total)
    assert mk is not None
    assert main(["sections", f, "--marked"]) == 0
    assert main(["laxlim", f]) == 0
    assert main(["laxcolim", f]) in (0, 2)
