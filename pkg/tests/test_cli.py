import json
import random
import shutil
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperelliptic.cli import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, main
from hyperelliptic.document import ParseError, dumps, load, parse, serialize
from hyperelliptic.gallery import GALLERY_ENV, gallery, gallery_dir
from hyperelliptic.random_data import random_bdf


@pytest.fixture
def doc_file(tmp_path):
    def write(doc, name="datum.json"):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(p)
    return write


def surface_doc(translation=("1/2", "0", "0", "0")):
    ident = [[int(i == j) for j in range(4)] for i in range(4)]
    return {
        "rank": 4,
        "group": {"invariant_factors": [2]},
        "action": {
            "0": {"matrix": ident, "translation": ["0"] * 4},
            "1": {"matrix": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
                  "translation": list(translation)},
        },
        "complex_structure": [["0", "-1", "0", "0"], ["1", "0", "0", "0"],
                              ["0", "0", "0", "-1"], ["0", "0", "1", "0"]],
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok_and_invalid(capsys, doc_file):
    code, out, _ = run(capsys, "validate", doc_file(surface_doc()), "--format", "json")
    assert code == EXIT_OK and json.loads(out)["valid"] is True
    code, out, _ = run(capsys, "validate", doc_file(surface_doc(("0",) * 4)), "--format", "json")
    v = json.loads(out)
    assert code == EXIT_INVALID and v["free"] is False and v["offending_element"] == 1


def test_invalid_datum_commands(capsys, doc_file):
    path = doc_file(surface_doc(("0",) * 4))
    for cmd in ("betti", "hodge", "chern", "invariants", "report"):
        code, _, _ = run(capsys, cmd, path, "--format", "json")
        assert code == EXIT_INVALID, cmd


def test_parse_errors(capsys, doc_file):
    code, _, err = run(capsys, "validate", doc_file(surface_doc(("1/2", "0", "0"))))
    assert code == EXIT_PARSE and "translation length" in err
    code, _, err = run(capsys, "report", doc_file("{not json"))
    assert code == EXIT_PARSE
    doc = surface_doc()
    doc["colour"] = "blue"
    code, _, err = run(capsys, "validate", doc_file(doc))
    assert code == EXIT_PARSE and "colour" in err
    doc = surface_doc()
    doc["action"]["1"]["translation"] = ["1/3", "0", "0", "0"]
    code, _, err = run(capsys, "validate", doc_file(doc))
    assert code == EXIT_PARSE and "closure" in err


def test_decomposition_error_exit(capsys, doc_file):
    doc = json.loads((gallery_dir() / "hyperelliptic-surface-z3.json").read_text())["document"]
    del doc["tangent_characters"]
    code, _, err = run(capsys, "hodge", doc_file(doc))
    assert code == EXIT_PARSE and "not real" in err


def test_betti_hodge_chern(capsys, doc_file):
    path = doc_file(surface_doc())
    code, out, _ = run(capsys, "betti", path, "--format", "json")
    assert code == 0 and json.loads(out) == {"betti": [1, 2, 2, 2, 1]}
    code, out, _ = run(capsys, "hodge", path, "--format", "json")
    assert json.loads(out) == {"hodge": [1, 1, 0]}
    code, out, _ = run(capsys, "chern", path, "--format", "json")
    c = json.loads(out)
    assert c["all_ci_trivial"] is True and c["canonical_trivial_in_pic"] is False
    code, out, _ = run(capsys, "invariants", path)
    assert code == 0 and out.startswith("betti: [1, 2, 2, 2, 1]")


def test_report_json_is_stable(capsys):
    path = str(gallery_dir() / "bdf-threefold-z2.json")
    code, first, _ = run(capsys, "report", path, "--format", "json")
    code2, second, _ = run(capsys, "report", path, "--format", "json")
    assert code == code2 == EXIT_OK and first == second
    r = json.loads(first)
    assert list(r)[:3] == ["n", "group_order", "validation"]
    assert r["tors_h2"]["status"] == "proven"
    code, text, _ = run(capsys, "report", path)
    assert code == EXIT_OK and text.strip()


def test_gallery_list_and_run(capsys):
    code, out, _ = run(capsys, "gallery", "list")
    assert code == 0 and len(out.strip().splitlines()) == len(gallery())
    code, out, _ = run(capsys, "gallery", "run", "torus-1d")
    assert code == 0 and out.startswith("torus-1d: ok")
    code, _, err = run(capsys, "gallery", "run", "no-such-entry")
    assert code == EXIT_PARSE and "no-such-entry" in err


def test_gallery_mismatch_via_env(capsys, tmp_path, monkeypatch):
    src = gallery_dir() / "torus-1d.json"
    entry = json.loads(src.read_text())
    entry["expected"]["betti"]["value"] = [1, 2, 2]
    (tmp_path / "torus-1d.json").write_text(json.dumps(entry))
    shutil.copy(gallery_dir() / "torus-3d.json", tmp_path / "torus-3d.json")
    monkeypatch.setenv(GALLERY_ENV, str(tmp_path))
    code, out, _ = run(capsys, "gallery", "run")
    assert code == EXIT_MISMATCH
    assert "torus-1d: MISMATCH" in out and "torus-3d: ok" in out
    assert "betti: expected [1, 2, 2], got [1, 2, 1]" in out


@pytest.mark.parametrize("e", gallery(), ids=lambda e: e.id)
def test_gallery_roundtrip(e):
    d = e.data()
    assert parse(serialize(d)) == d
    assert parse(dumps(d)) == d


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_random_roundtrip(seed):
    d = random_bdf(random.Random(seed), max_rank=8)
    assert parse(dumps(d)) == d
    assert serialize(parse(serialize(d))) == serialize(d)


def test_parse_bounds():
    doc = surface_doc()
    doc["rank"] = 3
    with pytest.raises(ParseError):
        parse(doc)
    doc = surface_doc()
    doc["group"] = {"invariant_factors": [5, 13]}
    with pytest.raises(ParseError):
        parse(doc)


def test_load_accepts_gallery_entry_files():
    e = gallery()[0]
    assert load(gallery_dir() / f"{e.id}.json") == e.data()


def test_nonproduct_report(capsys):
    path = str(Path(__file__).parent / "data" / "nonproduct-z4.json")
    code, out, _ = run(capsys, "report", path, "--format", "json")
    r = json.loads(out)
    assert code == EXIT_OK
    assert r["psi"]["cokernel"] == {"free_rank": 0, "torsion": [2]}
    assert r["tors_h2"]["status"] == "quotient of Tors H^2 by coker psi"
    assert r["chern"]["all_ci_trivial"] is False
