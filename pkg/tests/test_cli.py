import json

import pytest

from kbskein import cli
from kbskein.cli import UsageError, emit_report, parse_product, run
from kbskein.relations import verify_localization
from kbskein.ring import ONE, Q_HALF, LaurentScalar
from kbskein.rewrite import RewriteError
from kbskein.skein import SkeinVector, bracket, engine_for
from kbskein.terms import TermPoly
from kbskein.topology import CuttingSystem, genus_boundary, planar, validate

from conftest import product_diagram


def _run(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = run(list(argv) + ["-o", str(out)])
    return code, (out.read_text() if out.exists() else None)


def test_parse_product_examples():
    t1, t2 = TermPoly.gen(1), TermPoly.gen(2)
    assert parse_product("t1,t2") == t1 * t2
    assert parse_product("q^{1/2} t1.2") == TermPoly.gen(1, 2).scale(Q_HALF)
    assert parse_product("t1,t2 - t2,t1") == t1 * t2 - t2 * t1
    assert parse_product("q^{-1} t12 + 3 t1.12") == (TermPoly.gen(1, 2).scale(LaurentScalar.q_half(-2))
                                                    + TermPoly.gen(1, 12).scale(LaurentScalar(3)))
    assert parse_product("1") == TermPoly.one()


@pytest.mark.parametrize("bad", ["", "x1", "t1,,t2", "t11", "q^{1/3} t1"])
def test_parse_product_errors(bad):
    with pytest.raises(UsageError):
        parse_product(bad)


def test_parse_product_inactive_edge():
    with pytest.raises(UsageError):
        parse_product("t1,t4", planar(3).active_edges)


def test_surface_verb(tmp_path):
    code, text = _run(tmp_path, "surface", "--planar", "3")
    assert code == 0
    doc = json.loads(text)
    cs = CuttingSystem.from_json(doc["surface"])
    assert validate(cs).ok and cs == planar(3)
    assert doc["tool"] == "skein" and doc["surface_hash"] == cs.digest()
    # the written file is accepted back as a surface
    code, _ = _run(tmp_path, "surface", "--surface", str(tmp_path / "out.json"))
    assert code == 0


def test_bracket_matches_library(tmp_path):
    cs = genus_boundary(1, 0)
    s = tmp_path / "s.json"
    s.write_text(json.dumps(cs.to_json()))
    code, text = _run(tmp_path, "bracket", "--surface", str(s), "--product", "t1,t2")
    assert code == 0
    v = SkeinVector.from_json(json.loads(text)["vector"])
    assert v == bracket(product_diagram(cs, ((1,), (2,))))


def test_bracket_specialized(tmp_path):
    code, text = _run(tmp_path, "bracket", "--genus", "1", "--product", "t1,t2", "--q-special", "-1")
    assert code == 0
    coeffs = [t["coeff"] for t in json.loads(text)["vector"]["terms"]]
    assert coeffs == ["-1", "-1"]


def test_rewrite_verb(tmp_path):
    code, text = _run(tmp_path, "rewrite", "--genus", "1", "--product", "t1,t2,t1")
    assert code == 0
    doc = json.loads(text)
    cs = genus_boundary(1, 0)
    p = TermPoly.from_json(doc["rewrite"])
    eng = engine_for(cs)
    assert doc["verified"] and eng.theta_eval(p) == eng.theta_eval(parse_product("t1,t2,t1"))


def test_verify_matches_library(tmp_path):
    code, text = _run(tmp_path, "verify", "--genus", "1", "--holes", "0", "--degree", "3")
    assert code == 0
    doc = json.loads(text)
    r = verify_localization(genus_boundary(1, 0), 3)
    assert doc["kernel_dim"] == r.kernel_dim and doc["ideal_rank"] == r.ideal_rank
    assert doc["conclusion"] == "verified up to degree 3"


def test_verify_text(tmp_path):
    code, text = _run(tmp_path, "verify", "--planar", "3", "--degree", "2", "--format", "text")
    assert code == 0 and "verified up to degree 2" in text


def test_relations_and_export(tmp_path):
    code, text = _run(tmp_path, "relations", "--planar", "3", "--support", "1,2", "--degree", "2")
    assert code == 0
    (rs,) = json.loads(text)["relation_sets"]
    assert rs["support"] == [1, 2] and len(rs["relations"]) == 1
    code, text = _run(tmp_path, "export", "--planar", "4", "--support", "1,2", "--degree", "2")
    assert code == 0 and len(json.loads(text)["generators"]) == 14
    code, text = _run(tmp_path, "export", "--planar", "3", "--support", "1,2", "--degree", "2",
                      "--q-special", "-1", "--format", "text")
    assert code == 0 and "commutators (21)" in text


def test_exit_code_bad_flags(tmp_path, capsys):
    assert run(["bogus"]) == 2
    assert run(["surface"]) == 2
    assert run(["surface", "--planar", "3", "--genus", "1"]) == 2
    assert run(["bracket", "--planar", "3", "--product", "t9"]) == 2
    assert run(["bracket", "--planar", "3", "--product", "t1", "--q-special", "0"]) == 2
    assert run(["relations", "--planar", "3", "--support", "1"]) == 2
    assert run(["surface", "--surface", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_exit_code_abort(monkeypatch, capsys):
    def fail(cs, v):
        raise RewriteError("no chop identity")
    monkeypatch.setattr(cli, "rewrite_element", fail)
    assert run(["rewrite", "--planar", "2", "--product", "t1,t2"]) == 3
    assert "aborted" in capsys.readouterr().err


def test_exit_code_resource_cap(capsys):
    assert run(["verify", "--planar", "3", "--degree", "8"]) == 4
    assert "resource cap" in capsys.readouterr().err


def test_determinism(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    argv = ["export", "--genus", "1", "--support", "1,2", "--degree", "3", "--q-special", "-1"]
    assert run(argv + ["-o", str(a)]) == 0
    assert run(argv + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_emit_report_stable():
    rep = {"b": 1, "a": [ONE.to_json()]}
    assert emit_report(rep) == emit_report(dict(reversed(list(rep.items()))))
    assert json.loads(emit_report(rep)) == rep


def test_main_exits(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["surface", "--planar", "2"])
    assert exc.value.code == 0
    assert json.loads(capsys.readouterr().out)["word"]
