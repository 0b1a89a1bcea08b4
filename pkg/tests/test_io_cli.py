import json
from importlib.resources import files

import pytest

from canonsys import io
from canonsys.canonical import canonical_system
from canonsys.cli import main
from canonsys.cyclo import CycloNum, zeta
from canonsys.poly import Poly
from conftest import group

GOLDEN = files("canonsys") / "data" / "golden_b2.json"

x = Poly.var(2, 1)
y = Poly.var(2, 2)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poly_json_roundtrip():
    p = x**3 * y.scale(zeta(12, 5)) - x.scale(CycloNum.from_rational(3, 1) / 7) + 2
    data = io.poly_to_json(p)
    assert io.poly_from_json(json.loads(json.dumps(data))) == p
    assert data["terms"][0]["exp"] == [3, 1]


def test_poly_json_rejects_garbage():
    with pytest.raises(io.FormatError):
        io.poly_from_json({"n": 2, "terms": [{"exp": [1], "coeff": "1; 0:1"}]})
    with pytest.raises(io.FormatError):
        io.poly_from_json({"terms": []})


def test_canonical_json_roundtrip():
    g = group("G4")
    cs = canonical_system(g)
    back = io.canonical_from_json(json.loads(io.dumps(io.canonical_to_json(cs))))
    assert back.pairs == cs.pairs and back.degrees == cs.degrees


def test_latex():
    cs = canonical_system(group("B:2"))
    tex = io.canonical_latex(cs, "B2")
    assert "\\sqrt{192}" in tex and "x^{4} - 6 x^{2} y^{2} + y^{4}" in tex
    assert io.cyclo_latex(zeta(3) - CycloNum.from_rational(1) / 2) == "-\\frac{1}{2} + \\zeta_{3}"


def test_info_dihedral3(capsys):
    code, out, _ = run(capsys, "info", "dihedral:3", "--json")
    rep = json.loads(out)["report"]
    assert code == 0
    assert rep["info"]["order"] == 6 and rep["info"]["reflections"] == 3
    assert rep["info"]["degrees"] == [2, 3]


def test_info_cyclic4(capsys):
    code, out, _ = run(capsys, "info", "cyclic:4", "--json")
    info = json.loads(out)["report"]["info"]
    assert code == 0
    assert info["order"] == 4 and info["reflections"] == 3
    assert info["hyperplanes"] == [{"L": "x", "e": 4}]
    assert info["delta"] == "x^3" and info["degrees"] == [4]


def test_info_g4(capsys):
    code, out, _ = run(capsys, "info", "G4", "--json")
    info = json.loads(out)["report"]["info"]
    assert code == 0
    assert info["order"] == 24 and info["reflections"] == 8
    assert [h["e"] for h in info["hyperplanes"]] == [3, 3, 3, 3]
    assert info["degrees"] == [4, 6]


def test_invariants_cyclic5(capsys, tmp_path):
    out = tmp_path / "inv.json"
    code, _, _ = run(capsys, "invariants", "cyclic:5", "--out", str(out))
    assert code == 0
    sys = io.invariants_from_json(io.read_json(out))
    assert sys.polys == [Poly.var(1, 1) ** 5]


def test_invariants_b2_seeded(capsys):
    code, out, _ = run(capsys, "invariants", "B:2", "--seed", "7", "--json")
    data = json.loads(out)
    assert code == 0 and data["report"]["passed"]
    assert data["system"]["degrees"] == [2, 4]


def test_invariants_from_dependent_file(capsys, tmp_path):
    bad = tmp_path / "dep.json"
    q = x**2 + y**2
    io.write_json(bad, io.invariants_to_json(io.InvariantSystem([q, q * q], [2, 4])))
    code, out, _ = run(capsys, "invariants", "dihedral:4", "--from", str(bad))
    assert code == 1
    assert "[FAIL] jacobian nonzero" in out


def test_canonical_b2(capsys, tmp_path):
    out = tmp_path / "b2.json"
    code, text, _ = run(capsys, "canonical", "B:2", "--out", str(out), "--latex")
    assert code == 0
    cs = io.canonical_from_json(io.read_json(out))
    assert cs.pairs[1][0] == x**4 - (x**2 * y**2).scale(6) + y**4
    assert (tmp_path / "b2.tex").exists()
    assert "result: PASS" in text


def test_canonical_cyclic6(capsys):
    code, out, _ = run(capsys, "canonical", "cyclic:6", "--json")
    data = json.loads(out)
    assert code == 0
    cs = io.canonical_from_json(data["system"])
    assert cs.pairs == [(Poly.var(1, 1) ** 6, CycloNum.from_rational(720))]


def test_canonical_dihedral5(capsys):
    code, out, _ = run(capsys, "canonical", "dihedral:5", "--json")
    data = json.loads(out)
    assert code == 0 and data["report"]["passed"]
    assert data["system"]["degrees"] == [2, 5]


def test_canonical_from_file(capsys, tmp_path):
    src = tmp_path / "h.json"
    io.write_json(src, io.invariants_to_json(io.InvariantSystem([x**2 + y**2, x**4 + y**4], [2, 4])))
    code, out, _ = run(capsys, "canonical", "B:2", "--from", str(src), "--json")
    assert code == 0
    assert json.loads(out)["system"] == io.canonical_to_json(canonical_system(group("B:2")))


def test_verify_golden(capsys):
    code, out, _ = run(capsys, "verify", "B:2", str(GOLDEN))
    assert code == 0 and "result: PASS" in out
    golden = io.canonical_from_json(io.read_json(str(GOLDEN)))
    assert golden.pairs[0] == (x**2 + y**2, CycloNum.from_rational(4))
    assert golden.pairs[1] == (x**4 - (x**2 * y**2).scale(6) + y**4, CycloNum.from_rational(192))


def test_verify_non_canonical(capsys, tmp_path):
    f = tmp_path / "naive.json"
    data = {"degrees": [2, 4], "pairs": [
        {"g": io.poly_to_json(x**2 + y**2), "c": "1; 0:4"},
        {"g": io.poly_to_json(x**4 + y**4), "c": "1; 0:48"},
    ]}
    f.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "B:2", str(f))
    assert code == 1
    assert "[FAIL] (a)" in out


def test_verify_cyclic3(capsys, tmp_path):
    f = tmp_path / "c3.json"
    f.write_text(json.dumps({"degrees": [3], "pairs": [
        {"g": {"n": 1, "terms": [{"exp": [3], "coeff": "1; 0:1"}]}, "c": "1; 0:6"}]}))
    code, _, _ = run(capsys, "verify", "cyclic:3", str(f))
    assert code == 0


def test_verify_dimension_mismatch(capsys):
    code, _, err = run(capsys, "verify", "cyclic:3", str(GOLDEN))
    assert code == 2 and "error" in err


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "info", "nonsense:3")[0] == 2
    assert run(capsys, "info", "G:4,3,2")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", "B:2", str(bad))[0] == 2
    assert run(capsys, "info", "cyclic:5", "--cap", "3")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_strict_irreducible_flag(capsys):
    assert run(capsys, "info", "G:2,2,2")[0] == 0
    assert run(capsys, "info", "G:2,2,2", "--strict-irreducible")[0] == 2


def test_determinism_and_roundtrip(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(capsys, "canonical", "G4", "--seed", "3", "--out", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, "verify", "G4", str(a))
    assert code == 0
    inv_a, inv_b = tmp_path / "ia.json", tmp_path / "ib.json"
    for p in (inv_a, inv_b):
        run(capsys, "invariants", "B:3", "--seed", "11", "--out", str(p))
    assert inv_a.read_bytes() == inv_b.read_bytes()
    assert run(capsys, "invariants", "B:3", "--from", str(inv_a))[0] == 0
