import os
from fractions import Fraction
from pathlib import Path

import pytest

import poislin

DATA = Path(os.environ.get("POISLIN_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def test_parse_and_round_trip():
    s = poislin.Structure.parse("coords x ; y\nbracket x y : y\n")
    assert s.x_names == ["x"]
    assert s.y_names == ["y"]
    assert s.bracket("x", "y") == "y"
    assert s.bracket("y", "x") == "-y"
    assert s.brackets() == {("x", "y"): "y"}
    assert poislin.Structure.parse(s.to_text()) == s
    assert poislin.Structure.parse("coords x ; y\n").brackets() == {}


def test_parse_errors():
    with pytest.raises(poislin.ParseError, match="line 3"):
        poislin.Structure.parse("coords a b ;\nbracket a b : 1\nbracket b a : 2\n")
    with pytest.raises(poislin.Error):
        poislin.Structure.parse("coords a b ;\nbracket a c : 1\n")


def test_linear_structures_are_poisson():
    for algebra in ["gl:2", "sl:3", "aff:2", "saff2", "e3"]:
        s = poislin.Structure.linear(algebra)
        assert s.is_poisson()
        assert s.degree == 1
    assert poislin.Structure.linear("aff:2").dimension == 6
    with pytest.raises(poislin.Error):
        poislin.Structure.linear("gl:0")


def test_shipped_files():
    saff = poislin.Structure.read(str(DATA / "saff2.pois"))
    assert saff == poislin.Structure.counterexample("saff2")
    assert saff.is_poisson()
    assert saff.rank_at([1, 0, 0, 0, 0]) == 4
    assert poislin.Structure.linear("saff2").rank_at(["1", 0, 0, 0, 0]) == 2


def test_linearize_perturbed():
    s = poislin.Structure.read(str(DATA / "aff2_perturbed.pois"))
    res = poislin.linearize(s, 2, 6)
    assert res["verified"]
    assert all(t == 0 for t in res["residual_terms"])
    assert res["tail"] == "phi 1 2 : z1\n"
    assert res["coordinate_change"].startswith("coord x11 :")
    assert "degree 6 : residual 0" in res["report"]


def test_counterexamples():
    for kind in ["saff2", "e3"]:
        ok, text = poislin.verify_counterexample(kind)
        assert ok
        assert f"PASS {kind} counterexample" in text


def test_pfaffian_and_determinant():
    m = [[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]]
    pf = poislin.pfaffian(m)
    assert pf == Fraction(1 * 6 - 2 * 5 + 3 * 4)
    assert pf * pf == poislin.determinant(m)
    assert poislin.pfaffian([[0, Fraction(1, 2)], [Fraction(-1, 2), 0]]) == Fraction(1, 2)
    with pytest.raises(poislin.DimensionError):
        poislin.pfaffian([[0, 1]])


def test_run():
    code, out, err = poislin.run(["check-jacobi", str(DATA / "e3.pois")])
    assert code == 0
    assert "Jacobi residual: 0 (exact)" in out
    code, _, err = poislin.run(["linearize", str(DATA / "aff2.pois"), "--degree", "99"])
    assert code == 2
    assert "exceeds the cap" in err
