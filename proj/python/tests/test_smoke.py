import json
import os
import pathlib

import pytest

import diolic

PROBLEMS = pathlib.Path(os.environ.get("DIOLIC_PROBLEMS", pathlib.Path(__file__).parents[2] / "problems"))


def load(name):
    return (PROBLEMS / name).read_text()


def test_version():
    assert diolic.__version__ == "0.1.0"


def test_poly_arithmetic():
    p = diolic.Poly("x1^2 + x2", 2)
    q = diolic.Poly("x1 - 1", 2)
    assert str(p * q) == str(diolic.Poly("x1^3 - x1^2 + x1*x2 - x2", 2))
    assert p.partial(1) == diolic.Poly("2*x1", 2)
    assert (p - p).is_zero()


def test_symbol_bracket_and_product():
    assert diolic.poisson_bracket("k1", "x1", 1) == "1"
    assert diolic.poisson_bracket("k1", "k2", 2) == "0"
    assert diolic.star("k1", "x1*k1", 1) == "x1*k1^2"


def test_check_reports():
    ok = diolic.check(load("poisson_so3.json"))
    assert ok["verdict"] == "pass" and ok["residuals"] == []
    bad = diolic.check(json.loads(load("poisson_perturbed.json")))
    assert bad["verdict"] == "fail"
    assert any(r["name"] == "poisson[1,2,3]" for r in bad["residuals"])


def test_bracket():
    r = diolic.bracket("der0", {"X": ["1"], "G": [["0"]]}, {"X": ["x1"], "G": [["0"]]}, 1)
    assert r["display"] == "(d1, 0)"
    assert diolic.bracket("symbol", "k1", "x1*k1")["value"] == "k1"


def test_cohomology():
    assert diolic.der_cohomology(1, 1, 3)["betti"] == [0, 0, 0]
    assert diolic.ce_cohomology(load("sl2_trivial.json"))["betti"] == [1, 0, 0, 1]
    assert diolic.ce_cohomology(load("abelian2_trivial.json"))["betti"] == [1, 2, 1]


def test_errors_map_to_python_exceptions():
    with pytest.raises(diolic.ParseError):
        diolic.check(load("malformed.json"))
    with pytest.raises(diolic.ResourceError):
        diolic.check(load("poisson_so3.json"), max_dim="n=2")
    with pytest.raises(ValueError):
        diolic.Poly("x3", 2)


def test_normalize_round_trip():
    text = diolic.normalize_problem(load("jacobi_witt.json"))
    assert diolic.normalize_problem(text) == text
