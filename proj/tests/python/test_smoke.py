from fractions import Fraction

import pytest

import hessrank


def test_polynomial_round_trip():
    p = hessrank.Polynomial("2/3*x1 - x1")
    assert str(p) == "-1/3*x1"
    assert hessrank.Polynomial(str(p)) == p


def test_arithmetic_and_evaluation():
    p = hessrank.Polynomial("x1 + 2*x2")
    cube = p ** 3
    assert cube == hessrank.Polynomial("(x1+2*x2)^3")
    assert cube.degree == 3
    assert cube.evaluate([1, Fraction(1, 2)]) == 8
    assert (p * p - p * p) == hessrank.Polynomial("0", vars=2)
    assert p.derivative(2) == hessrank.Polynomial("2", vars=2)


def test_parse_error():
    with pytest.raises(hessrank.ParseError):
        hessrank.Polynomial("x1 +")


def test_ranks():
    gn = hessrank.Polynomial("x1^2*x3 + x1*x2*x4 + x2^2*x5")
    assert hessrank.hessian_rank(gn) == 4
    assert hessrank.rank_profile(gn) == {"r": 4, "trdeg_K": 4, "trdeg_L": 4}


def test_analyze_quadric():
    report = hessrank.analyze("x1^2+5*x2^2")
    assert report["rank"]["r"] == 2
    assert report["apex"]["s"] == 2
    assert report["decomposition"]["form"] == "i"


def test_analyze_several():
    reports = hessrank.analyze(["x1^2", "x1*x2"])
    assert [r["rank"]["r"] for r in reports] == [1, 2]


def test_smith():
    report = hessrank.smith([["t", "t^2"], ["1", "t"]], domain="polyt")
    assert report["normal_form"]["r"] == 1
    assert all(report["verification"].values())


def test_errors():
    with pytest.raises(hessrank.HessrankError) as info:
        hessrank.analyze("x1 + t")
    assert info.value.code == 1
    code, out, err = hessrank.run(["bogus"])
    assert code == 1
