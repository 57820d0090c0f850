import math

import pytest

import fkdet

LEHMER = "z^10 + z^9 - z^7 - z^6 - z^5 - z^4 - z^3 + z + 1"


def test_version():
    assert fkdet.__version__ == "0.1.0"


def test_canonical_polynomial_round_trip():
    text = fkdet.canonical_polynomial("z1*z2^-2 + 3")
    assert fkdet.canonical_polynomial(text) == text


def test_lehmer_measure():
    r = fkdet.mahler(LEHMER)
    assert abs(r["value"] - 1.17628) < 5e-6
    assert r["method"] == "jensen"


def test_two_variable_measures_agree():
    bl = fkdet.mahler("1 + z1 + z2")["value"]
    q = fkdet.mahler("1 + z1 + z2", method="quadrature", grid=1024)["value"]
    assert abs(bl - q) < 1e-2


def test_finite_golden_values():
    r = fkdet.fk_det_finite([["t + 2"]], 2)
    assert (r["exact"]["base"], r["exact"]["exponent"]) == ("3", "1/2")
    assert math.isclose(r["value"], math.sqrt(3))
    r = fkdet.fk_det_finite([["1", "1"], ["0", "0"]], 1)
    assert r["exact"]["text"] == "2^(1/2)"
    assert r["vn_dim_kernel"] == "1"
    r = fkdet.fk_det_finite([["t1 + 2"]], [2, 2])
    assert r["group_order"] == 4


def test_zd_pipeline():
    r = fkdet.fk_det_zd([["z", "1"], ["1", "z - 1"]])
    assert math.isclose(r["value"], (1 + math.sqrt(5)) / 2, rel_tol=1e-10)
    r = fkdet.fk_det_zd([["z - 1"], ["z^2 - 1"]])
    assert r["q"] == 1


def test_scans():
    r = fkdet.lehmer_scan(group=2, coeff_bound=2)
    assert r["witness"] == "2 + t"
    assert r["infimum"]["exact"]["text"] == "3^(1/2)"
    r = fkdet.lehmer_scan(box=[4], variant="Lambda_1")
    assert r["infimum"]["value"] > 1


def test_approx_chain():
    r = fkdet.approx_chain([["z - 2"]], "2..12")
    assert len(r["stages"]) == 11
    assert all(s["value"] <= 2 + 1e-9 for s in r["stages"])
    assert r["csv"].startswith("moduli,value\n")


def test_constants():
    names = [c["name"] for c in fkdet.exact_constants(5)]
    assert names == ["Lambda", "Lambda_1", "Lambda^w", "Lambda^w_1"]
    assert fkdet.torsion_bound(3)["text"] == "2^(1/3)"


def test_errors():
    with pytest.raises(fkdet.DomainError):
        fkdet.mahler("0")
    with pytest.raises(fkdet.ParseError):
        fkdet.mahler("z +")
    with pytest.raises(ValueError):
        fkdet.fk_det_finite([["e"]], 0)


def test_run_matches_tool():
    report = fkdet.run_json(subcommand="fkdet-finite", cyclic=2, elem="t+2")
    assert report["result"]["value"]["exact"]["text"] == "3^(1/2)"
    code, _, error = fkdet.run({"subcommand": "mahler", "poly": "0"})
    assert code == 1 and '"domain"' in error
    with pytest.raises(fkdet.ConfigError):
        fkdet.run({"subcommand": "mahler", "color": "red"})
