import json

import pytest

import hermpir


def test_format_and_rates():
    assert hermpir.format_sig5(1, 15) == "0.066667"
    r = hermpir.rational_rate(841, 15, 15)
    assert (r["L"], r["N"], r["decimal"]) == (405, 435, "0.93103")
    h = hermpir.hyperelliptic_rate(841, 1, 900, 3, 15, 15)
    assert (h["numerator"], h["denominator"]) == (43, 45)
    assert hermpir.hermitian_rate(11, 5, 5)["L"] == 429
    assert hermpir.hermitian_rate(11, 5, 5, "table-deg-N")["decimal"] == "0.50890"
    with pytest.raises(ValueError):
        hermpir.hermitian_rate(11, 5, 5, "other")


def test_counts():
    assert hermpir.count_points_hermitian(5) == 126
    assert hermpir.count_points_hyperelliptic(29, 2, [1, 0, 0]) == (900, 3)


def test_tables():
    csv = hermpir.render_table(2, "csv").splitlines()
    assert csv[1].startswith("g=0,0.93103")
    doc = json.loads(hermpir.render_table(3, "json"))
    assert len(doc["rows"]) == 7


def test_protocol_and_certify():
    r = hermpir.pir_roundtrip(5, 1, 1, files=3, desired=2, seed=4)
    assert r == {"L": 15, "N": 85, "correct": True}
    c = hermpir.certify(5, 1, 1)
    assert c["rate"] == "15/85"
    assert c["noise_count"] == 60
    assert c["all_passed"]


def test_suite_and_cli():
    assert "codes" in hermpir.suite_names()
    assert hermpir.run_suite("codes")["all_passed"]
    code, out, _ = hermpir.cli(["count-points", "--curve", "hermitian", "--q", "3"])
    assert code == 0 and "points: 28" in out
    code, _, err = hermpir.cli(["pir-demo", "--q", "3", "--x", "20"])
    assert code == 2 and "violated" in err
