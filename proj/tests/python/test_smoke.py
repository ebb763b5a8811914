import pytest

import confext


def test_ext_weights_zero_under_one():
    r = confext.ext("vir", "M(0,0)", "M(0,1)")
    assert r["ext_dim"] == 3
    assert r["scenario"] == "S7"
    assert len(r["basis"]) == len(r["certificates"]) == 3


def test_ext_character_under_weight_two():
    assert confext.ext("vir", "C(-1)", "M(1,2)")["ext_dim"] == 1


def test_ext_current_v3_under_v1():
    r = confext.ext("cur:sl2", "M(V3)", "M(V1)", dpart=3, dlam=3, probe=False)
    assert r["ext_dim"] == 2


def test_classify_degrees_six_and_seven():
    rows = confext.classify(6, 7)
    assert rows[0]["roots"] == ["-4", "0"]
    assert sorted(rows[1]["roots"]) == ["-5/2+1/2*sqrt(19)", "-5/2-1/2*sqrt(19)"]


def test_classify_low_degrees_are_identically_satisfiable():
    assert all(r["identically_satisfiable"] for r in confext.classify(3, 5))


def test_recursion_coefficient():
    assert confext.recursion_coeff(6, "0", 4, "1", "0") == "2"


def test_bad_descriptor_raises():
    with pytest.raises(confext.ConfextError):
        confext.ext("vir", "M(0", "M(0,1)")


def test_section_three_table():
    t = confext.table(3)
    assert all(row["status"] == "PASS" for row in t["rows"])
