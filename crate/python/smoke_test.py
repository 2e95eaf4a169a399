"""Smoke test for the pysturmlex extension module.

Build the module first (see README), then run:  python3 python/smoke_test.py
"""

from fractions import Fraction

import pysturmlex as sl


def main():
    assert sl.pal("011") == "01010"
    assert sl.palindromic_closure("011") == "0110"

    cert = sl.central_from_slope(2, 5)
    assert (cert.word, cert.p, cert.q, cert.periods, cert.directive) == ("010", 2, 5, (2, 3), "01")
    assert cert.slope() == Fraction(2, 5)
    assert sl.is_central("0011") is None

    u = sl.Seq("(1100)")
    assert str(u) == "(1100)"
    assert sl.Seq("0(10)") == sl.Seq("(01)")
    assert u.value() == Fraction(4, 5)
    assert sl.Seq.expansion(Fraction(1, 4)) == sl.Seq("00(1)")
    assert sl.Seq.expansion(Fraction(1, 4), "greater") == sl.Seq("01(0)")

    res = sl.phi_zero_u(u)
    assert res["phi"] == sl.Seq("(110)")
    assert res["central"].word == "1"
    assert res["phi"] == sl.brute_phi(u, 6)
    assert sl.verify_phi(u, res["phi"])["passed"]
    assert not sl.verify_phi(u, "(10)")["passed"]
    assert sl.phi("1(0)")["phi"] == sl.Seq("(1)")

    decided = sl.phi_prefix("010010011")
    assert decided is not None and str(decided["phi"]) == "(10100100)"
    assert sl.phi_prefix("01") is None

    f = sl.F(Fraction(2, 5))
    assert f["F"] == Fraction(6, 7) == sl.brute_F(Fraction(2, 5))
    assert sl.F("3/4")["F"] == 1

    assert sl.characteristic_sturmian_prefix("(01)", 16) == "0100101001001010"
    assert sl.classify("(01001)") == "characteristic_periodic_balanced"

    try:
        sl.Seq("01(1")
    except ValueError as e:
        assert "position" in str(e)
    else:
        raise AssertionError("malformed sequence accepted")

    print("pysturmlex smoke test: ok")


if __name__ == "__main__":
    main()
