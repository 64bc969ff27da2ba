"""Smoke test for the cbdiv_py extension module."""

from fractions import Fraction

import cbdiv_py as cb


def main():
    b2 = cb.Algebra("B", 2)
    assert b2.dual_coxeter == 3
    assert sorted(b2.level_weights(1)) == ["w0", "w1", "w2"]
    assert Fraction(b2.trace_anomaly(1, "w2")) == Fraction(5, 16)

    assert cb.rank("B", 2, ["w2"] * 4) == 2
    d = cb.divisor("B", 2, ["w2"] * 4)
    assert [Fraction(x) for x in d.psi] == [Fraction(5, 8)] * 4
    assert cb.Divisor.from_json(d.to_json()) == d

    res = cb.certify("B", 3, ["w1", "w1", "w3", "w3", "w3", "w3"])
    assert res["status"] == "certified" and res["method"] == "explicit-B"
    report = cb.check_certificate(res["divisor"], res["weighting"])
    assert report["verdict"] and all(Fraction(r) == 0 for r in report["vertex_residuals"])

    psi1 = cb.Divisor.from_json('{"n":4,"psi":["1","0","0","0"],"boundary":[]}')
    w = cb.lp_search(psi1)
    assert w is not None and cb.check_certificate(psi1, w)["verdict"]

    assert cb.scale_check(2, 4, 2)
    prop = cb.verify_proposition("D", 4, ["w1", "w1", "w4", "w4"])
    assert prop["all_hold"]

    try:
        cb.rank("B", 1, ["w1"] * 4)
    except ValueError as e:
        assert "rank" in str(e)
    else:
        raise AssertionError("B1 accepted")
    print("smoke test ok")


if __name__ == "__main__":
    main()
