"""Smoke test for the lll_py extension.

Build first:  maturin build -m crates/python/Cargo.toml && pip install target/wheels/lll_py-*.whl
"""

from fractions import Fraction

import lll_py


def main():
    firm = lll_py.firm(jobs=100, seed=1)
    assert len(firm) == 100
    assert all(m == Fraction(1, 128) for m in firm.measures())
    cert = lll_py.check(firm, d=32)
    assert cert["applicable"] and cert["d"] == 32

    circle = lll_py.circle(100, 16, seed=1)
    result = lll_py.solve(circle, seed=7)
    assert result["solved"]
    assert lll_py.verify(circle, result["assignment"]) == []

    h = lll_py.hypergraph(9, 300, seed=2)
    assert not lll_py.check(h)["applicable"]
    assert lll_py.check(h, variant="e")["applicable"]

    k6 = lll_py.ramsey(6, 3)
    assert not lll_py.solve(k6, seed=1, budget=2000)["solved"]

    cnf = lll_py.ksat_from_dimacs("p cnf 3 2\n1 -2 0\n2 3 0\n")
    again = lll_py.Instance.from_text(cnf.to_text())
    assert again.to_text() == cnf.to_text()

    small = lll_py.Instance.from_text(
        "lll-instance 1\nfamily toy\nspace product 2*6\n"
        "event a mono 0 1 2\nevent b mono 3 4 5\n"
    )
    assert "result all-hold" in lll_py.induction_table(small, 1)

    try:
        lll_py.Instance.from_text("garbage")
    except ValueError as e:
        assert "line 1" in str(e)
    else:
        raise AssertionError("malformed text accepted")

    print("lll_py smoke test passed")


if __name__ == "__main__":
    main()
