"""Smoke test for the lpdeform extension module.

Build and install first, e.g. `pip install ./crates/python`, then run
`python python/smoke_test.py` from the repository root.
"""

import json
import pathlib
import sys

import lpdeform

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def read(name):
    return (FIXTURES / name).read_text()


def fixture_lines(name):
    return [l.strip() for l in read(name).splitlines() if l.strip() and not l.startswith("#")]


def main():
    chain = lpdeform.RootedTree(read("chain4.poset"))
    gens = chain.j_generators()
    assert len(gens) == 10, gens
    assert gens[0] == "a1*a2 - b1*u[0,a]", gens[0]
    assert chain.root == "a" and chain.children("a") == ["b"] and chain.parent("a") is None

    star = lpdeform.RootedTree(read("star2.poset"))
    assert star.poset.multiplicity() == 5
    assert star.poset.codimension() == 3
    assert star.u_variables() == ["u[0,a]", "u[a,b]", "u[c,b]", "u[a,c]", "u[b,c]"]
    assert star.minor("a", "a") == "b1*c1 - u[c,b]*u[b,c]", star.minor("a", "a")

    example = lpdeform.Poset(read("example66.poset"))
    assert not example.is_tree()
    maps = example.t1_generators()
    assert len(maps) == 11
    assert ("d1*d2", "a2*b2*c1") in maps

    again = lpdeform.Poset(star.poset.to_json())
    assert again.to_dsl() == star.poset.to_dsl()
    assert json.loads(star.poset.to_json())["root"] == "a"

    reports = lpdeform.RootedTree(read("chain3.poset")).check("full", 3)
    assert reports and all(r["verdict"] == "PASS" for r in reports), [r for r in reports if r["verdict"] != "PASS"]
    l, j = star.hilbert(4)
    assert l == j == [1, 9, 44, 157, 456], (l, j)

    assert [len(lpdeform.rooted_trees(n)) for n in range(1, 7)] == [1, 1, 2, 4, 9, 20]

    try:
        lpdeform.Poset("a < b\nb < a")
    except lpdeform.LpError:
        pass
    else:
        raise AssertionError("cycle accepted")
    try:
        lpdeform.RootedTree(read("appendix7.poset")).check("full", 3, max_spairs=1)
    except lpdeform.ResourceLimitError:
        pass
    else:
        raise AssertionError("budget ignored")

    appendix = lpdeform.RootedTree(read("appendix7.poset"))
    assert len(appendix.j_generators()) == 18
    print("smoke test passed")


if __name__ == "__main__":
    sys.exit(main())
