"""Smoke test for the outerstring extension module.

Build it first with `pip install --no-build-isolation -e crates/py`.
"""

import json
import pathlib

import outerstring

DATA = pathlib.Path(__file__).resolve().parent.parent / "crates" / "cli" / "tests" / "data"


def main():
    nest = outerstring.Family.load(str(DATA / "nest.json"))
    assert len(nest) == 3 and nest.ids() == ["u", "s", "v"], nest.ids()
    stats = nest.stats()
    assert (stats["omega"], stats["chi"]) == (3, 3), stats
    assert len(nest.edges()) == 3

    again = outerstring.Family.from_json(nest.to_json())
    assert again.ids() == nest.ids()

    try:
        outerstring.Family.from_json(json.dumps(
            {"curves": [{"id": "a", "vertices": [[0, 0], [1, 1]]}, {"id": "b", "vertices": [[0, 0], [2, 1]]}]}
        ))
    except ValueError as e:
        assert "invalid family" in str(e)
    else:
        raise AssertionError("shared basepoint accepted")

    r = outerstring.extract(nest, "clique-system", t=2, n=0)
    assert r["outcome"] == "structure-found", r
    r = outerstring.extract(nest, "bracket-system", k=3)
    assert r["outcome"] == "step-failure" and r["failure"]["step"] == "F_0", r
    r = outerstring.extract(nest, "mcguinness", alpha=1, beta=1)
    assert r["failure"]["step"] == "precondition", r

    assert outerstring.f_bound(0, 2) == 1616
    assert outerstring.chi_bound(1) == 1
    assert outerstring.chi_bound(2) == 318760014302289

    fam = outerstring.Family.generate(10, seed=7, kind="polylines")
    assert len(fam) == 10
    assert outerstring.Family.generate(10, seed=7, kind="polylines").to_json() == fam.to_json()

    fig = outerstring.Family.load(str(DATA / "fig3.json"))
    bracket = json.loads((DATA / "fig3_bracket.json").read_text())
    svg = fig.render(highlight=["p1"], brackets=[bracket])
    golden = (DATA.parent / "golden" / "fig3.svg").read_text()
    assert svg == golden

    print("smoke test passed")


if __name__ == "__main__":
    main()
