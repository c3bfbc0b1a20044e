from fractions import Fraction

import pytest

from waringsing.batch import Axis, BatchGrid, classify_point, run_batch
from waringsing.errors import PreconditionError
from waringsing.resultants import R2_eval


def grid(d=4, ring="qq_i", lo=-2, hi=2, step=Fraction(1, 10), k=2):
    axes = tuple(Axis(n, Fraction(lo), Fraction(hi), step) for n in "ab"[:k])
    return BatchGrid(d, k, axes, ring=ring)


def test_exact_quartic_grid_singular_points():
    out = run_batch(grid())
    s = out["summary"]
    assert s["points"] == 40 * 40 and s["clipped"] == 41 * 41 - 40 * 40
    singular = sorted(tuple(Fraction(p) for p in r["params"]) for r in out["results"] if r["singular"])
    assert singular == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    # independent check: R2 vanishes exactly there
    for a, b in singular:
        assert R2_eval(4, a, b) == 0
    assert all(r["type"] == "A3" and r["mu"] == 6 for r in out["results"] if r["singular"])


def test_jobs_do_not_change_output():
    g = grid(d=3, ring="c64", step=Fraction(1, 20))
    assert run_batch(g, jobs=1, chunk_size=500) == run_batch(g, jobs=2, chunk_size=500)


def test_clipping_and_empty_grid():
    g = BatchGrid(3, 2, (Axis("a", Fraction(0), Fraction(0), Fraction(1)), Axis("b", Fraction(1), Fraction(2), Fraction(1))))
    out = run_batch(g)
    assert out["summary"] == {"points": 0, "singular": 0, "clipped": 2, "histogram": {}}
    empty = BatchGrid(3, 2, (Axis("a", Fraction(2), Fraction(1), Fraction(1)), Axis("b", Fraction(1), Fraction(2), Fraction(1))))
    assert run_batch(empty)["summary"]["points"] == 0


def test_grid_json_roundtrip():
    g = grid(step=Fraction(1, 3))
    assert BatchGrid.from_json(g.to_json()) == g


def test_classify_point_k3_enumeration():
    rec = classify_point(3, 3, (-1, -1, -1), "qq_i", 1e-8)
    assert rec == {"singular": True, "NS": 3, "mu": 3, "type": "A1"}


@pytest.mark.parametrize("bad", [
    lambda: Axis("a", Fraction(0), Fraction(1), Fraction(0)),
    lambda: BatchGrid(3, 2, (Axis("a", Fraction(1), Fraction(2), Fraction(1)),)),
    lambda: BatchGrid(2, 2, (Axis("a", Fraction(1), Fraction(2), Fraction(1)),) * 2),
    lambda: run_batch(grid(), jobs=0),
])
def test_preconditions(bad):
    with pytest.raises(PreconditionError):
        bad()
