"""Parameter-grid sweeps over the canonical family ``k``-parameter space."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import PreconditionError
from .scalars import EXACT, format_rational, parse_rational
from .singular import SystemS, solve_system_S, type_label

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Axis:
    name: str
    start: Fraction
    stop: Fraction
    step: Fraction

    def __post_init__(self):
        if self.step <= 0:
            raise PreconditionError(f"axis {self.name}: step must be positive")

    def values(self) -> list[Fraction]:
        out = []
        v = self.start
        while v <= self.stop:
            out.append(v)
            v += self.step
        return out


@dataclass(frozen=True)
class BatchGrid:
    d: int
    k: int
    axes: tuple
    n: int = 3
    ring: str = EXACT
    tol: float = 1e-8

    def __post_init__(self):
        if len(self.axes) != self.k:
            raise PreconditionError(f"k = {self.k} needs {self.k} axes, got {len(self.axes)}")
        if not 2 <= self.k <= self.n:
            raise PreconditionError("need 2 <= k <= n")
        if self.d < 3:
            raise PreconditionError("degree must be at least 3")

    @classmethod
    def from_json(cls, obj: dict) -> "BatchGrid":
        axes = tuple(
            Axis(a["name"], parse_rational(a["start"]), parse_rational(a["stop"]), parse_rational(a["step"]))
            for a in obj["axes"]
        )
        return cls(int(obj["d"]), int(obj["k"]), axes, int(obj.get("n", 3)), obj.get("ring", EXACT),
                   float(obj.get("tol", 1e-8)))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "n": self.n,
            "ring": self.ring,
            "axes": [{"name": a.name, "start": format_rational(a.start), "stop": format_rational(a.stop),
                      "step": format_rational(a.step)} for a in self.axes],
        }

    def points(self):
        """``(index, params)`` in grid order, coordinate axes removed."""
        values = [a.values() for a in self.axes]
        clipped = 0
        out = []
        for idx in product(*[range(len(v)) for v in values]):
            params = tuple(values[i][j] for i, j in enumerate(idx))
            if any(p == 0 for p in params):
                clipped += 1
                continue
            out.append((idx, params))
        return out, clipped


def classify_point(d: int, n: int, params: tuple, ring: str, tol: float) -> dict:
    """Smooth/singular verdict, ``N(S)``, global Milnor number and type."""
    k = len(params)
    if ring == EXACT and k == 2:
        from .resultants import R2_eval, common_root_count

        a, b = params
        ns = common_root_count(d, a, b) if R2_eval(d, a, b) == 0 else 0
    else:
        a = params if ring == EXACT else tuple(float(p) for p in params)
        ns = solve_system_S(SystemS(d, a), tol).NS
    return {
        "singular": ns > 0,
        "NS": ns,
        "mu": ns * (d - 1) ** (n - k),
        "type": type_label(n, k, d) if ns else None,
    }


def _chunk(args):
    d, n, ring, tol, items = args
    return [classify_point(d, n, params, ring, tol) for _, params in items]


def _encode(p: Fraction, ring: str):
    return format_rational(p) if ring == EXACT else float(p)


def run_batch(grid: BatchGrid, jobs: int = 1, chunk_size: int = 2000) -> dict:
    if jobs < 1:
        raise PreconditionError("jobs must be at least 1")
    items, clipped = grid.points()
    if clipped:
        log.warning("clipped %d grid points on coordinate axes (parameters must be nonzero)", clipped)
    chunks = [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]
    tasks = [(grid.d, grid.n, grid.ring, grid.tol, c) for c in chunks]
    if jobs == 1 or len(chunks) <= 1:
        parts = [_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_chunk, tasks))
    results = []
    histogram: dict = {}
    for chunk, part in zip(chunks, parts):
        for (idx, params), rec in zip(chunk, part):
            results.append({"index": list(idx), "params": [_encode(p, grid.ring) for p in params], **rec})
            key = f"NS={rec['NS']}"
            histogram[key] = histogram.get(key, 0) + 1
    return {
        "grid": grid.to_json(),
        "results": results,
        "summary": {
            "points": len(results),
            "singular": sum(1 for r in results if r["singular"]),
            "clipped": clipped,
            "histogram": dict(sorted(histogram.items())),
        },
    }
