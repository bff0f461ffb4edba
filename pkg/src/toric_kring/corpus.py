"""Bundled example corpus: smooth complete fans, one quasitoric pair, and negatives."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import combinations

from .charpair import CharPair
from .fan import Fan


def projective_space(n: int) -> Fan:
    rays = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    rays.append(tuple([-1] * n))
    return Fan(n, rays, [set(c) for c in combinations(range(n + 1), n)])


def fan_product(a: Fan, b: Fan) -> Fan:
    rays = [r + (0,) * b.dim for r in a.rays] + [(0,) * a.dim + r for r in b.rays]
    cones = [ca | {a.d + i for i in cb} for ca in a.max_cones for cb in b.max_cones]
    return Fan(a.dim + b.dim, rays, cones)


def hirzebruch(a: int) -> Fan:
    return Fan(2, [(1, 0), (0, 1), (-1, a), (0, -1)], [{0, 1}, {1, 2}, {2, 3}, {3, 0}])


def _polygon_fan(rays) -> Fan:
    k = len(rays)
    return Fan(2, rays, [{i, (i + 1) % k} for i in range(k)])


def blowup_p2(points: int) -> Fan:
    """P^2 blown up at 1, 2 or 3 torus-fixed points (rays listed counterclockwise)."""
    rays = {
        1: [(1, 0), (1, 1), (0, 1), (-1, -1)],
        2: [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1)],
        3: [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
    }[points]
    return _polygon_fan(rays)


def square_quasitoric(lambda2=(1, 2)) -> CharPair:
    return CharPair(2, 4, [{0, 1}, {1, 2}, {2, 3}, {3, 0}], [(1, 0), (0, 1), lambda2, (0, -1)])


@dataclass(frozen=True)
class Entry:
    name: str
    kind: str  # "fan" or "charpair"
    positive: bool
    description: str
    chi: int | None = None
    # for negative entries: where it must fail and with which witness kind
    fails_at: str | None = None
    witness_kind: str | None = None

    @property
    def filename(self) -> str:
        return f"{self.name}.{'fan' if self.kind == 'fan' else 'cp'}.json"

    def build(self):
        return BUILDERS[self.name]()


BUILDERS = {
    "p1": lambda: projective_space(1),
    "p2": lambda: projective_space(2),
    "p3": lambda: projective_space(3),
    "p4": lambda: projective_space(4),
    "p1xp1": lambda: fan_product(projective_space(1), projective_space(1)),
    "p1xp1xp1": lambda: fan_product(fan_product(projective_space(1), projective_space(1)), projective_space(1)),
    "hirzebruch0": lambda: hirzebruch(0),
    "hirzebruch1": lambda: hirzebruch(1),
    "hirzebruch2": lambda: hirzebruch(2),
    "hirzebruch3": lambda: hirzebruch(3),
    "bl1p2": lambda: blowup_p2(1),
    "bl2p2": lambda: blowup_p2(2),
    "bl3p2": lambda: blowup_p2(3),
    "square-quasitoric": square_quasitoric,
    "halfplane": lambda: Fan(2, [(1, 0), (0, 1)], [{0, 1}]),
    "singular": lambda: Fan(2, [(1, 0), (1, 2), (-1, -1)], [{0, 1}, {1, 2}, {0, 2}]),
    "square-nonstandard": lambda: square_quasitoric((2, 0)),
}

MANIFEST = [
    Entry("p1", "fan", True, "projective line", chi=2),
    Entry("p2", "fan", True, "projective plane", chi=3),
    Entry("p3", "fan", True, "projective 3-space", chi=4),
    Entry("p4", "fan", True, "projective 4-space", chi=5),
    Entry("p1xp1", "fan", True, "P1 x P1", chi=4),
    Entry("p1xp1xp1", "fan", True, "P1 x P1 x P1", chi=8),
    Entry("hirzebruch0", "fan", True, "Hirzebruch surface a=0", chi=4),
    Entry("hirzebruch1", "fan", True, "Hirzebruch surface a=1", chi=4),
    Entry("hirzebruch2", "fan", True, "Hirzebruch surface a=2", chi=4),
    Entry("hirzebruch3", "fan", True, "Hirzebruch surface a=3", chi=4),
    Entry("bl1p2", "fan", True, "P2 blown up at one torus-fixed point", chi=4),
    Entry("bl2p2", "fan", True, "P2 blown up at two torus-fixed points", chi=5),
    Entry("bl3p2", "fan", True, "P2 blown up at three torus-fixed points", chi=6),
    Entry("square-quasitoric", "charpair", True, "quasitoric manifold over a square", chi=4),
    Entry("halfplane", "fan", False, "positive quadrant only: not complete",
          fails_at="validate", witness_kind="boundary-wall"),
    Entry("singular", "fan", False, "complete fan with a cone of determinant 2",
          fails_at="validate", witness_kind="singular-cone"),
    Entry("square-nonstandard", "charpair", False, "square with lambda(2) = (2,0): not locally standard",
          fails_at="validate", witness_kind="not-locally-standard"),
]


def get(name: str) -> Entry:
    for e in MANIFEST:
        if e.name == name or e.filename == name:
            return e
    raise KeyError(name)


def bundled_path(entry: Entry):
    return resources.files(__package__).joinpath("corpus", entry.filename)


def load_bundled_json(entry: Entry) -> dict:
    return json.loads(bundled_path(entry).read_text(encoding="utf-8"))
