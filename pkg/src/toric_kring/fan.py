"""Simplicial fans in N = Z^n: validation and conversion to characteristic pairs."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .charpair import CharPair, Finding, fmt_set
from .lattice import is_unimodular_set, smith_normal_form


@dataclass(frozen=True)
class Fan:
    """A simplicial fan given by rays and maximal cones (as ray-index sets).

    Only shape errors are rejected here (wrong lengths, bad indices).
    Geometric problems such as imprimitive or duplicate rays are left for
    :func:`validate_fan` to report.
    """

    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[frozenset[int], ...]

    def __init__(self, dim, rays, max_cones):
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in rays))
        object.__setattr__(self, "max_cones", tuple(frozenset(int(i) for i in c) for c in max_cones))
        n = self.dim
        if n < 1:
            raise ValueError(f"dim: must be a positive integer, got {n}")
        if not self.rays:
            raise ValueError("rays: must be nonempty")
        for i, r in enumerate(self.rays):
            if len(r) != n:
                raise ValueError(f"rays[{i}]: dimension {len(r)} does not match dim {n}")
            if not any(r):
                raise ValueError(f"rays[{i}]: zero vector is not a ray")
        if not self.max_cones:
            raise ValueError("max_cones: must be nonempty")
        for k, c in enumerate(self.max_cones):
            bad = [i for i in c if not 0 <= i < len(self.rays)]
            if bad:
                raise ValueError(f"max_cones[{k}]: index {bad[0]} out of range 0..{len(self.rays) - 1}")
            if len(c) != n:
                raise ValueError(f"max_cones[{k}]: has {len(c)} rays, a maximal cone needs {n}")
        if len(set(self.max_cones)) != len(self.max_cones):
            raise ValueError("max_cones: duplicate cone")

    @property
    def d(self) -> int:
        return len(self.rays)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "max_cones": [sorted(c) for c in self.max_cones],
        }

    def relabel(self, perm) -> "Fan":
        rays = [None] * self.d
        for i, p in enumerate(perm):
            rays[p] = self.rays[i]
        return Fan(self.dim, rays, [{perm[i] for i in c} for c in self.max_cones])

    def transform(self, g) -> "Fan":
        rays = [tuple(sum(row[k] * r[k] for k in range(self.dim)) for row in g) for r in self.rays]
        return Fan(self.dim, rays, self.max_cones)


@dataclass
class FanReport:
    is_fan: bool
    is_smooth: bool | None = None
    is_complete: bool | None = None
    witnesses: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.is_fan and self.is_smooth and self.is_complete)

    def to_json(self) -> dict:
        return {
            "is_fan": self.is_fan,
            "is_smooth": self.is_smooth,
            "is_complete": self.is_complete,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


class InvalidFanError(ValueError):
    def __init__(self, report: FanReport):
        self.report = report
        msgs = "; ".join(str(w) for w in report.witnesses) or "invalid fan"
        super().__init__(msgs)


def enumerate_faces(fan: Fan) -> list[frozenset[int]]:
    out = set()
    for c in fan.max_cones:
        s = sorted(c)
        for k in range(len(s) + 1):
            out.update(frozenset(x) for x in combinations(s, k))
    return sorted(out, key=lambda f: (len(f), sorted(f)))


def walls(fan: Fan) -> dict[frozenset[int], list[int]]:
    """Map each wall (codimension-one face) to the maximal cones containing it."""
    out = defaultdict(list)
    for k, c in enumerate(fan.max_cones):
        for i in sorted(c):
            out[c - {i}].append(k)
    return dict(out)


def _solve(basis, v):
    """Coordinates of v in the (square, invertible) basis, as Fractions."""
    n = len(basis)
    # columns of the system are the basis vectors
    a = [[Fraction(basis[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def _strict_feasible(rows: list[list[Fraction]]) -> bool:
    """Decide whether the homogeneous system ``g . x > 0`` (all g in rows) has a solution.

    Fourier-Motzkin elimination; sizes here are at most a dozen rows.
    """
    rows = [r for r in rows]
    nvar = len(rows[0]) if rows else 0
    for k in range(nvar):
        pos = [r for r in rows if r[k] > 0]
        neg = [r for r in rows if r[k] < 0]
        rest = [r for r in rows if r[k] == 0]
        for p in pos:
            for q in neg:
                rest.append([-q[k] * a + p[k] * b for a, b in zip(p, q)])
        rows = _dedupe(rest)
    # what is left reads 0 > 0
    return not rows


def _dedupe(rows):
    seen = {}
    for r in rows:
        m = max((abs(x) for x in r), default=0)
        key = tuple(x / m for x in r) if m else tuple(r)
        seen[key] = r
    return list(seen.values())


def _cones_meet_properly(fan: Fan, a: frozenset[int], b: frozenset[int]) -> bool:
    """True iff cone(a) and cone(b) intersect exactly in cone(a & b).

    For full-dimensional simplicial cones this holds iff some linear form
    vanishes on the common rays, is positive on the rest of ``a`` and
    negative on the rest of ``b``.  The form is parametrised by its
    values on the rays of ``a``.
    """
    common = a & b
    only_a = sorted(a - common)
    only_b = sorted(b - common)
    if not only_a or not only_b:
        return a == b
    basis_idx = sorted(a)
    basis = [fan.rays[i] for i in basis_idx]
    pos_of = {r: k for k, r in enumerate(basis_idx)}
    rows = []
    # variables: the form's values on only_a rays (those on common are 0)
    for i in only_a:
        rows.append([Fraction(1 if j == i else 0) for j in only_a])
    for j in only_b:
        coords = _solve(basis, fan.rays[j])
        rows.append([-coords[pos_of[i]] for i in only_a])
    return _strict_feasible(rows)


def validate_fan(fan: Fan) -> FanReport:
    n = fan.dim
    witnesses: list[Finding] = []

    # (a) rays primitive and distinct
    structural = True
    for i, r in enumerate(fan.rays):
        g = 0
        for x in r:
            g = gcd(g, x)
        if g != 1:
            structural = False
            witnesses.append(Finding("imprimitive-ray", f"ray {i} = {list(r)} is not primitive (gcd {g})"))
    dup = [r for r, c in Counter(fan.rays).items() if c > 1]
    for r in dup:
        structural = False
        idx = [i for i, s in enumerate(fan.rays) if s == r]
        witnesses.append(Finding("duplicate-ray", f"rays {idx} coincide: {list(r)}"))

    # (b) simplicial
    for c in fan.max_cones:
        vs = [fan.rays[i] for i in sorted(c)]
        if smith_normal_form(vs).rank != n:
            structural = False
            witnesses.append(Finding("not-simplicial", f"cone {fmt_set(c)} has linearly dependent rays"))
    if not structural:
        return FanReport(False, None, None, witnesses)

    # (c) cones meet along common faces
    for a, b in combinations(fan.max_cones, 2):
        if not _cones_meet_properly(fan, a, b):
            structural = False
            witnesses.append(Finding(
                "fan-axiom",
                f"cones {fmt_set(a)} and {fmt_set(b)} overlap beyond their common face {fmt_set(a & b)}",
            ))
    if not structural:
        return FanReport(False, None, None, witnesses)

    # (d) smoothness
    smooth = True
    for c in fan.max_cones:
        vs = [fan.rays[i] for i in sorted(c)]
        if not is_unimodular_set(vs, n):
            smooth = False
            snf = smith_normal_form(vs)
            witnesses.append(Finding(
                "singular-cone",
                f"cone {fmt_set(c)} is not unimodular (invariant factors {list(snf.invariant_factors)})",
            ))

    # (e) completeness
    complete = True
    wall_map = walls(fan)
    for w in sorted(wall_map, key=lambda s: sorted(s)):
        k = len(wall_map[w])
        if k != 2:
            complete = False
            noun = "cone" if k == 1 else "cones"
            witnesses.append(Finding("boundary-wall", f"wall {fmt_set(w)} lies in {k} maximal {noun}"))
    if complete:
        m = len(fan.max_cones)
        adj = defaultdict(set)
        for cs in wall_map.values():
            adj[cs[0]].add(cs[1])
            adj[cs[1]].add(cs[0])
        seen, stack = {0}, [0]
        while stack:
            x = stack.pop()
            for y in adj[x] - seen:
                seen.add(y)
                stack.append(y)
        if len(seen) != m:
            complete = False
            witnesses.append(Finding(
                "disconnected",
                f"wall-adjacency graph of maximal cones is disconnected ({len(seen)} of {m} reachable)",
            ))
    return FanReport(True, smooth, complete, witnesses)


def to_char_pair(fan: Fan) -> CharPair:
    report = validate_fan(fan)
    if not report.ok:
        raise InvalidFanError(report)
    return CharPair(fan.dim, fan.d, fan.max_cones, fan.rays)
