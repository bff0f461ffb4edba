"""Characteristic pairs: the nerve of the facets of Q plus the map Lambda.

A characteristic pair is stored through its nerve only.  Facets are
indexed ``0..d-1``; a face is a set of facets with nonempty common
intersection, and the nerve is given by its maximal faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .lattice import is_primitive, is_unimodular_set, smith_normal_form


@dataclass(frozen=True)
class Finding:
    """One human-readable validation finding, tagged by kind."""

    kind: str
    message: str

    def __str__(self):
        return self.message

    def to_json(self):
        return {"kind": self.kind, "message": self.message}


def fmt_set(s) -> str:
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


@dataclass(frozen=True)
class CharPair:
    dim: int
    d: int
    maximal_faces: tuple[frozenset[int], ...]
    lambda_: tuple[tuple[int, ...], ...]

    def __init__(self, dim: int, d: int, maximal_faces, lambda_):
        faces = tuple(frozenset(int(i) for i in f) for f in maximal_faces)
        lam = tuple(tuple(int(x) for x in v) for v in lambda_)
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "maximal_faces", faces)
        object.__setattr__(self, "lambda_", lam)
        self._check()

    def _check(self):
        n, d = self.dim, self.d
        if n < 1:
            raise ValueError(f"dim: must be a positive integer, got {n}")
        if d < 1:
            raise ValueError(f"facets: must be a positive integer, got {d}")
        if len(self.lambda_) != d:
            raise ValueError(f"lambda: expected {d} vectors, got {len(self.lambda_)}")
        for i, v in enumerate(self.lambda_):
            if len(v) != n:
                raise ValueError(f"lambda[{i}]: dimension {len(v)} does not match dim {n}")
            if not any(v):
                raise ValueError(f"lambda[{i}]: zero vector")
        if not self.maximal_faces:
            raise ValueError("maximal_faces: must be nonempty")
        seen = set()
        for k, f in enumerate(self.maximal_faces):
            if not f:
                raise ValueError(f"maximal_faces[{k}]: empty face")
            bad = [i for i in f if not 0 <= i < d]
            if bad:
                raise ValueError(f"maximal_faces[{k}]: index {bad[0]} out of range 0..{d - 1}")
            if len(f) > n:
                raise ValueError(f"maximal_faces[{k}]: size {len(f)} exceeds dim {n}")
            if f in seen:
                raise ValueError(f"maximal_faces[{k}]: duplicate face {fmt_set(f)}")
            seen.add(f)
        covered = set().union(*self.maximal_faces)
        missing = sorted(set(range(d)) - covered)
        if missing:
            raise ValueError(f"maximal_faces: facet {missing[0]} lies in no maximal face")

    @property
    def lambda_vectors(self):
        return self.lambda_

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "facets": self.d,
            "maximal_faces": [sorted(f) for f in self.maximal_faces],
            "lambda": [list(v) for v in self.lambda_],
        }

    def relabel(self, perm: Sequence[int]) -> "CharPair":
        """Facet ``i`` becomes facet ``perm[i]``."""
        lam = [None] * self.d
        for i, p in enumerate(perm):
            lam[p] = self.lambda_[i]
        return CharPair(self.dim, self.d, [{perm[i] for i in f} for f in self.maximal_faces], lam)

    def transform(self, g: Sequence[Sequence[int]]) -> "CharPair":
        """Apply the integer matrix ``g`` (acting on column vectors) to every Lambda(i)."""
        lam = [tuple(sum(row[k] * v[k] for k in range(self.dim)) for row in g) for v in self.lambda_]
        return CharPair(self.dim, self.d, self.maximal_faces, lam)


@dataclass
class ValidationReport:
    is_pure: bool
    is_locally_standard: bool
    witnesses: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.is_pure and self.is_locally_standard

    def to_json(self) -> dict:
        return {
            "is_pure": self.is_pure,
            "is_locally_standard": self.is_locally_standard,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def validate_char_pair(cp: CharPair) -> ValidationReport:
    witnesses = []
    pure = True
    for f in cp.maximal_faces:
        if len(f) != cp.dim:
            pure = False
            witnesses.append(Finding(
                "non-pure",
                f"maximal face {fmt_set(f)} has size {len(f)}, expected {cp.dim}",
            ))
    standard = True
    for i, v in enumerate(cp.lambda_):
        if not is_primitive(v):
            standard = False
            witnesses.append(Finding("imprimitive-lambda", f"lambda({i}) = {list(v)} is not primitive"))
    # unimodularity is hereditary, so maximal faces suffice
    for f in cp.maximal_faces:
        idx = sorted(f)
        vs = [cp.lambda_[i] for i in idx]
        if not is_unimodular_set(vs, cp.dim):
            standard = False
            snf = smith_normal_form(vs)
            witnesses.append(Finding(
                "not-locally-standard",
                f"face {fmt_set(f)}: lambda vectors {[list(v) for v in vs]} are not part of a "
                f"Z-basis (rank {snf.rank}, invariant factors {list(snf.invariant_factors)})",
            ))
    return ValidationReport(pure, standard, witnesses)


def faces(cp: CharPair) -> list[frozenset[int]]:
    """All faces of the nerve including the empty one, sorted by size then index."""
    out = set()
    for f in cp.maximal_faces:
        s = sorted(f)
        for k in range(len(s) + 1):
            out.update(frozenset(c) for c in combinations(s, k))
    return sorted(out, key=lambda f: (len(f), sorted(f)))


def face_set(cp: CharPair) -> frozenset[frozenset[int]]:
    return frozenset(faces(cp))


def minimal_nonfaces(cp: CharPair) -> list[frozenset[int]]:
    fs = face_set(cp)
    out = []
    for k in range(2, cp.dim + 2):
        for c in combinations(range(cp.d), k):
            s = frozenset(c)
            if s in fs:
                continue
            # minimal iff every codimension-one subset is a face
            if all(s - {i} in fs for i in s):
                out.append(s)
    return out


def euler_characteristic(cp: CharPair) -> int:
    if any(len(f) != cp.dim for f in cp.maximal_faces):
        raise ValueError("euler characteristic needs a pure nerve (every maximal face of size dim)")
    return len(cp.maximal_faces)


def product(a: CharPair, b: CharPair) -> CharPair:
    """Characteristic pair of the product of two torus manifolds."""
    n = a.dim + b.dim
    lam = [tuple(v) + (0,) * b.dim for v in a.lambda_] + [(0,) * a.dim + tuple(v) for v in b.lambda_]
    mf = [fa | {a.d + i for i in fb} for fa in a.maximal_faces for fb in b.maximal_faces]
    return CharPair(n, a.d + b.d, mf, lam)
