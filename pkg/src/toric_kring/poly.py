"""Sparse integer polynomials inside a truncated Stanley-Reisner quotient.

The ambient ring here is ``Z[y_0..y_{d-1}]`` modulo every monomial whose
support is not a face and every monomial of total degree above the bound.
Monomials are exponent tuples; polynomials map monomials to nonzero ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Iterator, Mapping

Monomial = tuple[int, ...]


def degree(m: Monomial) -> int:
    return sum(m)


def support(m: Monomial) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(m) if e)


def grlex_key(m: Monomial):
    """Sort key: ascending total degree, then y_0 before y_1 within a degree."""
    return (sum(m), tuple(-e for e in m))


def render_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"y{i}")
        elif e:
            parts.append(f"y{i}^{e}")
    return "*".join(parts) or "1"


class IntPolynomial:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, int] = {}
        for m, c in items:
            m = tuple(m)
            if len(m) != nvars:
                raise ValueError(f"monomial {m} has {len(m)} exponents, ring has {nvars} variables")
            acc[m] = acc.get(m, 0) + int(c)
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def one(cls, nvars: int) -> "IntPolynomial":
        return cls._raw(nvars, {(0,) * nvars: 1})

    @classmethod
    def zero(cls, nvars: int) -> "IntPolynomial":
        return cls._raw(nvars, {})

    @classmethod
    def var(cls, nvars: int, i: int, coeff: int = 1) -> "IntPolynomial":
        m = [0] * nvars
        m[i] = 1
        return cls._raw(nvars, {tuple(m): coeff} if coeff else {})

    @classmethod
    def monomial(cls, m: Monomial, coeff: int = 1) -> "IntPolynomial":
        return cls._raw(len(m), {tuple(m): coeff} if coeff else {})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        """Terms in canonical (graded lexicographic) order."""
        for m in sorted(self._terms, key=grlex_key):
            yield m, self._terms[m]

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(tuple(m), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def degrees(self) -> set[int]:
        return {sum(m) for m in self._terms}

    def is_homogeneous(self, deg: int | None = None) -> bool:
        ds = self.degrees()
        if deg is None:
            return len(ds) <= 1
        return ds <= {deg}

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError("polynomials live in rings with different variable counts")

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return IntPolynomial._raw(self.nvars, out)

    def __neg__(self):
        return IntPolynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "IntPolynomial":
        if not k:
            return IntPolynomial.zero(self.nvars)
        return IntPolynomial._raw(self.nvars, {m: k * c for m, c in self._terms.items()})

    def __mul__(self, other):
        """Plain (untruncated) product; ring-aware code uses :func:`multiply`."""
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return IntPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def render(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.items()):
            mono = render_monomial(m)
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    __str__ = render

    def __repr__(self):
        return f"IntPolynomial({self.render()!r})"

    def to_json(self) -> list:
        return [[list(m), c] for m, c in self.items()]


@dataclass(frozen=True)
class TruncatedRing:
    """``Z[y]`` modulo non-face monomials and everything of degree > ``degree_bound``."""

    d: int
    degree_bound: int
    face_test: Callable[[frozenset[int]], bool]

    def __post_init__(self):
        if self.degree_bound < 1:
            raise ValueError("degree bound must be at least 1")

    @classmethod
    def from_faces(cls, d: int, degree_bound: int, faces: Iterable[Iterable[int]]) -> "TruncatedRing":
        fs = frozenset(frozenset(f) for f in faces)
        return cls(d, degree_bound, fs.__contains__)

    def survives(self, m: Monomial) -> bool:
        return sum(m) <= self.degree_bound and self.face_test(support(m))

    def monomials(self, max_degree: int | None = None, faces: Iterable[frozenset[int]] | None = None) -> list[Monomial]:
        """All face-supported monomials of degree at most ``max_degree``, grlex ordered.

        ``faces`` must list the faces when given; otherwise every subset of
        size at most the degree bound is tested with ``face_test``.
        """
        top = self.degree_bound if max_degree is None else max_degree
        if faces is None:
            faces = (frozenset(c) for k in range(min(top, self.d) + 1)
                     for c in combinations(range(self.d), k) if self.face_test(frozenset(c)))
        out = []
        for f in faces:
            f = sorted(f)
            for extra in range(0, top - len(f) + 1):
                for m in _spread(len(f), extra):
                    mono = [0] * self.d
                    for i, e in zip(f, m):
                        mono[i] = e + 1
                    out.append(tuple(mono))
        return sorted(set(out), key=grlex_key)


def _spread(k: int, total: int) -> Iterator[tuple[int, ...]]:
    """All k-tuples of non-negative ints summing to total."""
    if k == 0:
        if total == 0:
            yield ()
        return
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _spread(k - 1, total - first):
            yield (first,) + rest


def reduce(p: IntPolynomial, ring: TruncatedRing) -> IntPolynomial:
    if p.nvars != ring.d:
        raise ValueError(f"polynomial has {p.nvars} variables, ring has {ring.d}")
    return IntPolynomial._raw(p.nvars, {m: c for m, c in p._terms.items() if ring.survives(m)})


def multiply(p: IntPolynomial, q: IntPolynomial, ring: TruncatedRing) -> IntPolynomial:
    if p.nvars != ring.d or q.nvars != ring.d:
        raise ValueError("variable count does not match the ring")
    bound = ring.degree_bound
    survives = ring.survives
    out: dict[Monomial, int] = {}
    for m1, c1 in p._terms.items():
        d1 = sum(m1)
        if d1 > bound:
            continue
        for m2, c2 in q._terms.items():
            if d1 + sum(m2) > bound:
                continue
            m = tuple(a + b for a, b in zip(m1, m2))
            if survives(m):
                out[m] = out.get(m, 0) + c1 * c2
    return IntPolynomial._raw(p.nvars, {m: c for m, c in out.items() if c})


def power_product(bases: Iterable[tuple[int, int]], ring: TruncatedRing) -> IntPolynomial:
    """``prod (1 - y_i)^a_i`` reduced in ``ring``, reducing after each factor."""
    result = IntPolynomial.one(ring.d)
    for i, a in bases:
        if a < 1:
            raise ValueError(f"exponent of y{i} must be positive, got {a}")
        top = min(a, ring.degree_bound)
        factor = {}
        for k in range(top + 1):
            m = [0] * ring.d
            m[i] = k
            factor[tuple(m)] = (-1) ** k * comb(a, k)
        result = multiply(result, IntPolynomial._raw(ring.d, factor), ring)
    return result


def initial_form(p: IntPolynomial) -> IntPolynomial:
    if not p:
        raise ValueError("the zero polynomial has no initial form")
    low = min(p.degrees())
    return IntPolynomial._raw(p.nvars, {m: c for m, c in p._terms.items() if sum(m) == low})
