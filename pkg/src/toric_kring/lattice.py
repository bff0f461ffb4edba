"""Exact integer linear algebra on N = Z^n and its dual M.

Everything here works with Python ints (no fixed-width arithmetic).  Vectors are plain tuples of ints and
matrices are :class:`IntMatrix` values (or anything row-iterable).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Row-major integer matrix that remembers its column count.

    The column count is kept explicitly so that a matrix with zero rows
    still knows the size of the free module it maps into.
    """

    rows: int
    cols: int
    entries: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix shape must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix without rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError(f"row of length {len(r)} in a matrix with {cols} columns")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __iter__(self):
        return (self.row(i) for i in range(self.rows))


@dataclass(frozen=True)
class SnfResult:
    rank: int
    invariant_factors: tuple[int, ...] = field(default_factory=tuple)

    @property
    def torsion(self) -> tuple[int, ...]:
        """Invariant factors larger than one."""
        return tuple(f for f in self.invariant_factors if f != 1)

    @property
    def unimodular(self) -> bool:
        return all(f == 1 for f in self.invariant_factors)

    def to_json(self) -> dict:
        return {"rank": self.rank, "invariant_factors": list(self.invariant_factors)}


# ---------------------------------------------------------------------------
# Incremental row echelon lattice
# ---------------------------------------------------------------------------


class RowLattice:
    """Integer row lattice kept in echelon form, one pivot per column.

    Rows are stored sparsely as ``{column: value}`` dicts.  ``add`` inserts a
    generator, ``contains`` decides exact membership.  Pivots are positive
    and entries above a pivot are kept reduced modulo it; without that the
    entries of the relation lattices here grow to thousands of bits.  :meth:`snf` finishes the job on the
    (small) echelon basis.
    """

    def __init__(self, cols: int, order: Sequence[int] | None = None):
        self.cols = cols
        # position of each column in the elimination order
        if order is None:
            order = range(cols)
        self._pos = [0] * cols
        for p, c in enumerate(order):
            self._pos[c] = p
        self._pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _reduce(self, row: dict[int, int]) -> dict[int, int]:
        # reduce as far as possible without creating a new pivot
        pos = self._pos
        pivots = self._pivots
        while row:
            c = min(row, key=pos.__getitem__)
            prow = pivots.get(c)
            if prow is None:
                return row
            q, r = divmod(row[c], prow[c])
            if r:
                return row
            _axpy(row, -q, prow)
        return row

    def add(self, vec) -> bool:
        """Insert a generator; return True if the lattice changed."""
        row = _as_sparse(vec)
        changed = False
        pos = self._pos
        pivots = self._pivots
        while row:
            c = min(row, key=pos.__getitem__)
            prow = pivots.get(c)
            if prow is None:
                if row[c] < 0:
                    row = {k: -v for k, v in row.items()}
                self._set_pivot(c, row)
                return True
            a, b = prow[c], row[c]
            if b % a == 0:
                _axpy(row, -(b // a), prow)
                continue
            # replace the pivot row by a gcd combination, push the rest down
            g, s, t = _xgcd(a, b)
            new_pivot = _combine(s, prow, t, row)
            rest = _combine(b // g, prow, -(a // g), row)
            self._set_pivot(c, new_pivot)
            changed = True
            row = rest
        return changed

    def _set_pivot(self, c: int, row: dict[int, int]) -> None:
        # Hermite-style: reduce the new row by later pivots, and every other
        # row at column c, so entries stay bounded by the pivots
        pos = self._pos
        pivots = self._pivots
        for c2 in sorted((k for k in row if k != c and k in pivots), key=pos.__getitem__):
            v = row.get(c2)
            if v:
                q = v // pivots[c2][c2]
                if q:
                    _axpy(row, -q, pivots[c2])
        pivots[c] = row
        p = row[c]
        for r in pivots.values():
            if r is row:
                continue
            v = r.get(c)
            if v:
                q = v // p
                if q:
                    _axpy(r, -q, row)

    def add_all(self, rows: Iterable) -> None:
        for r in rows:
            self.add(r)

    def contains(self, vec) -> bool:
        return not self._reduce(_as_sparse(vec))

    def basis(self) -> list[dict[int, int]]:
        return [dict(self._pivots[c]) for c in sorted(self._pivots, key=self._pos.__getitem__)]

    def dense_basis(self) -> list[list[int]]:
        out = []
        for r in self.basis():
            row = [0] * self.cols
            for c, v in r.items():
                row[c] = v
            out.append(row)
        return out

    def copy(self) -> "RowLattice":
        new = RowLattice.__new__(RowLattice)
        new.cols = self.cols
        new._pos = self._pos
        new._pivots = {c: dict(r) for c, r in self._pivots.items()}
        return new

    def snf(self) -> SnfResult:
        return _snf_dense(self.dense_basis())

    def cokernel(self) -> SnfResult:
        """Same as :meth:`snf`; the cokernel is Z^(cols - rank) plus torsion."""
        return self.snf()


def _as_sparse(vec) -> dict[int, int]:
    if isinstance(vec, dict):
        return {c: int(v) for c, v in vec.items() if v}
    return {c: int(v) for c, v in enumerate(vec) if v}


def _axpy(row: dict[int, int], a: int, other: dict[int, int]) -> None:
    for c, v in other.items():
        nv = row.get(c, 0) + a * v
        if nv:
            row[c] = nv
        else:
            row.pop(c, None)


def _combine(a: int, x: dict[int, int], b: int, y: dict[int, int]) -> dict[int, int]:
    out = {}
    for c in x.keys() | y.keys():
        v = a * x.get(c, 0) + b * y.get(c, 0)
        if v:
            out[c] = v
    return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(m) -> SnfResult:
    """Rank and invariant factors of an integer matrix.

    ``m`` may be an :class:`IntMatrix` or a list of rows.  The cokernel of
    ``m`` (acting on row vectors, i.e. Z^cols modulo the row span) is
    ``Z^(cols - rank) + sum Z/d_i``.
    """
    if isinstance(m, IntMatrix):
        if m.rows == 0 or m.cols == 0:
            return SnfResult(0, ())
        rows = m.tolist()
        cols = m.cols
    else:
        rows = [list(r) for r in m]
        if not rows or not rows[0]:
            return SnfResult(0, ())
        cols = len(rows[0])
    # echelonize first: cuts the row count down to at most cols
    lat = RowLattice(cols)
    lat.add_all(rows)
    return lat.snf()


def _snf_dense(a: list[list[int]]) -> SnfResult:
    a = [list(r) for r in a if any(r)]
    if not a:
        return SnfResult(0, ())
    nr, nc = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(nr, nc):
        # pivot: nonzero entry of least absolute value in the trailing block
        best = None
        for i in range(t, nr):
            row = a[i]
            for j in range(t, nc):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            # clear column t
            for i in range(t + 1, nr):
                v = a[i][t]
                if v:
                    q = v // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, nc):
                            if rt[j]:
                                ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            # clear row t
            rt = a[t]
            for j in range(t + 1, nc):
                v = rt[j]
                if v:
                    q = v // p
                    if q:
                        for row in a[t:]:
                            if row[t]:
                                row[j] -= q * row[t]
                    if rt[j]:
                        dirty = True
            if not dirty:
                # pivot must divide everything remaining
                bad = None
                for i in range(t + 1, nr):
                    for j in range(t + 1, nc):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for j in range(t, nc):
                    a[t][j] += a[bad][j]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, nr):
                v = a[i][t]
                if v and abs(v) < best[0]:
                    best = (abs(v), i, t)
            for j in range(t + 1, nc):
                v = a[t][j]
                if v and abs(v) < best[0]:
                    best = (abs(v), t, j)
            _, i, j = best
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return SnfResult(len(diag), tuple(diag))


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive direction (degenerate ray)")
    return g == 1


def is_unimodular_set(vs: Sequence[Sequence[int]], dim: int | None = None) -> bool:
    """True iff the vectors extend to a Z-basis of Z^dim."""
    vs = [tuple(v) for v in vs]
    if not vs:
        return True
    if dim is None:
        dim = len(vs[0])
    if any(len(v) != dim for v in vs):
        raise ValueError("vectors of mixed dimension")
    if len(vs) > dim:
        return False
    snf = smith_normal_form(vs)
    return snf.rank == len(vs) and snf.unimodular


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ValueError(f"cannot pair vectors of dimension {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(r) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
