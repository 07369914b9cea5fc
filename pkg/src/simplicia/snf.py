"""Sparse exact-integer Smith normal form.

Elimination works on dict-of-dicts sparse storage with Python integers, so
there is no overflow at any entry size.  Pivots are chosen among entries of
minimal absolute value (units first), with a Markowitz-style fill estimate to
break ties; this keeps boundary-operator matrices, whose entries are mostly
units, close to fill-free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


@dataclass(frozen=True)
class IntegerMatrix:
    """A sparse integer matrix given by deduplicated (row, col, value) triplets."""

    rows: int
    cols: int
    entries: tuple = field(default_factory=tuple)

    def __post_init__(self):
        seen = set()
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError("entry (%d, %d) out of range" % (r, c))
            if (r, c) in seen:
                raise ValueError("duplicate triplet at (%d, %d)" % (r, c))
            seen.add((r, c))

    @classmethod
    def from_dense(cls, data):
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = tuple(
            (r, c, v)
            for r, row in enumerate(data)
            for c, v in enumerate(row)
            if v
        )
        return cls(rows, cols, entries)

    def to_dense(self):
        data = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            data[r][c] = v
        return data


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors (each dividing the next) and the rank they witness."""

    invariant_factors: tuple
    rank: int

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("factors violate divisibility: %r" % (self.invariant_factors,))
        if self.rank != len(self.invariant_factors):
            raise ValueError("rank must equal the number of factors")


class _Sparse:
    """Mutable sparse matrix for elimination; rows/cols kept in sync."""

    __slots__ = ("rows", "cols", "units")

    def __init__(self, triplets):
        self.rows = {}
        self.cols = {}
        self.units = []
        for r, c, v in triplets:
            if v:
                self.rows.setdefault(r, {})[c] = v
                self.cols.setdefault(c, {})[r] = v
                if v in (1, -1):
                    self.units.append((r, c))

    def _set(self, r, c, v):
        if v:
            self.rows.setdefault(r, {})[c] = v
            self.cols.setdefault(c, {})[r] = v
            if v in (1, -1):
                self.units.append((r, c))
        else:
            row = self.rows.get(r)
            if row and c in row:
                del row[c]
                if not row:
                    del self.rows[r]
                col = self.cols[c]
                del col[r]
                if not col:
                    del self.cols[c]

    def row_axpy(self, dst, src, k):
        """rows[dst] += k * rows[src]"""
        row = self.rows.get(src)
        if not row or not k:
            return
        dst_row = self.rows.get(dst, {})
        for c, v in list(row.items()):
            self._set(dst, c, dst_row.get(c, 0) + k * v)
            dst_row = self.rows.get(dst, {})

    def col_axpy(self, dst, src, k):
        """cols[dst] += k * cols[src]"""
        col = self.cols.get(src)
        if not col or not k:
            return
        dst_col = self.cols.get(dst, {})
        for r, v in list(col.items()):
            self._set(r, dst, dst_col.get(r, 0) + k * v)
            dst_col = self.cols.get(dst, {})

    def pick_pivot(self):
        """A nonzero entry of minimal |value|, preferring low fill-in."""
        while self.units:
            best = None
            tried = []
            # inspect a bounded batch of unit candidates, keep the rest
            while self.units and len(tried) < 12:
                r, c = self.units.pop()
                v = self.rows.get(r, {}).get(c, 0)
                if v in (1, -1):
                    fill = (len(self.rows[r]) - 1) * (len(self.cols[c]) - 1)
                    tried.append((fill, r, c))
                    if fill == 0:
                        break
            if tried:
                tried.sort()
                fill, r, c = tried[0]
                self.units.extend((r2, c2) for _, r2, c2 in tried[1:])
                return r, c
        best = None
        for r, row in self.rows.items():
            for c, v in row.items():
                key = (abs(v), (len(row) - 1) * (len(self.cols[c]) - 1), r, c)
                if best is None or key < best:
                    best = key
        if best is None:
            return None
        return best[2], best[3]

    def clear_pivot(self, r, c):
        """Clear row r and column c; returns the final pivot value."""
        while True:
            v = self.rows[r][c]
            moved = False
            for r2 in list(self.cols[c]):
                if r2 == r:
                    continue
                q, rem = divmod(self.rows[r2][c], v)
                self.row_axpy(r2, r, -q)
                if rem:
                    r = r2
                    moved = True
                    break
            if moved:
                continue
            for c2 in list(self.rows[r]):
                if c2 == c:
                    continue
                q, rem = divmod(self.rows[r][c2], v)
                self.col_axpy(c2, c, -q)
                if rem:
                    c = c2
                    moved = True
                    break
            if moved:
                continue
            if len(self.cols[c]) == 1 and len(self.rows[r]) == 1:
                value = self.rows[r][c]
                self._set(r, c, 0)
                return abs(value)


def _chain_factors(diag):
    """Sort diagonal values into an invariant-factor divisibility chain."""
    factors = sorted(d for d in diag if d)
    changed = True
    while changed:
        changed = False
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                a, b = factors[i], factors[j]
                if b % a:
                    g = gcd(a, b)
                    factors[i], factors[j] = g, a * b // g
                    changed = True
        factors.sort()
    return tuple(factors)


def invariant_factors_of_triplets(triplets):
    """Invariant factors for raw (row, col, value) triplets."""
    m = _Sparse(triplets)
    diag = []
    while True:
        pos = m.pick_pivot()
        if pos is None:
            break
        diag.append(m.clear_pivot(*pos))
    return _chain_factors(diag)


def smith_normal_form(matrix: IntegerMatrix) -> SNFResult:
    """Invariant factors of an integer matrix under unimodular operations."""
    factors = invariant_factors_of_triplets(matrix.entries)
    return SNFResult(factors, len(factors))


def rank_of_triplets(triplets):
    """Exact rank over the integers (= rank over the rationals)."""
    return len(invariant_factors_of_triplets(triplets))


def rank_mod_p(triplets, p):
    """Rank of the matrix over the field with p elements (p prime)."""
    if p < 2:
        raise ValueError("modulus must be a prime >= 2")
    m = _Sparse((r, c, v % p) for r, c, v in triplets if v % p)
    rank = 0
    while m.rows:
        # any entry works over a field; favour sparse rows
        r = min(m.rows, key=lambda rr: (len(m.rows[rr]), rr))
        row = m.rows[r]
        c = min(row, key=lambda cc: (len(m.cols[cc]), cc))
        v = row[c]
        inv = pow(v, -1, p)
        for r2 in list(m.cols[c]):
            if r2 == r:
                continue
            k = (-m.rows[r2][c] * inv) % p
            src = m.rows[r]
            dst = m.rows.get(r2, {})
            for c2, v2 in list(src.items()):
                m._set(r2, c2, (dst.get(c2, 0) + k * v2) % p)
                dst = m.rows.get(r2, {})
        for c2 in list(m.rows[r]):
            m._set(r, c2, 0)
        rank += 1
    return rank
