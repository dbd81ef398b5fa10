"""Exact linear algebra over the rationals.

Matrices are stored sparsely as ``{(row, col): Fraction}``.  Every rank or
kernel computation first splits the matrix into the connected components of
its row/column incidence graph: a matrix that is block diagonal up to
permutation has rank equal to the sum of the block ranks, and the Gaussian
maps built in this package are graded by multidegree, so on projective space
the blocks are tiny.  Each block is then eliminated densely with fraction-free
(Bareiss) arithmetic on Python integers.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import gmpy2

from .errors import DimensionError

__all__ = [
    "RationalMatrix",
    "rank",
    "kernel_basis",
    "quotient_dim",
    "rank_mod_p",
    "random_primes",
    "multimodular_rank",
    "rref",
]


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RationalMatrix:
    """Immutable sparse matrix with rational entries.

    Absent entries are zero; stored entries are always nonzero.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Mapping | None = None):
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative shape {rows}x{cols}")
        store = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise DimensionError(f"entry ({i}, {j}) outside {rows}x{cols}")
                v = _as_fraction(v)
                if v:
                    store[(i, j)] = v
        self.rows = rows
        self.cols = cols
        self._entries = store

    @classmethod
    def _trusted(cls, rows, cols, store):
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._entries = store
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise DimensionError("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Mapping[int, object]]) -> "RationalMatrix":
        """Build from sparse column vectors ``{row_index: value}``."""
        store = {}
        j = -1
        for j, col in enumerate(columns):
            for i, v in col.items():
                if not 0 <= i < rows:
                    raise DimensionError(f"row index {i} outside 0..{rows - 1}")
                v = _as_fraction(v)
                if v:
                    store[(i, j)] = v
        return cls._trusted(rows, j + 1, store)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls._trusted(size, size, {(i, i): Fraction(1) for i in range(size)})

    @property
    def entries(self) -> Mapping:
        return MappingProxyType(self._entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key) -> Fraction:
        return self._entries.get(key, Fraction(0))

    def nnz(self) -> int:
        return len(self._entries)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix._trusted(
            self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()}
        )

    def columns(self) -> list[dict[int, Fraction]]:
        out = [dict() for _ in range(self.cols)]
        for (i, j), v in self._entries.items():
            out[j][i] = v
        return out

    def column(self, j: int) -> dict[int, Fraction]:
        return {i: v for (i, jj), v in self._entries.items() if jj == j}

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if other.rows != self.rows:
            raise DimensionError(f"row mismatch {self.rows} vs {other.rows}")
        store = dict(self._entries)
        off = self.cols
        for (i, j), v in other._entries.items():
            store[(i, j + off)] = v
        return RationalMatrix._trusted(self.rows, self.cols + other.cols, store)

    def select_columns(self, idx: Sequence[int]) -> "RationalMatrix":
        pos = {j: k for k, j in enumerate(idx)}
        store = {(i, pos[j]): v for (i, j), v in self._entries.items() if j in pos}
        return RationalMatrix._trusted(self.rows, len(idx), store)

    def scale_rows(self, factors: Sequence) -> "RationalMatrix":
        store = {}
        for (i, j), v in self._entries.items():
            w = v * factors[i]
            if w:
                store[(i, j)] = w
        return RationalMatrix._trusted(self.rows, self.cols, store)

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "RationalMatrix":
        """Entry (i, j) moves to (row_perm[i], col_perm[j])."""
        store = {(row_perm[i], col_perm[j]): v for (i, j), v in self._entries.items()}
        return RationalMatrix._trusted(self.rows, self.cols, store)

    def matvec(self, vec: Mapping[int, object] | Sequence) -> dict[int, Fraction]:
        if not isinstance(vec, Mapping):
            if len(vec) != self.cols:
                raise DimensionError("vector length mismatch")
            vec = {j: v for j, v in enumerate(vec) if v}
        out: dict[int, Fraction] = {}
        for (i, j), v in self._entries.items():
            x = vec.get(j)
            if x:
                out[i] = out.get(i, 0) + v * x
        return {i: v for i, v in out.items() if v}

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"


# ---------------------------------------------------------------------------
# block decomposition


def _blocks(m: RationalMatrix) -> list[tuple[list[int], list[int]]]:
    """Connected components of the bipartite row/column incidence graph.

    Rows and columns without entries belong to no block.
    """
    parent: dict = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for i, j in m._entries:
        r, c = ("r", i), ("c", j)
        parent.setdefault(r, r)
        parent.setdefault(c, c)
        a, b = find(r), find(c)
        if a != b:
            parent[a] = b
    groups: dict = {}
    for node in parent:
        groups.setdefault(find(node), ([], []))
        kind, idx = node
        groups[find(node)][0 if kind == "r" else 1].append(idx)
    out = []
    for rows, cols in groups.values():
        rows.sort()
        cols.sort()
        out.append((rows, cols))
    out.sort(key=lambda rc: (rc[1][0], rc[0][0]))
    return out


def _integer_block(m: RationalMatrix, rows: list[int], cols: list[int]) -> list[list[int]]:
    """Dense integer copy of a block; each row is scaled by the lcm of its denominators."""
    rpos = {i: k for k, i in enumerate(rows)}
    cpos = {j: k for k, j in enumerate(cols)}
    dense = [[Fraction(0)] * len(cols) for _ in rows]
    for (i, j), v in m._entries.items():
        k = rpos.get(i)
        if k is not None:
            c = cpos.get(j)
            if c is not None:
                dense[k][c] = v
    out = []
    for row in dense:
        den = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * den) for v in row])
    return out


# ---------------------------------------------------------------------------
# dense kernels


def _bareiss_rank(a: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free forward elimination (destroys ``a``)."""
    nrows = len(a)
    if not nrows:
        return 0
    ncols = len(a[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = row[j] * p // prev
            row[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def _bareiss_rref(a: list[list[int]]) -> tuple[list[int], int]:
    """Fraction-free Gauss-Jordan elimination in place.

    Returns ``(pivot_columns, d)``.  Afterwards rows ``0..rank-1`` are the
    reduced rows scaled by the common denominator ``d``: row ``k`` holds ``d``
    at ``pivot_columns[k]`` and zero at every other pivot column.  Remaining
    rows are zero.
    """
    nrows = len(a)
    if not nrows:
        return [], 1
    ncols = len(a[0])
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        p = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            start = c if i > r else 0
            if f:
                for j in range(start, ncols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
            elif p != prev:
                for j in range(start, ncols):
                    if row[j]:
                        row[j] = row[j] * p // prev
        pivots.append(c)
        prev = p
        r += 1
        if r == nrows:
            break
    return pivots, prev


# ---------------------------------------------------------------------------
# public operations


def rank(m: RationalMatrix) -> int:
    """Rank over Q."""
    total = 0
    for rows, cols in _blocks(m):
        if len(rows) == 1 or len(cols) == 1:
            total += 1
            continue
        a = _integer_block(m, rows, cols)
        if len(rows) > len(cols):
            a = [list(col) for col in zip(*a)]
        total += _bareiss_rank(a)
    return total


def rref(m: RationalMatrix) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Reduced row echelon form of the row space.

    Returns ``(rows, pivots)`` where ``rows[k]`` is a sparse row vector with
    entry 1 at ``pivots[k]`` and zero at every other pivot column.  Columns are
    eliminated in index order, so pivots are the earliest possible columns.
    Rows are sorted by pivot column.
    """
    out = []
    for rows, cols in _blocks(m):
        a = _integer_block(m, rows, cols)
        piv, d = _bareiss_rref(a)
        for k, pc in enumerate(piv):
            row = a[k]
            vec = {cols[j]: Fraction(row[j], d) for j in range(len(cols)) if row[j]}
            out.append((cols[pc], vec))
    out.sort(key=lambda t: t[0])
    return [v for _, v in out], [p for p, _ in out]


def kernel_basis(m: RationalMatrix) -> RationalMatrix:
    """Basis of the right kernel, returned as the columns of a ``cols x k`` matrix.

    The columns are linearly independent, each is killed by ``m``, and there
    are exactly ``m.cols - rank(m)`` of them.
    """
    vectors: list[tuple[int, dict[int, Fraction]]] = []
    touched = set()
    for rows, cols in _blocks(m):
        touched.update(cols)
        a = _integer_block(m, rows, cols)
        piv, d = _bareiss_rref(a)
        pivset = set(piv)
        for f in range(len(cols)):
            if f in pivset:
                continue
            vec = {cols[f]: Fraction(1)}
            for k, pc in enumerate(piv):
                x = a[k][f]
                if x:
                    vec[cols[pc]] = Fraction(-x, d)
            vectors.append((cols[f], vec))
    for j in range(m.cols):
        if j not in touched:
            vectors.append((j, {j: Fraction(1)}))
    vectors.sort(key=lambda t: t[0])
    return RationalMatrix.from_columns(m.cols, (v for _, v in vectors))


def quotient_dim(ambient_dim: int, subspace_gens: RationalMatrix, second_gens: RationalMatrix) -> int:
    """``rank([subspace_gens | second_gens]) - rank(second_gens)``.

    When ``span(second_gens)`` lies inside ``span(subspace_gens)`` this is the
    dimension of the quotient of the two spans.
    """
    if subspace_gens.rows != ambient_dim or second_gens.rows != ambient_dim:
        raise DimensionError(
            f"generators have {subspace_gens.rows} and {second_gens.rows} rows, "
            f"ambient dimension is {ambient_dim}"
        )
    return rank(subspace_gens.hstack(second_gens)) - rank(second_gens)


# ---------------------------------------------------------------------------
# modular cross-checks


def _rank_mod_p_dense(a: list[list[int]], p: int) -> int:
    nrows = len(a)
    if not nrows:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        inv = pow(prow[c], -1, p)
        for j in range(c, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        r += 1
        if r == nrows:
            break
    return r


def rank_mod_p(m: RationalMatrix, p: int) -> int:
    """Rank of the reduction of ``m`` modulo the prime ``p``.

    Rows are cleared of denominators first; a row whose scaled entries all
    vanish mod ``p`` simply drops out.  The result never exceeds ``rank(m)``.
    """
    total = 0
    for rows, cols in _blocks(m):
        a = [[x % p for x in row] for row in _integer_block(m, rows, cols)]
        if len(rows) > len(cols):
            a = [list(col) for col in zip(*a)]
        total += _rank_mod_p_dense(a, p)
    return total


def random_primes(count: int = 3, seed: int = 0, low: int = 2**30, high: int = 2**31) -> list[int]:
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        q = int(gmpy2.next_prime(rng.randrange(low, high)))
        if q not in out:
            out.append(q)
    return out


def multimodular_rank(m: RationalMatrix, primes: Sequence[int] | None = None) -> int:
    """Max over a few primes of the modular rank; certifies ``rank(m)`` when equal."""
    if primes is None:
        primes = random_primes()
    return max(rank_mod_p(m, p) for p in primes)
