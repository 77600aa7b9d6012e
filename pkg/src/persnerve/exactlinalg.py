"""Exact linear algebra for boundary matrices.

Everything here is exact: GF(p) arithmetic on ints, rationals via
``fractions.Fraction``, and integer lattice reduction for boundary
decisions over the integers.  The GF(2) path stores columns as Python int
bitmasks, which keeps desk-scale eliminations fast.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .chains import Chain, Ring, ZZ
from .complexes import Simplex, SimplicialComplex, facets


class BoundaryMatrix:
    """The degree-k boundary operator in the lexicographic simplex bases.

    Column j holds the boundary of the j-th k-simplex expressed over the
    (k-1)-simplices; entries are +1/-1 before any ring reduction.
    """

    __slots__ = ("rows", "cols", "columns", "ring")

    def __init__(
        self,
        rows: Sequence[Simplex],
        cols: Sequence[Simplex],
        columns: list[dict[int, int]],
        ring: Ring,
    ):
        self.rows = list(rows)
        self.cols = list(cols)
        self.columns = columns
        self.ring = ring

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def rank(self) -> int:
        return matrix_rank(self.columns, len(self.rows), self.ring)

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * len(self.cols) for _ in self.rows]
        for j, col in enumerate(self.columns):
            for i, c in col.items():
                dense[i][j] = c
        return dense


def boundary_matrix(X: SimplicialComplex, k: int, ring: Ring = ZZ) -> BoundaryMatrix:
    """Matrix of the boundary map from k-chains to (k-1)-chains of X."""
    if k < 0:
        raise ValueError("k must be non-negative")
    rows = X.k_simplices(k - 1) if k >= 1 else []
    cols = X.k_simplices(k)
    row_index = {s: i for i, s in enumerate(rows)}
    columns: list[dict[int, int]] = []
    for s in cols:
        col: dict[int, int] = {}
        if k >= 1:
            for j, f in enumerate(facets(s)):
                col[row_index[f]] = ring.normalize(1 if j % 2 == 0 else -1)
        columns.append(col)
    return BoundaryMatrix(rows, cols, columns, ring)


# ---------------------------------------------------------------------------
# column echelon forms with combination tracking


class GF2Echelon:
    """Column echelon form over GF(2); columns and combinations as bitmasks."""

    def __init__(self, columns: Sequence[int], n_rows: int):
        self.n_rows = n_rows
        self.n_cols = len(columns)
        # pivot row -> (reduced column mask, combination mask over input columns)
        self.pivots: dict[int, tuple[int, int]] = {}
        for j, col in enumerate(columns):
            self._insert(col, 1 << j)

    def _insert(self, col: int, combo: int) -> None:
        while col:
            low = col.bit_length() - 1
            hit = self.pivots.get(low)
            if hit is None:
                self.pivots[low] = (col, combo)
                return
            col ^= hit[0]
            combo ^= hit[1]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, b: int) -> int | None:
        """Combination mask x of input columns with A x = b, or None."""
        combo = 0
        while b:
            low = b.bit_length() - 1
            hit = self.pivots.get(low)
            if hit is None:
                return None
            b ^= hit[0]
            combo ^= hit[1]
        return combo


class FieldEchelon:
    """Column echelon form over GF(p) (p odd) or the rationals.

    Columns are dicts row -> value.  Over the rationals pass
    ``characteristic=0``; values are Fractions internally.
    """

    def __init__(self, columns: Sequence[dict[int, int]], characteristic: int):
        self.p = characteristic
        self.n_cols = len(columns)
        self.pivots: dict[int, tuple[dict, dict]] = {}
        for j, col in enumerate(columns):
            if self.p:
                work = {i: v % self.p for i, v in col.items() if v % self.p}
            else:
                work = {i: Fraction(v) for i, v in col.items() if v}
            self._insert(work, {j: self._one()})

    def _one(self):
        return 1 if self.p else Fraction(1)

    def _inv(self, v):
        return pow(v, self.p - 2, self.p) if self.p else 1 / v

    def _axpy(self, target: dict, factor, source: dict) -> None:
        p = self.p
        for i, v in source.items():
            nv = target.get(i, 0) - factor * v
            if p:
                nv %= p
            if nv:
                target[i] = nv
            else:
                target.pop(i, None)

    def _insert(self, col: dict, combo: dict) -> None:
        while col:
            low = max(col)
            hit = self.pivots.get(low)
            if hit is None:
                self.pivots[low] = (col, combo)
                return
            factor = col[low] * self._inv(hit[0][low])
            if self.p:
                factor %= self.p
            self._axpy(col, factor, hit[0])
            self._axpy(combo, factor, hit[1])

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, b: dict[int, int]) -> dict | None:
        if self.p:
            res = {i: v % self.p for i, v in b.items() if v % self.p}
        else:
            res = {i: Fraction(v) for i, v in b.items() if v}
        combo: dict = {}
        while res:
            low = max(res)
            hit = self.pivots.get(low)
            if hit is None:
                return None
            factor = res[low] * self._inv(hit[0][low])
            if self.p:
                factor %= self.p
            self._axpy(res, factor, hit[0])
            for j, v in hit[1].items():
                nv = combo.get(j, 0) + factor * v
                if self.p:
                    nv %= self.p
                if nv:
                    combo[j] = nv
                else:
                    combo.pop(j, None)
        return combo


class IntegerEchelon:
    """Euclidean column echelon over the integers with combination tracking.

    The claimed columns generate the same column lattice as the input, so
    ``solve`` decides integer solvability of A x = b exactly.
    """

    def __init__(self, columns: Sequence[dict[int, int]]):
        self.pivots: dict[int, tuple[dict[int, int], dict[int, int]]] = {}
        for j, col in enumerate(columns):
            work = {i: v for i, v in col.items() if v}
            self._insert(work, {j: 1})

    @staticmethod
    def _axpy(target: dict, factor: int, source: dict) -> None:
        for i, v in source.items():
            nv = target.get(i, 0) - factor * v
            if nv:
                target[i] = nv
            else:
                target.pop(i, None)

    def _insert(self, col: dict[int, int], combo: dict[int, int]) -> None:
        while col:
            low = max(col)
            hit = self.pivots.get(low)
            if hit is None:
                self.pivots[low] = (col, combo)
                return
            pcol, pcombo = hit
            q = col[low] // pcol[low]
            self._axpy(col, q, pcol)
            self._axpy(combo, q, pcombo)
            if low in col:
                # remainder nonzero: swap so the smaller low entry is claimed
                self.pivots[low] = (col, combo)
                col, combo = pcol, pcombo

    def solve(self, b: dict[int, int]) -> dict[int, int] | None:
        """Integer combination of the input columns equal to b, or None."""
        res = {i: v for i, v in b.items() if v}
        combo: dict[int, int] = {}
        while res:
            low = max(res)
            hit = self.pivots.get(low)
            if hit is None or res[low] % hit[0][low] != 0:
                return None
            q = res[low] // hit[0][low]
            self._axpy(res, q, hit[0])
            for j, v in hit[1].items():
                nv = combo.get(j, 0) + q * v
                if nv:
                    combo[j] = nv
                else:
                    combo.pop(j, None)
        return combo


def columns_to_bitmasks(columns: Sequence[dict[int, int]]) -> list[int]:
    out = []
    for col in columns:
        mask = 0
        for i, v in col.items():
            if v % 2:
                mask |= 1 << i
        out.append(mask)
    return out


def matrix_rank(columns: Sequence[dict[int, int]], n_rows: int, ring: Ring) -> int:
    """Rank over the given ring (rank over the rationals when ring is ZZ)."""
    p = ring.characteristic
    if p == 2:
        return GF2Echelon(columns_to_bitmasks(columns), n_rows).rank
    return FieldEchelon(columns, p).rank


def rank_by_diagonalization(dense: list[list[int]], ring: Ring) -> int:
    """Rank via full row-and-column pivoting to a diagonal form.

    Independent of the column-echelon path above: Smith-normal-form-style
    elimination, fraction-free (Bareiss-like division avoidance is not
    needed at desk scale; exact Fractions / modular inverses are used).
    """
    p = ring.characteristic
    if not dense or not dense[0]:
        return 0
    if p:
        a = [[v % p for v in row] for row in dense]
    else:
        a = [[Fraction(v) for v in row] for row in dense]
    m, n = len(a), len(a[0])
    rank = 0
    r = c = 0
    while r < m and c < n:
        pr, pc = -1, -1
        for i in range(r, m):
            for j in range(c, n):
                if a[i][j]:
                    pr, pc = i, j
                    break
            if pr >= 0:
                break
        if pr < 0:
            break
        a[r], a[pr] = a[pr], a[r]
        for row in a:
            row[c], row[pc] = row[pc], row[c]
        inv = pow(a[r][c], p - 2, p) if p else 1 / a[r][c]
        for i in range(r + 1, m):
            if a[i][c]:
                f = a[i][c] * inv
                if p:
                    f %= p
                for j in range(c, n):
                    a[i][j] = (a[i][j] - f * a[r][j]) % p if p else a[i][j] - f * a[r][j]
        rank += 1
        r += 1
        c += 1
    return rank


def betti_numbers(X: SimplicialComplex, max_dim: int, field: Ring) -> list[int]:
    """Betti numbers up to max_dim by rank-nullity on boundary matrices."""
    if not field.is_field:
        raise ValueError("betti_numbers needs field coefficients")
    out = []
    ranks = {}
    for k in range(max_dim + 2):
        bm = boundary_matrix(X, k, field)
        ranks[k] = matrix_rank(bm.columns, len(bm.rows), field)
    for k in range(max_dim + 1):
        n_k = len(X.k_simplices(k))
        out.append(n_k - ranks[k] - ranks[k + 1])
    return out


def betti_numbers_by_diagonalization(
    X: SimplicialComplex, max_dim: int, field: Ring
) -> list[int]:
    """Independent Betti computation: dense diagonalization ranks."""
    out = []
    ranks = {}
    for k in range(max_dim + 2):
        bm = boundary_matrix(X, k, field)
        ranks[k] = rank_by_diagonalization(bm.to_dense(), field)
    for k in range(max_dim + 1):
        n_k = len(X.k_simplices(k))
        out.append(n_k - ranks[k] - ranks[k + 1])
    return out


def is_boundary_in(c: Chain, X: SimplicialComplex) -> Chain | None:
    """A witness chain w on X with boundary(w) == c, or None.

    The decision is complete over fields and, via integer lattice
    reduction, over the integers as well.
    """
    k = c.degree
    for s in c.terms:
        if s not in X:
            raise ValueError(f"chain simplex {s} is not in the complex")
    bm = boundary_matrix(X, k + 1, c.ring)
    row_index = {s: i for i, s in enumerate(bm.rows)}
    b = {row_index[s]: v for s, v in c.terms.items()}
    p = c.ring.characteristic
    combo: dict | int | None
    if p == 2:
        mask = 0
        for i in b:
            mask |= 1 << i
        combo_mask = GF2Echelon(columns_to_bitmasks(bm.columns), len(bm.rows)).solve(mask)
        if combo_mask is None:
            return None
        terms = {}
        j = 0
        while combo_mask:
            if combo_mask & 1:
                terms[bm.cols[j]] = 1
            combo_mask >>= 1
            j += 1
        return Chain(k + 1, terms, c.ring)
    if p:
        combo = FieldEchelon(bm.columns, p).solve(b)
    else:
        combo = IntegerEchelon(bm.columns).solve(b)
    if combo is None:
        return None
    return Chain(k + 1, {bm.cols[j]: v for j, v in combo.items()}, c.ring)
