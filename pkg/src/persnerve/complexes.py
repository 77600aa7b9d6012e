"""Simplices and finite simplicial complexes.

A simplex is stored canonically as a strictly increasing tuple of
non-negative integer vertex ids.  An *ordered* simplex is a tuple with an
explicit vertex ordering (no repeats, any order); sorting it yields the
canonical simplex together with the sign of the sorting permutation.
"""

from __future__ import annotations

from itertools import chain, combinations
from typing import Iterable, Iterator

Simplex = tuple[int, ...]
OrderedSimplex = tuple[int, ...]


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Canonicalize a vertex collection into a simplex.

    Raises ValueError on repeated vertices or negative ids.
    """
    vs = tuple(sorted(vertices))
    if not vs:
        raise ValueError("a simplex needs at least one vertex")
    if any(v < 0 for v in vs):
        raise ValueError(f"negative vertex id in {vs}")
    for a, b in zip(vs, vs[1:]):
        if a == b:
            raise ValueError(f"repeated vertex {a} in {vs}")
    return vs


def as_ordered_simplex(vertices: Iterable[int]) -> OrderedSimplex:
    vs = tuple(vertices)
    if not vs:
        raise ValueError("an ordered simplex needs at least one vertex")
    if len(set(vs)) != len(vs):
        raise ValueError(f"repeated vertex in {vs}")
    return vs


def simplex_dim(s: Simplex) -> int:
    return len(s) - 1


def sort_with_sign(vertices: tuple) -> tuple[tuple, int]:
    """Sort a repeat-free vertex tuple, returning (sorted tuple, permutation sign).

    Works for any totally ordered vertex labels, not just ints.
    """
    vs = list(vertices)
    sign = 1
    # insertion sort; tuples here are tiny (dimension + 1 entries)
    for i in range(1, len(vs)):
        j = i
        while j > 0 and vs[j - 1] > vs[j]:
            vs[j - 1], vs[j] = vs[j], vs[j - 1]
            sign = -sign
            j -= 1
    return tuple(vs), sign


def faces(s: Simplex) -> Iterator[Simplex]:
    """All nonempty proper and improper faces of ``s``."""
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


def facets(s: Simplex) -> Iterator[Simplex]:
    """Codimension-one faces, in vertex-omission order."""
    if len(s) == 1:
        return
    for j in range(len(s)):
        yield s[:j] + s[j + 1 :]


class SimplicialComplex:
    """A finite simplicial complex: a set of simplices closed under faces."""

    __slots__ = ("_simplices", "_by_dim")

    def __init__(self, simplices: Iterable[Simplex], *, _closed: bool = False):
        if _closed:
            closed = frozenset(simplices)
        else:
            closed = frozenset(chain.from_iterable(faces(s) for s in simplices))
        self._simplices = closed
        by_dim: dict[int, list[Simplex]] = {}
        for s in closed:
            by_dim.setdefault(len(s) - 1, []).append(s)
        for group in by_dim.values():
            group.sort()
        self._by_dim = by_dim

    @property
    def simplices(self) -> frozenset[Simplex]:
        return self._simplices

    def __contains__(self, s: Simplex) -> bool:
        return s in self._simplices

    def __len__(self) -> int:
        return len(self._simplices)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.sorted_simplices())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._simplices == other._simplices

    def __hash__(self) -> int:
        return hash(self._simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self)} simplices, dim={self.dim})"

    @property
    def dim(self) -> int:
        """Dimension of the complex; -1 when empty."""
        return max(self._by_dim, default=-1)

    def k_simplices(self, k: int) -> list[Simplex]:
        """The k-simplices in lexicographic order."""
        return list(self._by_dim.get(k, []))

    def sorted_simplices(self) -> list[Simplex]:
        """All simplices ordered by (dimension, lexicographic)."""
        out: list[Simplex] = []
        for k in sorted(self._by_dim):
            out.extend(self._by_dim[k])
        return out

    def vertices(self) -> list[int]:
        return [s[0] for s in self._by_dim.get(0, [])]

    def maximal_simplices(self) -> list[Simplex]:
        """Simplices not properly contained in any other, sorted."""
        by_size = sorted(self._simplices, key=len, reverse=True)
        maximal: list[Simplex] = []
        maximal_sets: list[frozenset[int]] = []
        for s in by_size:
            ss = frozenset(s)
            if not any(ss < m for m in maximal_sets):
                maximal.append(s)
                maximal_sets.append(ss)
        maximal.sort(key=lambda s: (len(s), s))
        return maximal

    def is_face_closed(self) -> bool:
        return all(
            all(f in self._simplices for f in facets(s)) for s in self._simplices
        )

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        """Shared simplices; geometric intersection for subcomplexes of one
        ambient complex."""
        return SimplicialComplex(self._simplices & other._simplices, _closed=True)

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(self._simplices | other._simplices, _closed=True)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self._simplices <= other._simplices

    def restrict_dim(self, max_dim: int) -> "SimplicialComplex":
        """The max_dim-skeleton."""
        kept = [s for s in self._simplices if len(s) - 1 <= max_dim]
        return SimplicialComplex(kept, _closed=True)


EMPTY_COMPLEX = SimplicialComplex([])


def make_complex(maximal_simplices: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Face closure of the given generating simplices.

    Idempotent: feeding a complex's simplices back in reproduces it.
    Rejects malformed input (repeated vertices) with ValueError.
    """
    gens = [as_simplex(s) for s in maximal_simplices]
    return SimplicialComplex(gens)


def closure_of_simplex(s: Simplex) -> SimplicialComplex:
    return SimplicialComplex([s])
