"""Face posets, order complexes, barycentric subdivision, nerves of covers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .complexes import Simplex, SimplicialComplex


class FacePoset:
    """The simplices of a complex ordered by inclusion.

    Element ids are lexicographic ranks of the underlying simplices, which
    keeps every derived construction reproducible.
    """

    __slots__ = ("elements", "index", "above")

    def __init__(self, X: SimplicialComplex):
        self.elements: list[Simplex] = sorted(X.simplices)
        self.index: dict[Simplex, int] = {s: i for i, s in enumerate(self.elements)}
        # above[i]: ids of elements strictly containing element i
        self.above: list[list[int]] = []
        sets = [frozenset(s) for s in self.elements]
        for i, si in enumerate(sets):
            ups = [j for j, sj in enumerate(sets) if len(si) < len(sj) and si < sj]
            self.above.append(ups)

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, a: Simplex, b: Simplex) -> bool:
        return set(a) <= set(b)

    def simplex_of(self, element_id: int) -> Simplex:
        return self.elements[element_id]

    @property
    def height(self) -> int:
        """Length (number of covers) of a longest chain."""
        if not self.elements:
            return -1
        return max(len(s) for s in self.elements) - min(len(s) for s in self.elements)


def face_poset(X: SimplicialComplex) -> FacePoset:
    """Face poset of a complex; empty complexes give an empty poset."""
    return FacePoset(X)


@dataclass(frozen=True)
class OrderComplexVertexMap:
    """Bijection between order-complex vertex ids and poset elements."""

    to_base: dict[int, Simplex]
    to_vertex: dict[Simplex, int] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.to_vertex is None:
            object.__setattr__(
                self, "to_vertex", {s: v for v, s in self.to_base.items()}
            )
        if len(self.to_vertex) != len(self.to_base):
            raise ValueError("vertex map is not a bijection")


def order_complex(
    P: FacePoset,
    *,
    vertex_ids: Mapping[Simplex, int] | None = None,
    max_dim: int | None = None,
) -> tuple[SimplicialComplex, OrderComplexVertexMap]:
    """The complex of strict chains of P.

    Vertices are poset elements; ``[x_0, ..., x_k]`` is a simplex exactly
    when ``x_0 < ... < x_k``.  Vertex ids default to the poset's
    lexicographic element ids; pass ``vertex_ids`` to embed several order
    complexes into one shared id space.  ``max_dim`` truncates to the
    skeleton needed by a caller (chains of at most max_dim + 1 elements).
    """
    if vertex_ids is None:
        ids = list(range(len(P)))
    else:
        ids = [vertex_ids[s] for s in P.elements]
    max_len = None if max_dim is None else max_dim + 1
    simplices: list[Simplex] = []

    def extend(chain_ids: tuple[int, ...], last: int) -> None:
        simplices.append(tuple(sorted(chain_ids)))
        if max_len is not None and len(chain_ids) >= max_len:
            return
        for nxt in P.above[last]:
            extend(chain_ids + (ids[nxt],), nxt)

    for i in range(len(P)):
        extend((ids[i],), i)

    complex_ = SimplicialComplex(simplices, _closed=True)
    vmap = OrderComplexVertexMap({ids[i]: P.elements[i] for i in range(len(P))})
    return complex_, vmap


def barycentric_subdivision(
    X: SimplicialComplex, *, max_dim: int | None = None
) -> tuple[SimplicialComplex, OrderComplexVertexMap]:
    """Order complex of the face poset, with the vertex back-map."""
    return order_complex(face_poset(X), max_dim=max_dim)


def nerve(cover: Mapping[int, SimplicialComplex]) -> SimplicialComplex:
    """Nerve of an indexed family of subcomplexes of one ambient complex.

    A finite index set S is a simplex exactly when the members indexed by
    S share at least one simplex.  Indices with empty members contribute
    no vertex; the empty index set is never a simplex.
    """
    sets = {
        i: elem.simplices for i, elem in sorted(cover.items()) if len(elem) > 0
    }
    indices = sorted(sets)
    simplices: list[Simplex] = []

    def extend(tup: tuple[int, ...], inter: frozenset) -> None:
        simplices.append(tup)
        for j in indices:
            if j <= tup[-1]:
                continue
            nxt = inter & sets[j]
            if nxt:
                extend(tup + (j,), nxt)

    for i in indices:
        extend((i,), sets[i])
    return SimplicialComplex(simplices, _closed=True)
