"""Chains with exact coefficients and the simplicial boundary operator.

Coefficients live in ``ZZ`` (exact Python integers) or in ``GF(p)`` for a
prime p.  No floating point enters any homology computation.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .complexes import (
    OrderedSimplex,
    Simplex,
    SimplicialComplex,
    facets,
    sort_with_sign,
)


class Ring:
    """Coefficient ring: the integers (characteristic 0) or Z/p, p prime.

    Elements are plain Python ints; GF(p) elements are kept reduced to
    ``0..p-1``.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic < 0:
            raise ValueError("characteristic must be 0 or a prime")
        if characteristic:
            if characteristic < 2 or any(
                characteristic % d == 0 for d in range(2, int(characteristic**0.5) + 1)
            ):
                raise ValueError(f"{characteristic} is not prime")
        self.characteristic = characteristic

    def normalize(self, c: int) -> int:
        return c % self.characteristic if self.characteristic else c

    def neg(self, c: int) -> int:
        return self.normalize(-c)

    def inv(self, c: int) -> int:
        p = self.characteristic
        if not p:
            raise ValueError("no division in the integers; use a field")
        return pow(c % p, p - 2, p)

    @property
    def is_field(self) -> bool:
        return self.characteristic != 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ring):
            return NotImplemented
        return self.characteristic == other.characteristic

    def __hash__(self) -> int:
        return hash(("Ring", self.characteristic))

    def __repr__(self) -> str:
        p = self.characteristic
        return "ZZ" if p == 0 else f"GF({p})"


ZZ = Ring(0)
GF2 = Ring(2)


class Chain:
    """A formal sum of same-dimension simplices with nonzero coefficients."""

    __slots__ = ("degree", "ring", "terms")

    def __init__(self, degree: int, terms: Mapping[Simplex, int], ring: Ring = ZZ):
        clean: dict[Simplex, int] = {}
        for s, c in terms.items():
            if len(s) - 1 != degree:
                raise ValueError(f"simplex {s} is not {degree}-dimensional")
            c = ring.normalize(c)
            if c:
                clean[s] = c
        self.degree = degree
        self.ring = ring
        self.terms = clean

    @classmethod
    def zero(cls, degree: int, ring: Ring = ZZ) -> "Chain":
        return cls(degree, {}, ring)

    @classmethod
    def single(cls, s: Simplex, coeff: int = 1, ring: Ring = ZZ) -> "Chain":
        return cls(len(s) - 1, {s: coeff}, ring)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.ring, frozenset(self.terms.items())))

    def __add__(self, other: "Chain") -> "Chain":
        self._check_compatible(other)
        merged = dict(self.terms)
        for s, c in other.terms.items():
            merged[s] = merged.get(s, 0) + c
        return Chain(self.degree, merged, self.ring)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __neg__(self) -> "Chain":
        return Chain(self.degree, {s: -c for s, c in self.terms.items()}, self.ring)

    def scale(self, a: int) -> "Chain":
        return Chain(self.degree, {s: a * c for s, c in self.terms.items()}, self.ring)

    def _check_compatible(self, other: "Chain") -> None:
        if self.ring != other.ring:
            raise ValueError(f"coefficient ring mismatch: {self.ring} vs {other.ring}")
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def support(self) -> list[Simplex]:
        return sorted(self.terms)

    def sorted_terms(self) -> list[tuple[Simplex, int]]:
        return sorted(self.terms.items())

    def to_ring(self, ring: Ring) -> "Chain":
        """Reduce an integer chain into another ring."""
        return Chain(self.degree, dict(self.terms), ring)

    def __repr__(self) -> str:
        if not self.terms:
            return f"Chain(0, degree={self.degree})"
        parts = [f"{c}*{list(s)}" for s, c in self.sorted_terms()]
        return " + ".join(parts).replace("+ -", "- ")


def chain_from_ordered_terms(
    terms: Iterable[tuple[int, OrderedSimplex]], degree: int, ring: Ring = ZZ
) -> Chain:
    """Accumulate (coefficient, ordered simplex) terms into a canonical chain."""
    acc: dict[Simplex, int] = {}
    for coeff, os in terms:
        sorted_s, sign = sort_with_sign(os)
        acc[sorted_s] = acc.get(sorted_s, 0) + sign * coeff
    return Chain(degree, acc, ring)


def boundary(os: OrderedSimplex, ring: Ring = ZZ) -> Chain:
    """Boundary of one ordered simplex: the alternating sum of its facets.

    The j-th term omits vertex j and carries sign (-1)^j; each facet is
    canonicalized with its sorting sign folded into the coefficient.
    """
    k = len(os) - 1
    if k == 0:
        # vertices have zero boundary (reduced homology is not used)
        return Chain(-1, {}, ring)
    acc: dict[Simplex, int] = {}
    for j in range(k + 1):
        facet = os[:j] + os[j + 1 :]
        sorted_s, sign = sort_with_sign(facet)
        coeff = sign if j % 2 == 0 else -sign
        acc[sorted_s] = acc.get(sorted_s, 0) + coeff
    return Chain(k - 1, acc, ring)


def boundary_chain(c: Chain) -> Chain:
    """Linear extension of the boundary to chains; degree drops by one."""
    acc: dict[Simplex, int] = {}
    for s, coeff in c.terms.items():
        for j, facet in enumerate(facets(s)):
            sign = coeff if j % 2 == 0 else -coeff
            acc[facet] = acc.get(facet, 0) + sign
    return Chain(c.degree - 1, acc, c.ring)


def is_cycle(c: Chain) -> bool:
    return boundary_chain(c).is_zero()


def chain_in_complex(c: Chain, X: SimplicialComplex) -> bool:
    return all(s in X for s in c.terms)
