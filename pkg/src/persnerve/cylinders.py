"""The simplicial mapping cylinder as a formal chain, over the integers.

Given ordered k-simplices sigma = [v_0 .. v_k] and tau = [w_0 .. w_k], the
cylinder decomposes into k+1 abstract (k+1)-simplices

    Cyl(sigma, tau) = sum_t (-1)^(t+1) [v_0 .. v_t  w_t .. w_k]

on the doubled vertex set: v's live in copy 0, w's in copy 1.  The key
boundary identity,

    d Cyl(mu1, mu2) = mu1 - mu2 - Cyl(d mu1, d mu2),

is checked symbolically with exact integer coefficients; it is the chain
homotopy that makes the two nerve chain maps agree on homology.

Compatibility is data, not a property of bare chains: a compatible pair
is a list of terms (a_i, sigma_i, tau_i) sharing coefficients, and the
boundary of a pair pairs facets of sigma_i with facets of tau_i.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .complexes import sort_with_sign

Label = Hashable


class FormalChain:
    """Integer formal sum of abstract simplices on orderable labels.

    Terms are canonicalized: vertex tuples sorted, the permutation sign
    folded into the coefficient.  The zero chain compares equal across
    degrees, so identities stay readable at the edge cases.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict[tuple, int]):
        self.degree = degree
        self.terms = {s: c for s, c in terms.items() if c}

    @classmethod
    def zero(cls, degree: int = 0) -> "FormalChain":
        return cls(degree, {})

    @classmethod
    def from_ordered_terms(
        cls, degree: int, terms: Iterable[tuple[int, tuple]]
    ) -> "FormalChain":
        acc: dict[tuple, int] = {}
        for coeff, vertices in terms:
            if len(set(vertices)) != len(vertices):
                raise ValueError(f"repeated vertex in {vertices}")
            s, sign = sort_with_sign(vertices)
            acc[s] = acc.get(s, 0) + sign * coeff
        return cls(degree, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalChain):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.terms.items())))

    def _merge(self, other: "FormalChain", flip: int) -> "FormalChain":
        if self.terms and other.terms and self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        acc = dict(self.terms)
        for s, c in other.terms.items():
            acc[s] = acc.get(s, 0) + flip * c
        return FormalChain(self.degree if self.terms else other.degree, acc)

    def __add__(self, other: "FormalChain") -> "FormalChain":
        return self._merge(other, 1)

    def __sub__(self, other: "FormalChain") -> "FormalChain":
        return self._merge(other, -1)

    def __neg__(self) -> "FormalChain":
        return FormalChain(self.degree, {s: -c for s, c in self.terms.items()})

    def scale(self, a: int) -> "FormalChain":
        return FormalChain(self.degree, {s: a * c for s, c in self.terms.items()})

    def boundary(self) -> "FormalChain":
        acc: dict[tuple, int] = {}
        for s, coeff in self.terms.items():
            if len(s) == 1:
                continue
            for j in range(len(s)):
                facet = s[:j] + s[j + 1 :]
                sign = coeff if j % 2 == 0 else -coeff
                acc[facet] = acc.get(facet, 0) + sign
        return FormalChain(self.degree - 1, acc)

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def map_vertices(self, fn) -> "FormalChain":
        """Simplicial chain map: apply fn to each vertex, kill terms with a
        repeated image, canonicalize the rest with the permutation sign."""
        acc: dict[tuple, int] = {}
        for s, coeff in self.terms.items():
            image = tuple(fn(v) for v in s)
            if len(set(image)) != len(image):
                continue
            canon, sign = sort_with_sign(image)
            acc[canon] = acc.get(canon, 0) + sign * coeff
        return FormalChain(self.degree, acc)

    def __repr__(self) -> str:
        if not self.terms:
            return "FormalChain(0)"
        bits = [f"{c}*{list(s)}" for s, c in self.sorted_terms()]
        return " + ".join(bits).replace("+ -", "- ")


def first_copy(v: Label) -> tuple[int, Label]:
    return (0, v)


def second_copy(v: Label) -> tuple[int, Label]:
    return (1, v)


def mapping_cylinder(sigma: Sequence, tau: Sequence) -> FormalChain:
    """Cylinder between two ordered k-simplices, as k+1 signed
    (k+1)-simplices on the doubled vertex set."""
    if len(sigma) != len(tau):
        raise ValueError(
            f"dimension mismatch: {len(sigma) - 1} vs {len(tau) - 1}"
        )
    k = len(sigma) - 1
    terms = []
    for t in range(k + 1):
        verts = tuple(first_copy(v) for v in sigma[: t + 1]) + tuple(
            second_copy(w) for w in tau[t:]
        )
        terms.append((-1 if t % 2 == 0 else 1, verts))
    return FormalChain.from_ordered_terms(k + 1, terms)


class CompatiblePair:
    """Two chains written as term lists with shared coefficients.

    Stores (coeff, sigma_i, tau_i) with sigma_i, tau_i ordered simplices of
    equal dimension; the pairing carries the data needed for the cylinder
    and for facet-wise boundaries.
    """

    __slots__ = ("degree", "items")

    def __init__(self, items: Iterable[tuple[int, tuple, tuple]]):
        items = [(int(a), tuple(s), tuple(t)) for a, s, t in items]
        degrees = {len(s) - 1 for _, s, _ in items}
        if len(degrees) > 1:
            raise ValueError("mixed-degree compatible pair")
        for _, s, t in items:
            if len(s) != len(t):
                raise ValueError(f"incompatible terms: {s} vs {t}")
            if len(set(s)) != len(s) or len(set(t)) != len(t):
                raise ValueError("repeated vertex in an ordered simplex")
        self.items = [it for it in items if it[0]]
        self.degree = degrees.pop() if degrees else 0

    @classmethod
    def diagonal(cls, terms: Iterable[tuple[int, tuple]]) -> "CompatiblePair":
        """Pair a chain with its own marked copy, term by term."""
        return cls([(a, s, s) for a, s in terms])

    def boundary(self) -> "CompatiblePair":
        out = []
        for a, s, t in self.items:
            if len(s) == 1:
                continue
            for j in range(len(s)):
                sign = a if j % 2 == 0 else -a
                out.append((sign, s[:j] + s[j + 1 :], t[:j] + t[j + 1 :]))
        pair = CompatiblePair(out)
        pair.degree = self.degree - 1
        return pair

    def chain_first(self) -> FormalChain:
        """First member, embedded in copy 0 of the doubled vertex set."""
        return FormalChain.from_ordered_terms(
            self.degree,
            [(a, tuple(first_copy(v) for v in s)) for a, s, _ in self.items],
        )

    def chain_second(self) -> FormalChain:
        return FormalChain.from_ordered_terms(
            self.degree,
            [(a, tuple(second_copy(v) for v in t)) for a, _, t in self.items],
        )


def mapping_cylinder_chain(pair: CompatiblePair) -> FormalChain:
    """Linear extension of the cylinder over a compatible pair."""
    total = FormalChain.zero(pair.degree + 1)
    for a, s, t in pair.items:
        total = total + mapping_cylinder(s, t).scale(a)
    return total


def verify_cylinder_identity(pair: CompatiblePair) -> tuple[bool, FormalChain]:
    """Check  d Cyl(mu1, mu2) = mu1 - mu2 - Cyl(d mu1, d mu2)  exactly.

    Returns (holds, residual); the residual is the symbolic difference of
    the two sides, zero exactly when the identity holds.
    """
    lhs = mapping_cylinder_chain(pair).boundary()
    rhs = (
        pair.chain_first()
        - pair.chain_second()
        - mapping_cylinder_chain(pair.boundary())
    )
    residual = lhs - rhs
    return residual.is_zero(), residual
