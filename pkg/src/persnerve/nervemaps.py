"""Chain maps from filtered covers into nerve order complexes.

For a filtered cover, each level gives an order-reversing membership map
(simplex -> indices of the cover elements containing it), which induces a
chain map from the subdivided sublevel complex into the subdivided nerve.
Maps at two levels need not agree on chains; the mapping cylinder of
``cylinders`` projects to an explicit chain whose boundary is exactly the
difference of the two maps on cycles.  ``verify_homotopy`` mechanizes that
statement and cross-checks it with an independent linear solve.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .chains import GF2, Chain, Ring, ZZ, boundary_chain
from .complexes import Simplex, SimplicialComplex, sort_with_sign
from .cylinders import CompatiblePair, FormalChain, mapping_cylinder_chain
from .exactlinalg import FieldEchelon, GF2Echelon, boundary_matrix, columns_to_bitmasks
from .filtrations import FilteredComplex, FilteredCover
from .posets import face_poset, nerve, order_complex


class HypothesisViolation(Exception):
    """Raised when an input breaks a covering/nesting hypothesis mid-map."""


def cover_membership_map(fc: FilteredCover, level: int, simplex: Simplex) -> frozenset[int]:
    """Indices of the cover elements containing ``simplex`` at ``level``."""
    return frozenset(
        i for i in fc.indices if simplex in fc.element(level, i)
    )


@dataclass
class HomotopyCheck:
    """Outcome of one cylinder-homotopy verification at a level pair."""

    level: int
    p: int
    cycle: Chain
    containment_ok: bool
    containment_misses: list[Simplex]
    boundary_identity_ok: bool
    residual: Chain
    field_boundary_ok: bool
    chains_differ: bool
    map_low: Chain
    map_high: Chain
    cylinder_image: Chain

    @property
    def ok(self) -> bool:
        return self.containment_ok and self.boundary_identity_ok and self.field_boundary_ok


class NerveMapAnalyzer:
    """Caches subdivisions, nerves, membership maps and boundary solvers
    for one filtered cover, and runs the chain-level verifications.

    Vertex ids are global: subdivision vertices use the lexicographic rank
    of the underlying simplex in the full complex, nerve-subdivision
    vertices the rank of the underlying nerve simplex at the top level.
    Sublevel subdivisions are then literal subcomplexes of each other.
    """

    def __init__(
        self,
        F: FilteredComplex,
        fc: FilteredCover,
        max_cycle_dim: int = 2,
        field: Ring = GF2,
    ):
        if list(F.levels) != list(fc.levels):
            raise HypothesisViolation(
                f"level sets differ: {F.levels} vs {fc.levels}"
            )
        self.F = F
        self.fc = fc
        self.cap = max_cycle_dim + 1
        self.field = field
        base_all = sorted(F.complex.simplices)
        self.base_id: dict[Simplex, int] = {s: i for i, s in enumerate(base_all)}
        self.base_of: dict[int, Simplex] = dict(enumerate(base_all))
        top_nerve = nerve(fc.cover_at(fc.levels[-1]))
        nerve_all = sorted(top_nerve.simplices)
        self.nerve_simplex_id: dict[Simplex, int] = {
            s: i for i, s in enumerate(nerve_all)
        }
        self.nerve_simplex_of: dict[int, Simplex] = dict(enumerate(nerve_all))
        self._membership: dict[int, dict[Simplex, frozenset[int]]] = {}
        self._delta_sd: dict[int, SimplicialComplex] = {}
        self._nerve_at: dict[int, SimplicialComplex] = {}
        self._nerve_sd: dict[int, SimplicialComplex] = {}
        self._solvers: dict[tuple[int, int], tuple] = {}

    # -- cached building blocks ---------------------------------------

    def membership(self, level: int) -> dict[Simplex, frozenset[int]]:
        if level not in self._membership:
            acc: dict[Simplex, set[int]] = {}
            for i in self.fc.indices:
                for s in self.fc.element(level, i).simplices:
                    acc.setdefault(s, set()).add(i)
            self._membership[level] = {s: frozenset(v) for s, v in acc.items()}
        return self._membership[level]

    def delta_sd(self, level: int) -> SimplicialComplex:
        """Subdivision (order complex of the face poset) of the sublevel
        complex, truncated to the dimensions the checks need."""
        if level not in self._delta_sd:
            X = self.F.sublevel(level)
            sd, _ = order_complex(
                face_poset(X), vertex_ids=self.base_id, max_dim=self.cap
            )
            self._delta_sd[level] = sd
        return self._delta_sd[level]

    def nerve_at(self, level: int) -> SimplicialComplex:
        if level not in self._nerve_at:
            self._nerve_at[level] = nerve(self.fc.cover_at(level))
        return self._nerve_at[level]

    def nerve_sd(self, level: int) -> SimplicialComplex:
        if level not in self._nerve_sd:
            N = self.nerve_at(level)
            try:
                sd, _ = order_complex(
                    face_poset(N), vertex_ids=self.nerve_simplex_id, max_dim=self.cap
                )
            except KeyError as exc:
                raise HypothesisViolation(
                    f"nerve at level {level} is not nested in the top nerve "
                    f"(element nesting violated): {exc}"
                ) from None
            self._nerve_sd[level] = sd
        return self._nerve_sd[level]

    # -- vertex-level maps ---------------------------------------------

    def map_vertex(self, level: int, vertex_id: int) -> int:
        """Image of a subdivision vertex under the level's membership map,
        as a nerve-subdivision vertex id."""
        base = self.base_of[vertex_id]
        mem = self.membership(level).get(base)
        if not mem:
            raise HypothesisViolation(
                f"simplex {base} is not covered at level {level}; the "
                f"membership map is undefined there"
            )
        key = tuple(sorted(mem))
        if key not in self.nerve_simplex_id:
            raise HypothesisViolation(
                f"membership set {key} of {base} is not a top-level nerve "
                f"simplex; element nesting must be violated"
            )
        return self.nerve_simplex_id[key]

    # -- chain maps ------------------------------------------------------

    def nerve_chain_map(self, c: Chain, map_level: int, target_level: int) -> Chain:
        """Chain map induced by the membership map at ``map_level``, landing
        in the subdivided nerve at ``target_level >= map_level``."""
        if target_level < map_level:
            raise ValueError("target level must be at or above the map level")
        target = self.nerve_sd(target_level)
        acc: dict[Simplex, int] = {}
        for s, coeff in c.terms.items():
            image = tuple(self.map_vertex(map_level, u) for u in s)
            if len(set(image)) != len(image):
                continue
            canon, sign = sort_with_sign(image)
            if canon not in target:
                raise HypothesisViolation(
                    f"image {canon} of {s} is not a nerve-subdivision simplex "
                    f"at level {target_level}"
                )
            acc[canon] = acc.get(canon, 0) + sign * coeff
        return Chain(c.degree, acc, c.ring)

    def canonical_order(self, s: Simplex) -> tuple[int, ...]:
        """Vertices of a subdivision simplex listed with strictly decreasing
        underlying base simplices (largest first)."""
        return tuple(sorted(s, key=lambda u: -len(self.base_of[u])))

    def cylinder_pair(self, mu: Chain) -> CompatiblePair:
        """Pair a subdivision chain with its marked copy, each term in
        canonical vertex order."""
        return CompatiblePair.diagonal(
            [(coeff, self.canonical_order(s)) for s, coeff in mu.sorted_terms()]
        )

    def project_cylinder(
        self, fcyl: FormalChain, level: int, p: int
    ) -> tuple[Chain, list[Simplex]]:
        """Map a cylinder chain into the subdivided nerve at level + p:
        copy-0 vertices through the level map, copy-1 vertices through the
        (level + p) map.  Returns the image chain and the list of surviving
        abstract simplices that are *not* simplices of the target complex
        (nonempty only when the underlying theorem would fail)."""
        target = self.nerve_sd(level + p)

        def fn(label):
            copy, u = label
            return self.map_vertex(level if copy == 0 else level + p, u)

        image = fcyl.map_vertices(fn)
        misses = [s for s in sorted(image.terms) if s not in target]
        chain = Chain(fcyl.degree, dict(image.terms), ZZ)
        return chain, misses

    # -- boundary solver over the working field --------------------------

    def _boundary_solver(self, level: int, degree: int):
        key = (level, degree)
        if key not in self._solvers:
            bm = boundary_matrix(self.nerve_sd(level), degree + 1, self.field)
            row_index = {s: i for i, s in enumerate(bm.rows)}
            if self.field.characteristic == 2:
                ech = GF2Echelon(columns_to_bitmasks(bm.columns), len(bm.rows))
            else:
                ech = FieldEchelon(bm.columns, self.field.characteristic)
            self._solvers[key] = (ech, row_index, bm.cols)
        return self._solvers[key]

    def is_field_boundary(self, c: Chain, level: int) -> Chain | None:
        """Witness w on the subdivided nerve at ``level`` with dw = c over
        the working field, or None; independent of the cylinder route."""
        ech, row_index, cols = self._boundary_solver(level, c.degree)
        reduced = c.to_ring(self.field)
        if self.field.characteristic == 2:
            b = 0
            for s in reduced.terms:
                b |= 1 << row_index[s]
            combo = ech.solve(b)
            if combo is None:
                return None
            terms = {}
            j = 0
            while combo:
                if combo & 1:
                    terms[cols[j]] = 1
                combo >>= 1
                j += 1
            return Chain(c.degree + 1, terms, self.field)
        b = {row_index[s]: v for s, v in reduced.terms.items()}
        combo = ech.solve(b)
        if combo is None:
            return None
        return Chain(c.degree + 1, {cols[j]: v for j, v in combo.items()}, self.field)

    # -- the main verification ------------------------------------------

    def verify_homotopy(self, level: int, p: int, mu: Chain) -> HomotopyCheck:
        """For an integer cycle on the subdivided sublevel complex, check:

        (a) every surviving projected-cylinder simplex lies in the
            subdivided nerve at level + p;
        (b) the boundary of the projected cylinder equals the difference of
            the two induced chain maps, exactly over the integers;
        (c) that difference is a boundary over the working field, via an
            independent linear solve.
        """
        if p < 0 or (level + p) not in self.fc.levels:
            raise ValueError(f"level {level}+{p} outside the filtration")
        if not boundary_chain(mu).is_zero():
            raise ValueError("input chain is not a cycle")
        pair = self.cylinder_pair(mu)
        fcyl = mapping_cylinder_chain(pair)
        image, misses = self.project_cylinder(fcyl, level, p)
        low = self.nerve_chain_map(mu, level, level + p)
        high = self.nerve_chain_map(mu, level + p, level + p)
        diff = low - high
        residual = boundary_chain(image) - diff
        witness = self.is_field_boundary(diff, level + p)
        return HomotopyCheck(
            level=level,
            p=p,
            cycle=mu,
            containment_ok=not misses,
            containment_misses=misses,
            boundary_identity_ok=residual.is_zero(),
            residual=residual,
            field_boundary_ok=witness is not None,
            chains_differ=(low != high),
            map_low=low,
            map_high=high,
            cylinder_image=image,
        )

    # -- cycle sampling ----------------------------------------------------

    def sample_cycles(
        self, level: int, dims: list[int], count: int, rng: random.Random
    ) -> list[Chain]:
        """Deterministic random integer cycles on the subdivided sublevel
        complex: vertex chains, fundamental cycles of the edge graph, and
        boundaries of random higher chains."""
        sd = self.delta_sd(level)
        out: list[Chain] = []
        fundamentals = self._fundamental_cycles(sd)
        while len(out) < count:
            k = dims[len(out) % len(dims)]
            c = self._sample_cycle(sd, k, fundamentals, rng)
            if c is not None:
                out.append(c)
            else:
                out.append(Chain.zero(k, ZZ))
        return out

    @staticmethod
    def _fundamental_cycles(sd: SimplicialComplex) -> list[Chain]:
        edges = sd.k_simplices(1)
        parent: dict[int, int] = {}

        def find(x: int) -> int:
            root = x
            while parent.setdefault(root, root) != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        adj: dict[int, list[int]] = {}
        extra: list[Simplex] = []
        for u, v in edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                extra.append((u, v))
            else:
                parent[ru] = rv
                adj.setdefault(u, []).append(v)
                adj.setdefault(v, []).append(u)
        cycles = []
        for u, v in extra:
            path = _tree_path(adj, u, v)
            acc: dict[Simplex, int] = {}
            steps = list(zip(path, path[1:])) + [(v, u)]
            for x, y in steps:
                e = (x, y) if x < y else (y, x)
                acc[e] = acc.get(e, 0) + (1 if x < y else -1)
            cycles.append(Chain(1, acc, ZZ))
        return cycles

    def _sample_cycle(
        self,
        sd: SimplicialComplex,
        k: int,
        fundamentals: list[Chain],
        rng: random.Random,
    ) -> Chain | None:
        if k == 0:
            verts = sd.k_simplices(0)
            if not verts:
                return None
            picks = rng.sample(verts, min(len(verts), rng.randint(1, 3)))
            acc = {v: rng.choice([-3, -2, -1, 1, 2, 3]) for v in picks}
            return Chain(0, acc, ZZ)
        total = Chain.zero(k, ZZ)
        if k == 1 and fundamentals and rng.random() < 0.8:
            m = rng.randint(1, min(3, len(fundamentals)))
            for c in rng.sample(fundamentals, m):
                total = total + c.scale(rng.choice([-2, -1, 1, 2]))
        top = sd.k_simplices(k + 1)
        if top and (total.is_zero() or rng.random() < 0.5):
            picks = rng.sample(top, min(len(top), rng.randint(1, 3)))
            acc = {s: rng.choice([-2, -1, 1, 2]) for s in picks}
            total = total + boundary_chain(Chain(k + 1, acc, ZZ))
        if total.is_zero():
            return None
        return total


def _tree_path(adj: dict[int, list[int]], u: int, v: int) -> list[int]:
    """Vertex path from u to v inside a forest given by adjacency lists."""
    prev = {u: u}
    frontier = [u]
    while frontier and v not in prev:
        nxt = []
        for x in frontier:
            for y in adj.get(x, []):
                if y not in prev:
                    prev[y] = x
                    nxt.append(y)
        frontier = nxt
    if v not in prev:
        raise ValueError("vertices are in different components")
    path = [v]
    while path[-1] != u:
        path.append(prev[path[-1]])
    path.reverse()
    return path
