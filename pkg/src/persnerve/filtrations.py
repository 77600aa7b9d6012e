"""Filtered complexes, filtered covers, hypothesis validation, instance generator.

Levels in the discrete core are non-negative integers; geometric
front-ends carry real birth values plus a level-value table (see
``geometry``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .complexes import (
    EMPTY_COMPLEX,
    Simplex,
    SimplicialComplex,
    as_simplex,
    closure_of_simplex,
    facets,
)

Level = int | float


class FilteredComplex:
    """A complex with a birth level per simplex, monotone under faces."""

    __slots__ = ("complex", "birth", "levels")

    def __init__(
        self,
        complex_: SimplicialComplex,
        birth: Mapping[Simplex, Level],
        levels: Iterable[Level] | None = None,
    ):
        missing = complex_.simplices - set(birth)
        if missing:
            raise ValueError(f"no birth level for {sorted(missing)[:3]}...")
        extra = set(birth) - complex_.simplices
        if extra:
            raise ValueError(f"birth levels for foreign simplices {sorted(extra)[:3]}")
        for s in complex_.simplices:
            for f in facets(s):
                if birth[f] > birth[s]:
                    raise ValueError(
                        f"non-monotone filtration: face {f} born {birth[f]} "
                        f"after {s} born {birth[s]}"
                    )
        self.complex = complex_
        self.birth = dict(birth)
        born = set(birth.values())
        if levels is None:
            self.levels = sorted(born)
        else:
            given = set(levels)
            if not born <= given:
                raise ValueError(f"birth values {sorted(born - given)} missing from levels")
            self.levels = sorted(given)

    def sublevel(self, level: Level) -> SimplicialComplex:
        """All simplices born at or before ``level``; face-closed."""
        return SimplicialComplex(
            [s for s, b in self.birth.items() if b <= level], _closed=True
        )

    def __repr__(self) -> str:
        return (
            f"FilteredComplex({len(self.complex)} simplices, "
            f"{len(self.levels)} levels)"
        )


def sublevel(F: FilteredComplex, level: Level) -> SimplicialComplex:
    return F.sublevel(level)


class FilteredCover:
    """Per level, an indexed family of subcomplexes covering the sublevel
    complex, each element non-decreasing in the level."""

    __slots__ = ("levels", "indices", "elements")

    def __init__(
        self,
        levels: Iterable[int],
        elements: Mapping[int, Mapping[int, SimplicialComplex]],
    ):
        self.levels = sorted(levels)
        self.indices = sorted(elements)
        self.elements = {
            i: {lv: elements[i][lv] for lv in self.levels} for i in self.indices
        }
        for i in self.indices:
            got = set(elements[i])
            if got != set(self.levels):
                raise ValueError(f"cover element {i} missing levels {set(self.levels) - got}")

    def element(self, level: int, i: int) -> SimplicialComplex:
        return self.elements[i][level]

    def cover_at(self, level: int) -> dict[int, SimplicialComplex]:
        return {i: self.elements[i][level] for i in self.indices}

    def union_at(self, level: int) -> SimplicialComplex:
        simplices: set[Simplex] = set()
        for i in self.indices:
            simplices |= self.elements[i][level].simplices
        return SimplicialComplex(simplices, _closed=True)


# ---------------------------------------------------------------------------
# contractibility certificates


@dataclass(frozen=True)
class ContractibilityCertificate:
    """Sufficient evidence that a complex is contractible.

    kind is one of 'is-closed-simplex', 'is-cone', 'collapses-to-point',
    'uncertified'.  'uncertified' never claims non-contractibility.
    """

    kind: str
    apex: int | None = None
    collapse_sequence: tuple[tuple[Simplex, Simplex], ...] = ()

    @property
    def certified(self) -> bool:
        return self.kind != "uncertified"


def _greedy_collapse(X: SimplicialComplex) -> tuple[tuple[Simplex, Simplex], ...] | None:
    simplices = set(X.simplices)
    sequence: list[tuple[Simplex, Simplex]] = []
    while len(simplices) > 1:
        supersets: dict[Simplex, list[Simplex]] = {s: [] for s in simplices}
        for s in simplices:
            ss = set(s)
            for t in simplices:
                if len(t) < len(s) and set(t) < ss:
                    supersets[t].append(s)
        free = sorted(
            (t, sups[0]) for t, sups in supersets.items() if len(sups) == 1
        )
        if not free:
            return None
        t, s = free[0]
        simplices.discard(t)
        simplices.discard(s)
        sequence.append((t, s))
    if len(simplices) == 1 and len(next(iter(simplices))) == 1:
        return tuple(sequence)
    return None


def certify_contractible(X: SimplicialComplex) -> ContractibilityCertificate:
    """Try cheap sufficient conditions for contractibility, in order:
    closed simplex, cone, then greedy elementary collapses to a point."""
    if len(X) == 0:
        raise ValueError("empty complex has no contractibility certificate")
    maximal = X.maximal_simplices()
    top = max(X.simplices, key=len)
    if all(set(s) <= set(top) for s in X.simplices):
        return ContractibilityCertificate("is-closed-simplex")
    common = set(maximal[0])
    for m in maximal[1:]:
        common &= set(m)
        if not common:
            break
    if common:
        return ContractibilityCertificate("is-cone", apex=min(common))
    seq = _greedy_collapse(X)
    if seq is not None:
        return ContractibilityCertificate("collapses-to-point", collapse_sequence=seq)
    return ContractibilityCertificate("uncertified")


# ---------------------------------------------------------------------------
# cover validation


@dataclass
class IntersectionRecord:
    level: int
    indices: tuple[int, ...]
    certificate: ContractibilityCertificate


@dataclass
class CoverValidationReport:
    """Per-hypothesis results for a filtered cover against a filtration."""

    levels_match: bool
    union_failures: list[dict] = field(default_factory=list)
    nesting_failures: list[dict] = field(default_factory=list)
    intersections: list[IntersectionRecord] = field(default_factory=list)

    @property
    def union_ok(self) -> bool:
        return not self.union_failures

    @property
    def nesting_ok(self) -> bool:
        return not self.nesting_failures

    @property
    def uncertified(self) -> list[IntersectionRecord]:
        return [r for r in self.intersections if not r.certificate.certified]

    def ok(self, strict: bool = False) -> bool:
        good = self.levels_match and self.union_ok and self.nesting_ok
        if strict:
            good = good and not self.uncertified
        return good


def validate_filtered_cover(
    fc: FilteredCover, F: FilteredComplex
) -> CoverValidationReport:
    """Check the union condition, element nesting across levels, and
    certify every nonempty intersection at every level."""
    report = CoverValidationReport(levels_match=(list(fc.levels) == list(F.levels)))

    for lv in fc.levels:
        want = F.sublevel(lv).simplices
        got = fc.union_at(lv).simplices
        if want != got:
            report.union_failures.append(
                {
                    "level": lv,
                    "missing": sorted(want - got),
                    "extra": sorted(got - want),
                }
            )

    for i in fc.indices:
        for a_pos, la in enumerate(fc.levels):
            lower = fc.elements[i][la].simplices
            for lb in fc.levels[a_pos + 1 :]:
                upper = fc.elements[i][lb].simplices
                if not lower <= upper:
                    witness = sorted(lower - upper)[0]
                    report.nesting_failures.append(
                        {"index": i, "level": la, "later_level": lb, "lost": witness}
                    )

    for lv in fc.levels:
        sets = {
            i: fc.elements[i][lv].simplices
            for i in fc.indices
            if len(fc.elements[i][lv]) > 0
        }
        live = sorted(sets)

        def extend(tup: tuple[int, ...], inter: frozenset) -> None:
            cert = certify_contractible(SimplicialComplex(inter, _closed=True))
            report.intersections.append(IntersectionRecord(lv, tup, cert))
            for j in live:
                if j <= tup[-1]:
                    continue
                nxt = inter & sets[j]
                if nxt:
                    extend(tup + (j,), nxt)

        for i in live:
            extend((i,), sets[i])

    return report


# ---------------------------------------------------------------------------
# random good-filtered-cover generator


@dataclass(frozen=True)
class GeneratorParams:
    n_vertices: int = 12
    top_dim: int = 3
    n_levels: int = 5
    growth_mode: str = "activation"  # or "face-growth"
    n_elements: int = 5

    def validate(self) -> None:
        if not (1 <= self.n_vertices <= 32):
            raise ValueError("n_vertices must be in 1..32")
        if not (0 <= self.top_dim <= 4):
            raise ValueError("top_dim must be in 0..4")
        if not (1 <= self.n_levels <= 8):
            raise ValueError("n_levels must be in 1..8")
        if self.growth_mode not in ("activation", "face-growth"):
            raise ValueError(f"unknown growth mode {self.growth_mode!r}")
        if self.n_elements < 1:
            raise ValueError("need at least one cover element")
        if self.top_dim + 1 > self.n_vertices:
            raise ValueError("top_dim too large for the vertex count")


def generate_good_filtered_cover(
    seed: int, params: GeneratorParams = GeneratorParams()
) -> tuple[FilteredComplex, FilteredCover]:
    """A random filtered complex plus a cover satisfying every hypothesis
    by construction: elements are closed simplices growing with the level,
    so all intersections are closed simplices (hence contractible), the
    union defines the sublevel complexes, and nesting is automatic.
    Deterministic in ``seed``.
    """
    params.validate()
    rng = random.Random(seed)
    levels = list(range(params.n_levels))

    generators: list[Simplex] = []
    seen: set[Simplex] = set()
    attempts = 0
    while len(generators) < params.n_elements:
        attempts += 1
        if attempts > 200 * params.n_elements:
            raise ValueError("unsatisfiable generator parameters")
        size = rng.randint(min(2, params.top_dim + 1), params.top_dim + 1)
        cand = as_simplex(rng.sample(range(params.n_vertices), size))
        if cand not in seen:
            seen.add(cand)
            generators.append(cand)

    activation = [rng.randrange(params.n_levels) for _ in generators]
    activation[rng.randrange(len(generators))] = 0

    elements: dict[int, dict[int, SimplicialComplex]] = {}
    for i, gen in enumerate(generators):
        a = activation[i]
        per_level: dict[int, SimplicialComplex] = {}
        if params.growth_mode == "activation":
            for lv in levels:
                per_level[lv] = closure_of_simplex(gen) if lv >= a else EMPTY_COMPLEX
        else:
            order = list(gen)
            rng.shuffle(order)
            span = max(1, (params.n_levels - 1) - a)
            for lv in levels:
                if lv < a:
                    per_level[lv] = EMPTY_COMPLEX
                    continue
                if params.n_levels - 1 == a:
                    size = len(gen)
                else:
                    frac = (lv - a) / span
                    size = 1 + int(round(frac * (len(gen) - 1)))
                face = as_simplex(order[:size])
                per_level[lv] = closure_of_simplex(face)
        elements[i] = per_level

    fc = FilteredCover(levels, elements)

    birth: dict[Simplex, int] = {}
    for lv in levels:
        for s in fc.union_at(lv).simplices:
            if s not in birth:
                birth[s] = lv
    total = SimplicialComplex(birth, _closed=True)
    F = FilteredComplex(total, birth, levels=levels)
    return F, fc
