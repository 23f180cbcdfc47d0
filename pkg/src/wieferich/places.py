"""Wieferich place tests, non-Wieferich extraction, and the progression census.

A place P of norm q is Wieferich for the base a when a**(q-1) - 1 lands in
P squared, i.e. the Fermat-quotient valuation jumps above one.  The engine
below pulls guaranteed non-Wieferich places out of the squarefree part of
(a^n - 1), tracks first occurrences across cyclotomic levels, and counts
places whose norms fall in a fixed residue class, with every claimed property
re-checked at emission time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .cyclo import CycloFactorCache, Decomposition, decompose
from .ideals import (
    BudgetExhausted,
    KIND_RAMIFIED,
    PrimeIdeal,
    is_unit_mod,
    primes_above,
    residue_identity,
    residue_order,
    residue_pow,
)
from .intfactor import FactorBudget, padic_valuation, primes_up_to
from .qfield import BaseClass, QuadInt, classify_base


class InvariantViolation(AssertionError):
    """A machine-checked identity the library guarantees has failed."""


def is_wieferich_place(P: PrimeIdeal, a: QuadInt) -> bool:
    """True iff a**(q-1) is the identity in O/P**2, q = Nm(P).  Needs a not in P."""
    if not is_unit_mod(P, a):
        raise ValueError(f"base {a} lies in {P.label()}; the place test needs a unit")
    return residue_pow(a, P.norm - 1, P, 2) == residue_identity(P, 2)


@dataclass(frozen=True)
class PlaceReport:
    """One classified place: norm, multiplicative order of the base, verdict.

    order is None when the norm-minus-one factorization resisted the budget.
    """

    place: PrimeIdeal
    base: QuadInt
    norm: int
    order: int | None
    wieferich: bool

    def __post_init__(self) -> None:
        if self.order is not None and (self.norm - 1) % self.order:
            raise InvariantViolation(
                f"order {self.order} does not divide {self.norm} - 1 at {self.place.label()}"
            )

    def as_dict(self) -> dict:
        return {
            "p": self.place.p,
            "kind": self.place.kind,
            "t": self.place.t,
            "norm": self.norm,
            "order": self.order,
            "wieferich": self.wieferich,
        }


def place_report(P: PrimeIdeal, a: QuadInt, budget: FactorBudget | None = None) -> PlaceReport:
    try:
        order = residue_order(P, a, budget)
    except BudgetExhausted:
        order = None
    return PlaceReport(P, a, P.norm, order, is_wieferich_place(P, a))


def squarefree_powerful_split(n: int, a: QuadInt, budget: FactorBudget | None = None,
                              cache: CycloFactorCache | None = None) -> Decomposition:
    """Squarefree/powerful split of (a^n - 1) plus its level-n slice."""
    if n < 1:
        raise ValueError("level must be >= 1")
    if classify_base(a) in (BaseClass.ZERO, BaseClass.ROOT_OF_UNITY):
        raise ValueError("base must be neither zero nor of magnitude one")
    return decompose(a, n, cache=cache, budget=budget)


def nonwieferich_from_squarefree(n: int, a: QuadInt, budget: FactorBudget | None = None,
                                 cache: CycloFactorCache | None = None) -> list[PlaceReport]:
    """Every prime of the squarefree part of (a^n - 1), re-verified non-Wieferich.

    An incomplete level is skipped entirely (empty list) rather than risking
    a prime whose exponent the budget could not settle.
    """
    dec = squarefree_powerful_split(n, a, budget, cache)
    if not dec.complete:
        return []
    reports = []
    for P, _ in dec.squarefree.items_sorted():
        report = place_report(P, a, budget)
        if report.wieferich:
            raise InvariantViolation(
                f"{P.label()} divides the squarefree part of (a^{n} - 1) yet tested Wieferich"
            )
        reports.append(report)
    return reports


class FirstOccurrenceState:
    """Primes already seen in the level slices at multiples of the modulus k.

    Levels are ingested in increasing multiplier order; a level whose
    factorization is incomplete is logged and contributes nothing, so a prime
    hiding there may legitimately resurface later.
    """

    def __init__(self, a: QuadInt, k: int, budget: FactorBudget | None = None,
                 cache: CycloFactorCache | None = None):
        if k < 1:
            raise ValueError("progression modulus must be >= 1")
        self.a = a
        self.k = k
        self.cache = cache if cache is not None else CycloFactorCache(a, budget)
        self.seen: set[PrimeIdeal] = set()
        self.processed = 0
        self.incomplete_multipliers: list[int] = []

    def _slice(self, m: int) -> Decomposition:
        return decompose(self.a, self.k * m, cache=self.cache)

    def ingest(self, m: int) -> list[PrimeIdeal] | None:
        """Absorb level k*m; new primes in canonical order, None if incomplete."""
        if m != self.processed + 1:
            raise ValueError(f"levels must be ingested in order; expected {self.processed + 1}")
        self.processed = m
        dec = self._slice(m)
        if not dec.complete:
            self.incomplete_multipliers.append(m)
            return None
        fresh = [P for P, _ in dec.level_squarefree.items_sorted() if P not in self.seen]
        self.seen.update(fresh)
        return fresh

    def advance(self, m_target: int) -> None:
        while self.processed < m_target:
            self.ingest(self.processed + 1)


def new_prime_for(k: int, q: int, a: QuadInt, state: FirstOccurrenceState | None = None,
                  budget: FactorBudget | None = None) -> PrimeIdeal | None:
    """First prime of the level-(k*q) slice unseen at any smaller multiple of k.

    Returns None when the level's slice brings nothing new or its
    factorization was incomplete (logged on the state).  Consecutive calls
    with growing q against the same state yield pairwise distinct primes.
    """
    if state is None:
        state = FirstOccurrenceState(a, k, budget=budget)
    if state.a != a or state.k != k:
        raise ValueError("state was built for a different base or modulus")
    if q <= state.processed:
        raise ValueError(f"state already advanced past level multiplier {q}")
    state.advance(q - 1)
    fresh = state.ingest(q)
    if not fresh:
        return None
    return fresh[0]


@dataclass(frozen=True)
class CensusRecord:
    """A first-occurrence non-Wieferich place found by the progression census."""

    place: PrimeIdeal
    discovered_at_level: int
    norm: int
    residue_class: int

    def as_dict(self) -> dict:
        return {
            "p": self.place.p,
            "kind": self.place.kind,
            "t": self.place.t,
            "norm": self.norm,
            "level": self.discovered_at_level,
            "residue_class": self.residue_class,
        }


@dataclass
class CensusResult:
    """Census output: records plus the bookkeeping needed to audit them."""

    base: QuadInt
    k: int
    n_max: int
    strategy: str
    records: list[CensusRecord] = dc_field(default_factory=list)
    skipped_levels: list[int] = dc_field(default_factory=list)
    excluded: list[dict] = dc_field(default_factory=list)
    warnings: list[str] = dc_field(default_factory=list)
    complete_multipliers: list[int] = dc_field(default_factory=list)

    def grid_base(self) -> int:
        return self.base.abs_norm()

    def count_upto(self, x: int) -> int:
        return sum(1 for r in self.records if r.norm <= x)

    def summary(self) -> dict:
        base_norm = self.grid_base()
        x_grid = [base_norm ** (self.k * m) for m in self.complete_multipliers]
        counts = [self.count_upto(x) for x in x_grid]
        ratios = [c / math.log(x) if x > 1 else None for c, x in zip(counts, x_grid)]
        counts_by_level = []
        cumulative = 0
        by_level: dict[int, list[CensusRecord]] = {}
        for record in self.records:
            by_level.setdefault(record.discovered_at_level, []).append(record)
        certified = True
        for m in self.complete_multipliers:
            level = self.k * m
            found = by_level.get(level, ())
            cumulative += len(found)
            certified = certified and all(r.norm <= base_norm**level for r in found)
            counts_by_level.append(
                {
                    "multiplier": m,
                    "level": level,
                    "new_records": len(found),
                    "cumulative_records": cumulative,
                    "norms_within_grid": certified,
                }
            )
        return {
            "base": self.base.coords(),
            "field": str(self.base.field),
            "k": self.k,
            "n_max": self.n_max,
            "strategy": self.strategy,
            "record_count": len(self.records),
            "skipped_levels": self.skipped_levels,
            "excluded_count": len(self.excluded),
            "warnings": self.warnings,
            "x_grid": x_grid,
            "counts": counts,
            "count_over_log_x": ratios,
            "counts_by_level": counts_by_level,
        }


STRATEGY_ALL_LEVELS = "all-levels"
STRATEGY_PRIME_LEVELS = "prime-levels"


def census(a: QuadInt, k: int, n_max: int, budget: FactorBudget | None = None,
           strategy: str = STRATEGY_ALL_LEVELS,
           cache: CycloFactorCache | None = None) -> CensusResult:
    """Count non-Wieferich places with norm in the class 1 mod k, by level sweep.

    Levels k*m for multipliers m up to n_max (all m, or prime m only under
    the prime-levels strategy) are decomposed; first-occurrence primes of the
    squarefree level slices become records once they pass the unramified and
    residue-characteristic filters.  Exclusions and skipped levels are logged,
    and each record is re-verified non-Wieferich on the way out.
    """
    bucket = classify_base(a)
    if bucket not in (BaseClass.SMALL, BaseClass.ELIGIBLE):
        raise ValueError(
            "census needs a base of magnitude above one; zero and magnitude-one "
            "bases belong to the finite exception set where no growth holds"
        )
    if strategy not in (STRATEGY_ALL_LEVELS, STRATEGY_PRIME_LEVELS):
        raise ValueError(f"unknown census strategy {strategy!r}")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    result = CensusResult(a, k, n_max, strategy)
    if bucket is BaseClass.SMALL:
        result.warnings.append(
            "base magnitude squared is below 4; the logarithmic growth guarantee "
            "needs every embedding at magnitude 2 or more"
        )
    if strategy == STRATEGY_PRIME_LEVELS:
        multipliers = [m for m in primes_up_to(n_max)]
    else:
        multipliers = list(range(1, n_max + 1))
    state = FirstOccurrenceState(a, k, budget=budget, cache=cache)
    for m in multipliers:
        state.advance(m - 1)
        fresh = state.ingest(m)
        if fresh is None:
            result.skipped_levels.append(k * m)
            continue
        result.complete_multipliers.append(m)
        level = k * m
        for P in fresh:
            if P.kind == KIND_RAMIFIED:
                result.excluded.append(
                    {"place": P.label(), "level": level, "reason": "ramified"}
                )
                continue
            if k % P.p == 0:
                result.excluded.append(
                    {
                        "place": P.label(),
                        "level": level,
                        "reason": "residue characteristic divides the modulus",
                    }
                )
                continue
            if is_wieferich_place(P, a):
                raise InvariantViolation(
                    f"{P.label()} from a squarefree level slice tested Wieferich"
                )
            if (P.norm - 1) % k:
                raise InvariantViolation(
                    f"{P.label()} has norm {P.norm} outside the class 1 mod {k}"
                )
            result.records.append(CensusRecord(P, level, P.norm, P.norm % k))
    return result


@dataclass(frozen=True)
class OrderConsistencyReport:
    """Outcome of checking order = n / p**v_p(n) at every unramified level prime."""

    n: int
    base: QuadInt
    complete: bool
    checked: tuple[dict, ...]
    excluded_ramified: tuple[str, ...]
    order_unresolved: tuple[str, ...]
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def order_consistency_check(n: int, a: QuadInt, budget: FactorBudget | None = None,
                            cache: CycloFactorCache | None = None) -> OrderConsistencyReport:
    """At each unramified prime of the level-n value, the order of the base is
    n stripped of its residue-characteristic part, and the norm is 1 modulo
    that.  Ramified primes are listed as excluded, not checked."""
    if n < 1:
        raise ValueError("level must be >= 1")
    if cache is None:
        cache = CycloFactorCache(a, budget)
    level = cache.level(n)
    checked: list[dict] = []
    excluded: list[str] = []
    unresolved: list[str] = []
    violations: list[str] = []
    if level.complete:
        for P, _ in level.ideal.items_sorted():
            if P.kind == KIND_RAMIFIED:
                excluded.append(P.label())
                continue
            expected = n // P.p ** padic_valuation(n, P.p)
            try:
                order = residue_order(P, a, budget)
            except BudgetExhausted:
                unresolved.append(P.label())
                continue
            entry = {
                "place": P.label(),
                "norm": P.norm,
                "expected_order": expected,
                "order": order,
            }
            checked.append(entry)
            if order != expected:
                violations.append(
                    f"{P.label()}: order {order} != expected {expected} at level {n}"
                )
            elif (P.norm - 1) % expected:
                violations.append(
                    f"{P.label()}: norm {P.norm} is not 1 mod {expected}"
                )
    return OrderConsistencyReport(
        n=n,
        base=a,
        complete=level.complete,
        checked=tuple(checked),
        excluded_ramified=tuple(excluded),
        order_unresolved=tuple(unresolved),
        violations=tuple(violations),
    )


def scan_wieferich_places(a: QuadInt, p_bound: int,
                          budget: FactorBudget | None = None) -> tuple[list[PlaceReport], int]:
    """Classify every place of residue characteristic <= p_bound coprime to a.

    Returns (Wieferich hits as full reports, number of places tested).
    """
    hits: list[PlaceReport] = []
    tested = 0
    for p in primes_up_to(p_bound):
        for P in primes_above(a.field, p):
            if not is_unit_mod(P, a):
                continue
            tested += 1
            if is_wieferich_place(P, a):
                hits.append(place_report(P, a, budget))
    return hits, tested
