"""Machine checks of the exact inequalities and identities the library uses.

Every check here is a falsifiable statement: violations lists must come
back empty, and a nonempty list means an implementation bug, not news about
number theory.  No bare floating-point comparison decides a pass; bounds are
checked on exact integers or certified with interval arithmetic under
directed rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath

from .cyclo import (
    CycloFactorCache,
    cyclotomic_eval,
    decompose,
    divisors,
    euler_phi,
    mobius,
)
from .ideals import BudgetExhausted, factor_principal
from .intfactor import FactorBudget
from .places import is_wieferich_place, order_consistency_check
from .qfield import BaseClass, FieldSpec, QuadInt, classify_base, is_squarefree

_SANDWICH_PRECISIONS = (64, 128, 256, 512)


@dataclass
class BoundCheckReport:
    """Result of sweeping one exact inequality over a parameter range."""

    tag: str
    parameters: dict
    checked: int = 0
    skipped: list = dc_field(default_factory=list)
    violations: list = dc_field(default_factory=list)
    min_slack: object = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def record_slack(self, slack) -> None:
        if self.min_slack is None or slack < self.min_slack:
            self.min_slack = slack

    def as_dict(self) -> dict:
        return {
            "tag": self.tag,
            "parameters": self.parameters,
            "checked": self.checked,
            "skipped": self.skipped,
            "violations": self.violations,
            "min_slack": str(self.min_slack) if self.min_slack is not None else None,
            "passed": self.passed,
        }


def check_upper_norm_bound(a: QuadInt, n_max: int) -> BoundCheckReport:
    """max(|Nm(a^n - 1)|, |Nm(a^n + 1)|) <= 2**deg * |Nm(a)|**n for n <= n_max.

    Needs every embedding of a at magnitude >= 1, i.e. a nonzero.  Levels
    where a power hits 1 or -1 exactly (magnitude-one bases) are reported as
    skipped rather than compared against a zero norm.
    """
    if a.is_zero:
        raise ValueError("bound needs every embedding at magnitude >= 1; zero fails")
    deg = a.field.degree
    base = a.abs_norm()
    report = BoundCheckReport(
        tag="upper-norm-bound",
        parameters={"a": a.coords(), "field": str(a.field), "n_max": n_max},
    )
    power = a.field.one()
    for n in range(1, n_max + 1):
        power = power * a
        minus = power - 1
        plus = power + 1
        if minus.is_zero or plus.is_zero:
            report.skipped.append({"n": n, "reason": "power of base is a unit, zero value"})
            continue
        value = max(abs(minus.norm()), abs(plus.norm()))
        bound = 2**deg * base**n
        report.checked += 1
        if value > bound:
            report.violations.append({"n": n, "value": value, "bound": bound})
        else:
            report.record_slack(bound - value)
    return report


def check_cyclotomic_norm_lower_bound(a: QuadInt, n_max: int) -> BoundCheckReport:
    """|Nm(a)|**phi(n) <= 2**deg * |Nm(Phi_n(a))| for 2 <= n <= n_max.

    Needs an eligible base: every embedding at magnitude >= 2.
    """
    if classify_base(a) is not BaseClass.ELIGIBLE:
        raise ValueError("lower bound needs every embedding at magnitude >= 2")
    deg = a.field.degree
    base = a.abs_norm()
    report = BoundCheckReport(
        tag="cyclotomic-norm-lower-bound",
        parameters={"a": a.coords(), "field": str(a.field), "n_max": n_max},
    )
    for n in range(2, n_max + 1):
        lhs = base ** euler_phi(n)
        rhs = 2**deg * abs(cyclotomic_eval(n, a).norm())
        report.checked += 1
        if lhs > rhs:
            report.violations.append({"n": n, "lhs": lhs, "rhs": rhs})
        else:
            report.record_slack(rhs - lhs)
    return report


def _sandwich_certify(b: Fraction, n: int, precision: int) -> tuple[bool, float | None]:
    """Certify |sum over d|n of mu(n/d) log(1 - b**-d)| <= log 2 at one precision."""
    saved = mpmath.iv.prec
    try:
        mpmath.iv.prec = precision
        total = mpmath.iv.mpf(0)
        for d in divisors(n):
            sign = mobius(n // d)
            if sign == 0:
                continue
            numerator = b.numerator**d - b.denominator**d
            denominator = b.numerator**d
            term = mpmath.iv.log(mpmath.iv.mpf(numerator) / mpmath.iv.mpf(denominator))
            total = total + term if sign == 1 else total - term
        log2 = mpmath.iv.log(mpmath.iv.mpf(2))
        # compare outer endpoints so the certificate survives the rounding
        upper_ok = total.b <= log2.a
        lower_ok = total.a >= -log2.a
        if upper_ok and lower_ok:
            # endpoint arithmetic rounds outward again, so keep the inner edge
            slack = min(float((log2.a - total.b).a), float((total.a + log2.a).a))
            return True, slack
        return False, None
    finally:
        mpmath.iv.prec = saved


def check_sandwich(b, n_max: int) -> BoundCheckReport:
    """-log 2 <= sum over d|n of mu(n/d) log(1 - b**-d) <= log 2, 2 <= n <= n_max.

    b is any exact rational >= 2 (integers welcome); each level is certified
    by interval arithmetic, escalating the working precision until both
    inequalities hold with certainty.
    """
    b = Fraction(b)
    if b < 2:
        raise ValueError("sandwich bound needs b >= 2")
    report = BoundCheckReport(
        tag="sandwich",
        parameters={"b": f"{b.numerator}/{b.denominator}", "n_max": n_max},
    )
    for n in range(2, n_max + 1):
        certified = False
        for precision in _SANDWICH_PRECISIONS:
            ok, slack = _sandwich_certify(b, n, precision)
            if ok:
                certified = True
                report.checked += 1
                report.record_slack(slack)
                break
        if not certified:
            report.violations.append(
                {"n": n, "reason": "could not certify within precision ladder"}
            )
    return report


def check_pairwise_coprime(a: QuadInt, n_max: int, budget: FactorBudget | None = None,
                           cache: CycloFactorCache | None = None) -> BoundCheckReport:
    """Level slices of the squarefree parts are pairwise coprime.

    For all complete levels m < n <= n_max the gcd of the two level
    squarefree slices must be the unit ideal.
    """
    if cache is None:
        cache = CycloFactorCache(a, budget)
    report = BoundCheckReport(
        tag="pairwise-coprime-level-slices",
        parameters={"a": a.coords(), "field": str(a.field), "n_max": n_max},
    )
    slices = {}
    for n in range(1, n_max + 1):
        dec = decompose(a, n, cache=cache)
        if not dec.complete:
            report.skipped.append({"n": n, "reason": "incomplete factorization"})
            continue
        slices[n] = dec.level_squarefree
    levels = sorted(slices)
    for i, m in enumerate(levels):
        for n in levels[i + 1 :]:
            report.checked += 1
            shared = slices[m].gcd(slices[n])
            if not shared.is_trivial():
                report.violations.append({"m": m, "n": n, "gcd": repr(shared)})
    return report


def check_squarefree_nonwieferich(a: QuadInt, n_max: int, budget: FactorBudget | None = None,
                                  cache: CycloFactorCache | None = None) -> BoundCheckReport:
    """Every prime of the squarefree part of (a^n - 1) tests non-Wieferich."""
    if cache is None:
        cache = CycloFactorCache(a, budget)
    report = BoundCheckReport(
        tag="squarefree-places-nonwieferich",
        parameters={"a": a.coords(), "field": str(a.field), "n_max": n_max},
    )
    for n in range(1, n_max + 1):
        dec = decompose(a, n, cache=cache)
        if not dec.complete:
            report.skipped.append({"n": n, "reason": "incomplete factorization"})
            continue
        for P, _ in dec.squarefree.items_sorted():
            report.checked += 1
            if is_wieferich_place(P, a):
                report.violations.append({"n": n, "place": P.label()})
    return report


def check_order_consistency_range(a: QuadInt, n_max: int, budget: FactorBudget | None = None,
                                  cache: CycloFactorCache | None = None) -> BoundCheckReport:
    """Order and norm congruences at every unramified level prime, n <= n_max."""
    if cache is None:
        cache = CycloFactorCache(a, budget)
    report = BoundCheckReport(
        tag="order-consistency",
        parameters={"a": a.coords(), "field": str(a.field), "n_max": n_max},
    )
    for n in range(1, n_max + 1):
        level_report = order_consistency_check(n, a, budget=budget, cache=cache)
        if not level_report.complete:
            report.skipped.append({"n": n, "reason": "incomplete factorization"})
            continue
        report.checked += len(level_report.checked)
        for label in level_report.order_unresolved:
            report.skipped.append({"n": n, "place": label, "reason": "order unresolved"})
        report.violations.extend({"n": n, "detail": v} for v in level_report.violations)
    return report


@dataclass
class TrendReport:
    """Per-level exponent ratios of the powerful and squarefree parts.

    Ratios compare log-norms against n log|Nm a| (or phi(n) log|Nm a| for the
    level slice); no assertion is attached since the underlying asymptotics
    carry unspecified constants.  The exact integer identity
    Nm(squarefree) * Nm(powerful) = |Nm(a^n - 1)| is verified per level.
    """

    base: QuadInt
    n_max: int
    entries: list[dict] = dc_field(default_factory=list)
    skipped_levels: list[int] = dc_field(default_factory=list)
    identity_violations: list[int] = dc_field(default_factory=list)

    def complete_levels(self) -> list[int]:
        return [entry["n"] for entry in self.entries]

    def last_quartile_entries(self) -> list[dict]:
        if not self.entries:
            return []
        start = (3 * len(self.entries)) // 4
        return self.entries[start:]

    def summary(self) -> dict:
        quartile = self.last_quartile_entries()
        return {
            "base": self.base.coords(),
            "field": str(self.base.field),
            "n_max": self.n_max,
            "complete_levels": len(self.entries),
            "skipped_levels": self.skipped_levels,
            "identity_violations": self.identity_violations,
            "last_quartile_max_powerful_ratio": (
                max(e["powerful_ratio"] for e in quartile) if quartile else None
            ),
            "last_quartile_min_squarefree_ratio": (
                min(e["squarefree_ratio"] for e in quartile) if quartile else None
            ),
        }


def bound_trend_report(a: QuadInt, n_max: int, budget: FactorBudget | None = None,
                       cache: CycloFactorCache | None = None) -> TrendReport:
    """Ratio series for the powerful, squarefree, and level-slice norms."""
    if classify_base(a) not in (BaseClass.SMALL, BaseClass.ELIGIBLE):
        raise ValueError("trend report needs a base of magnitude above 1")
    if cache is None:
        cache = CycloFactorCache(a, budget)
    report = TrendReport(a, n_max)
    log_base = math.log(a.abs_norm())
    for n in range(1, n_max + 1):
        dec = decompose(a, n, cache=cache)
        if not dec.complete:
            report.skipped_levels.append(n)
            continue
        norm_squarefree = dec.squarefree.norm()
        norm_powerful = dec.powerful.norm()
        norm_total = abs(dec.power_value.norm())
        if norm_squarefree * norm_powerful != norm_total:
            report.identity_violations.append(n)
        norm_slice = dec.level_squarefree.norm()
        report.entries.append(
            {
                "n": n,
                "norm_squarefree": norm_squarefree,
                "norm_powerful": norm_powerful,
                "norm_total": norm_total,
                "norm_level_squarefree": norm_slice,
                "squarefree_ratio": math.log(norm_squarefree) / (n * log_base),
                "powerful_ratio": math.log(norm_powerful) / (n * log_base),
                "level_squarefree_ratio": (
                    math.log(norm_slice) / (euler_phi(n) * log_base)
                ),
            }
        )
    return report


@dataclass(frozen=True)
class QualityReport:
    """Quality statistic of a pair summing to a root of unity.

    quality = log max(|Nm alpha|, |Nm beta|) / log(Nm rad(alpha) Nm rad(beta));
    height and conductor are the degree-normalized versions of numerator and
    denominator, so quality is independent of that normalization.
    """

    alpha: QuadInt
    beta: QuadInt
    max_norm: int
    radical_product: int
    height: float
    conductor: float
    quality: float | None

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha.coords(),
            "beta": self.beta.coords(),
            "max_norm": self.max_norm,
            "radical_product": self.radical_product,
            "height": self.height,
            "conductor": self.conductor,
            "quality": self.quality,
        }


def abc_quality(alpha: QuadInt, beta: QuadInt, budget: FactorBudget | None = None) -> QualityReport:
    """Measure how close (alpha, beta, unit) comes to violating the radical bound.

    Requires alpha and beta nonzero with alpha + beta a unit (root of unity),
    and complete factorizations of both within the budget.
    """
    if alpha.field != beta.field:
        raise ValueError("both elements must live in the same field")
    if alpha.is_zero or beta.is_zero:
        raise ValueError("quality needs both elements nonzero")
    total = alpha + beta
    if not total.is_unit():
        raise ValueError("quality is defined only when the sum is a root of unity")
    fa = factor_principal(alpha, budget)
    fb = factor_principal(beta, budget)
    if not (fa.complete and fb.complete):
        raise BudgetExhausted("quality needs complete factorizations of both elements")
    max_norm = max(alpha.abs_norm(), beta.abs_norm(), total.abs_norm())
    radical_product = fa.norm_radical() * fb.norm_radical()
    deg = alpha.field.degree
    quality = None
    if radical_product > 1:
        quality = math.log(max_norm) / math.log(radical_product)
    return QualityReport(
        alpha=alpha,
        beta=beta,
        max_norm=max_norm,
        radical_product=radical_product,
        height=max_norm ** (1 / deg),
        conductor=radical_product ** (1 / deg),
        quality=quality,
    )


def exception_set(d_list) -> dict[int, list[QuadInt]]:
    """Per-field lists of all ring elements with norm at most 3.

    These are exactly the elements with some embedding at magnitude below 2,
    the bases excluded from the progression growth statement.  Enumeration is
    over the exact norm-form lattice, no floating point.
    """
    out: dict[int, list[QuadInt]] = {}
    for d in d_list:
        spec = FieldSpec.imaginary_quadratic(d)
        found = []
        if spec.basis_kind == "half":
            # norm 4*(x + y/2)^2 + d y^2 over 4; |y| <= sqrt(12/d)
            y_bound = math.isqrt(12 // d)
            for y in range(-y_bound, y_bound + 1):
                span = math.isqrt(12 - d * y * y)
                x_low = -((span + y) // 2)
                x_high = (span - y) // 2
                for x in range(x_low, x_high + 1):
                    element = spec.element(x, y)
                    if element.norm() <= 3:
                        found.append(element)
        else:
            y_bound = math.isqrt(3 // d) if d <= 3 else 0
            for y in range(-y_bound, y_bound + 1):
                x_bound = math.isqrt(3 - d * y * y)
                for x in range(-x_bound, x_bound + 1):
                    found.append(spec.element(x, y))
        out[d] = sorted(found, key=lambda e: (e.x, e.y))
    return out


def exception_set_union(d_max: int) -> list[tuple[int, QuadInt]]:
    """Union of exception sets over squarefree d <= d_max, rational entries once.

    Returns (d, element) pairs: rational integers are tagged with d = 0 and
    deduplicated across fields; everything else keeps its field's d.
    """
    union: list[tuple[int, QuadInt]] = []
    seen_rational: set[int] = set()
    seen_nonrational: set[tuple[int, int, int]] = set()
    for d in range(1, d_max + 1):
        if not is_squarefree(d):
            continue
        for element in exception_set([d])[d]:
            if element.y == 0:
                if element.x not in seen_rational:
                    seen_rational.add(element.x)
                    union.append((0, element))
            else:
                key = (d, element.x, element.y)
                if key not in seen_nonrational:
                    seen_nonrational.add(key)
                    union.append((d, element))
    union.sort(key=lambda pair: (pair[0], pair[1].x, pair[1].y))
    return union


@dataclass
class FullVerification:
    """Bundle of every check suite at one base."""

    base: QuadInt
    n_max: int
    reports: list[BoundCheckReport] = dc_field(default_factory=list)
    trend: TrendReport | None = None

    @property
    def violations_total(self) -> int:
        total = sum(len(r.violations) for r in self.reports)
        if self.trend is not None:
            total += len(self.trend.identity_violations)
        return total

    @property
    def passed(self) -> bool:
        return self.violations_total == 0

    def as_dict(self) -> dict:
        out = {
            "base": self.base.coords(),
            "field": str(self.base.field),
            "n_max": self.n_max,
            "passed": self.passed,
            "violations_total": self.violations_total,
            "reports": [r.as_dict() for r in self.reports],
        }
        if self.trend is not None:
            out["trend_summary"] = self.trend.summary()
        return out


def run_full_verification(a: QuadInt, n_max: int,
                          budget: FactorBudget | None = None) -> FullVerification:
    """Run every applicable check at one base over levels up to n_max."""
    bucket = classify_base(a)
    if bucket in (BaseClass.ZERO, BaseClass.ROOT_OF_UNITY):
        raise ValueError("verification sweeps need a base of magnitude above 1")
    cache = CycloFactorCache(a, budget)
    result = FullVerification(a, n_max)
    result.reports.append(check_upper_norm_bound(a, n_max))
    if bucket is BaseClass.ELIGIBLE:
        result.reports.append(check_cyclotomic_norm_lower_bound(a, n_max))
    result.reports.append(check_sandwich(max(2, a.abs_norm()), n_max))
    result.reports.append(check_pairwise_coprime(a, n_max, budget, cache))
    result.reports.append(check_squarefree_nonwieferich(a, n_max, budget, cache))
    result.reports.append(check_order_consistency_range(a, n_max, budget, cache))
    result.trend = bound_trend_report(a, n_max, budget, cache)
    return result
