"""Cyclotomic values at ring elements, arithmetic functions, level splitting.

Phi_n(a) is evaluated through the Mobius product prod over d | n of
(a^d - 1)**mu(n/d) with exact ring division, so no coefficient tables are
needed at large n; a coefficient path is kept as a fallback for degenerate
bases and as an independent cross-check.

For a fixed base a the principal ideals (a^n - 1) factor along the exact
identity (a^n - 1) = prod over d | n of (Phi_d(a)), so a sweep over levels n
factors each cyclotomic value once and merges.  Primes shared between two
levels always lie over rational primes dividing the larger level, hence stay
below any sane trial division bound; merged exponents of certified primes are
therefore exact even when some level carries an unfactored cofactor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .intfactor import FactorBudget
from .ideals import IdealFactorization, factor_principal
from .qfield import QuadInt


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("divisors of positive integers only")
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f != n // f:
                large.append(n // f)
        f += 1
    return small + large[::-1]


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1 by trial division (small arguments)."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("totient of positive integers only")
    out = n
    for p in prime_factors(n):
        out -= out // p
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius of positive integers only")
    out = 1
    f = 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            out = -out
        f += 1
    if n > 1:
        out = -out
    return out


def totient_sieve(limit: int) -> list[int]:
    """phi(0..limit) with phi(0) = 0, by the standard multiplicative sieve."""
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:
            for multiple in range(p, limit + 1, p):
                phi[multiple] -= phi[multiple] // p
    return phi


def totient_density_constant(k: int) -> Fraction:
    """prod over primes p | k of (1 - gcd(k, p)/p**2), exactly.

    Since gcd(k, p) = p for p | k each factor is 1 - 1/p, so the product
    equals phi(k)/k; the literal product form is kept as the definition.
    """
    if k < 1:
        raise ValueError("constant defined for positive moduli")
    value = Fraction(1)
    for p in prime_factors(k):
        value *= 1 - Fraction(gcd(k, p), p * p)
    return value


def high_totient_count(x: int, k: int) -> int:
    """How many n <= x satisfy phi(n*k) > (2/3) * c(k) * n * k, strictly.

    c(k) is totient_density_constant(k); the comparison runs in exact
    rational arithmetic so ties (for instance n = 3, k = 1) are excluded.
    """
    if x < 1 or k < 1:
        raise ValueError("both arguments must be >= 1")
    threshold = Fraction(2, 3) * totient_density_constant(k)
    phi = totient_sieve(x * k)
    return sum(1 for n in range(1, x + 1) if Fraction(phi[n * k]) > threshold * n * k)


def _poly_exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Quotient of num by monic den over Z, assuming exact division."""
    num = list(num)
    deg_gap = len(num) - len(den)
    quot = [0] * (deg_gap + 1)
    for k in range(deg_gap, -1, -1):
        coeff = num[k + len(den) - 1]
        quot[k] = coeff
        if coeff:
            for j, c in enumerate(den):
                num[k + j] -= coeff * c
    assert all(c == 0 for c in num[: len(den) - 1])
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _eval_by_coefficients(n: int, a: QuadInt) -> QuadInt:
    acc = a.field.zero()
    for c in reversed(cyclotomic_polynomial(n)):
        acc = acc * a + c
    return acc


def cyclotomic_eval(n: int, a: QuadInt) -> QuadInt:
    """Phi_n(a) via the Mobius product over a^d - 1 with exact division."""
    if n == 1:
        return a - 1
    numerator = a.field.one()
    denominator = a.field.one()
    for d in divisors(n):
        sign = mobius(n // d)
        if sign == 0:
            continue
        factor = a**d - 1
        if factor.is_zero:
            # base is a root of unity; the product form degenerates
            return _eval_by_coefficients(n, a)
        if sign == 1:
            numerator = numerator * factor
        else:
            denominator = denominator * factor
    return numerator.exact_div(denominator)


def power_minus_one(a: QuadInt, n: int) -> QuadInt:
    return a**n - 1


@dataclass(frozen=True)
class LevelData:
    """One cyclotomic level: the value Phi_n(a) and its ideal factorization."""

    n: int
    value: QuadInt
    ideal: IdealFactorization

    @property
    def complete(self) -> bool:
        return self.ideal.complete


class CycloFactorCache:
    """Factors Phi_n(a) once per level and assembles (a^n - 1) from divisors."""

    def __init__(self, a: QuadInt, budget: FactorBudget | None = None):
        if a.is_zero or a.is_unit():
            raise ValueError("base must have magnitude above 1 for level sweeps")
        self.a = a
        self.field = a.field
        self.budget = budget or FactorBudget()
        self._levels: dict[int, LevelData] = {}

    def level(self, n: int) -> LevelData:
        if n not in self._levels:
            value = cyclotomic_eval(n, self.a)
            self._levels[n] = LevelData(n, value, factor_principal(value, self.budget))
        return self._levels[n]

    def power_ideal(self, n: int) -> IdealFactorization:
        """Factorization of (a^n - 1) merged from all divisor levels."""
        out = IdealFactorization(self.field)
        for d in divisors(n):
            out = out.mul(self.level(d).ideal)
        return out


@dataclass(frozen=True)
class Decomposition:
    """Squarefree/powerful split of (a^n - 1) and its cyclotomic-level slice.

    squarefree carries each certified prime of exponent exactly 1, powerful
    the full prime powers of exponent >= 2.  level_squarefree and
    level_powerful are the gcds of (Phi_n(a)) against those two parts.  When
    complete is false some primes are still hidden in cofactors and only the
    certified portion is reported.
    """

    a: QuadInt
    n: int
    power_value: QuadInt
    power_ideal: IdealFactorization
    level_value: QuadInt
    level_ideal: IdealFactorization
    squarefree: IdealFactorization
    powerful: IdealFactorization
    level_squarefree: IdealFactorization
    level_powerful: IdealFactorization

    @property
    def complete(self) -> bool:
        return self.power_ideal.complete

    def norm_summary(self) -> dict:
        return {
            "n": self.n,
            "norm_power_minus_one": abs(self.power_value.norm()),
            "norm_level_value": abs(self.level_value.norm()),
            "norm_squarefree": self.squarefree.norm(),
            "norm_powerful": self.powerful.norm(),
            "norm_level_squarefree": self.level_squarefree.norm(),
            "norm_level_powerful": self.level_powerful.norm(),
            "complete": self.complete,
        }


def decompose(a: QuadInt, n: int, cache: CycloFactorCache | None = None,
              budget: FactorBudget | None = None) -> Decomposition:
    """Split (a^n - 1) into squarefree and powerful parts, plus the level slice."""
    if cache is None:
        cache = CycloFactorCache(a, budget)
    elif cache.a != a:
        raise ValueError("cache was built for a different base")
    power_ideal = cache.power_ideal(n)
    level = cache.level(n)
    squarefree = power_ideal.squarefree_part()
    powerful = power_ideal.powerful_part()
    if power_ideal.complete and level.complete:
        level_squarefree = level.ideal.gcd(squarefree)
        level_powerful = level.ideal.gcd(powerful)
    else:
        # certified portions only; completeness flags tell the caller
        level_known = level.ideal.exponents
        level_squarefree = IdealFactorization(
            a.field,
            {P: min(e, squarefree.exponent(P)) for P, e in level_known.items() if squarefree.exponent(P)},
        )
        level_powerful = IdealFactorization(
            a.field,
            {P: min(e, powerful.exponent(P)) for P, e in level_known.items() if powerful.exponent(P)},
        )
    return Decomposition(
        a=a,
        n=n,
        power_value=power_minus_one(a, n),
        power_ideal=power_ideal,
        level_value=level.value,
        level_ideal=level.ideal,
        squarefree=squarefree,
        powerful=powerful,
        level_squarefree=level_squarefree,
        level_powerful=level_powerful,
    )
