"""Prime ideals of the supported rings: splitting, valuations, residue rings.

A prime ideal is recorded as (p, kind, t): the rational prime below it, how p
decomposes (split / inert / ramified, or the degenerate rational kind), and
for kinds with residue degree one the root t of the generator's minimal
polynomial mod p that pins down which prime above p is meant.  Valuations at
split primes use Newton lifting of t to exactly the p-adic precision the
element's norm demands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .intfactor import FactorBudget, factorize, is_probable_prime, padic_valuation
from .qfield import BASIS_SQRT, FieldSpec, QuadInt

KIND_SPLIT = "split"
KIND_INERT = "inert"
KIND_RAMIFIED = "ramified"
KIND_RATIONAL = "rational"

_KINDS = (KIND_RATIONAL, KIND_SPLIT, KIND_RAMIFIED, KIND_INERT)
_KIND_ORDER = {kind: rank for rank, kind in enumerate(_KINDS)}


class BudgetExhausted(RuntimeError):
    """A step needed a complete factorization the effort budget could not deliver."""


def legendre_symbol(a: int, p: int) -> int:
    """(a|p) for odd prime p: 1, -1, or 0."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_prime(n: int, p: int) -> int:
    """Tonelli-Shanks square root of a quadratic residue n modulo odd prime p."""
    n %= p
    if n == 0:
        return 0
    if legendre_symbol(n, p) != 1:
        raise ValueError(f"{n} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, probe = 0, t
        while probe != 1:
            probe = probe * probe % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


@dataclass(frozen=True)
class PrimeIdeal:
    """A maximal ideal above the rational prime p."""

    field: FieldSpec
    p: int
    kind: str
    t: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown prime kind {self.kind!r}")
        if (self.kind == KIND_RATIONAL) != self.field.is_rational:
            raise ValueError("rational kind is exactly the rational-mode case")
        if self.kind in (KIND_SPLIT, KIND_RAMIFIED):
            if self.t is None or not 0 <= self.t < self.p:
                raise ValueError(f"kind {self.kind} needs a root t in [0, p)")
        elif self.t is not None:
            raise ValueError(f"kind {self.kind} carries no root parameter")

    @property
    def norm(self) -> int:
        return self.p * self.p if self.kind == KIND_INERT else self.p

    @property
    def residue_degree(self) -> int:
        return 2 if self.kind == KIND_INERT else 1

    @property
    def ramification_index(self) -> int:
        return 2 if self.kind == KIND_RAMIFIED else 1

    def conjugate(self) -> PrimeIdeal:
        if self.kind != KIND_SPLIT:
            return self
        other = (self.field.omega_trace - self.t) % self.p
        return PrimeIdeal(self.field, self.p, KIND_SPLIT, other)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.p, _KIND_ORDER[self.kind], -1 if self.t is None else self.t)

    def label(self) -> str:
        if self.t is None:
            return f"({self.p},{self.kind})"
        return f"({self.p},{self.kind},{self.t})"

    def __str__(self) -> str:
        return self.label()


def primes_above(field: FieldSpec, p: int) -> tuple[PrimeIdeal, ...]:
    """The primes of the ring over the rational prime p, split pair sorted by t."""
    if p < 2 or not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    if field.is_rational:
        return (PrimeIdeal(field, p, KIND_RATIONAL),)
    disc = field.discriminant
    trace = field.omega_trace
    if disc % p == 0:
        if p == 2:
            root = 0 if field.d % 2 == 0 else 1
        else:
            root = trace * pow(2, -1, p) % p
        return (PrimeIdeal(field, p, KIND_RAMIFIED, root),)
    if p == 2:
        if disc % 8 == 1:
            # x^2 - x + N with N even: roots 0 and 1
            return (
                PrimeIdeal(field, 2, KIND_SPLIT, 0),
                PrimeIdeal(field, 2, KIND_SPLIT, 1),
            )
        return (PrimeIdeal(field, 2, KIND_INERT),)
    if legendre_symbol(disc, p) == 1:
        s = sqrt_mod_prime(disc, p)
        inv2 = pow(2, -1, p)
        roots = sorted(((trace + s) * inv2 % p, (trace - s) * inv2 % p))
        return tuple(PrimeIdeal(field, p, KIND_SPLIT, r) for r in roots)
    return (PrimeIdeal(field, p, KIND_INERT),)


def prime_above_of_kind(field: FieldSpec, p: int, kind: str, t: int | None = None) -> PrimeIdeal:
    """Look up the prime (p, kind, t), validating it against the actual splitting."""
    for candidate in primes_above(field, p):
        if candidate.kind == kind and (t is None or candidate.t == t):
            return candidate
    raise ValueError(f"no prime ({p},{kind},{t}) in {field}")


@lru_cache(maxsize=None)
def _lifted_root(field: FieldSpec, p: int, t: int, precision: int) -> int:
    """Newton-lift the simple root t of x^2 - trace*x + norm mod p to mod p**precision."""
    trace, nm = field.omega_trace, field.omega_norm
    root = t % p
    prec = 1
    while prec < precision:
        prec = min(2 * prec, precision)
        mod = p**prec
        fval = (root * root - trace * root + nm) % mod
        # derivative 2t - trace is a unit mod p exactly because the root is simple
        fder = (2 * root - trace) % mod
        root = (root - fval * pow(fder, -1, mod)) % mod
    return root


def lifted_root(P: PrimeIdeal, precision: int) -> int:
    if P.kind != KIND_SPLIT:
        raise ValueError("root lifting applies to split primes only")
    return _lifted_root(P.field, P.p, P.t, precision)


def element_valuation(P: PrimeIdeal, gamma: QuadInt) -> int:
    """The exponent of P in the principal ideal (gamma), gamma != 0."""
    if gamma.field != P.field:
        raise ValueError("element and prime live in different fields")
    if gamma.is_zero:
        raise ValueError("the zero element has infinite valuation")
    p = P.p
    if P.kind == KIND_RATIONAL:
        return padic_valuation(gamma.x, p)
    norm_val = gamma.norm()
    if norm_val % p:
        return 0
    full = padic_valuation(norm_val, p)
    if P.kind == KIND_INERT:
        # the norm of an inert prime contributes in squares
        assert full % 2 == 0
        return full // 2
    if P.kind == KIND_RAMIFIED:
        return full
    t_lift = lifted_root(P, full)
    residue = (gamma.x + gamma.y * t_lift) % p**full
    return full if residue == 0 else padic_valuation(residue, p)


def _residue_modulus(P: PrimeIdeal, m: int) -> tuple[str, int]:
    """How O/P^m is represented: ("int", modulus) or ("pair", modulus)."""
    if m < 1:
        raise ValueError("precision must be >= 1")
    if P.kind in (KIND_RATIONAL, KIND_SPLIT):
        return "int", P.p**m
    if P.kind == KIND_INERT:
        return "pair", P.p**m
    if m == 1:
        return "int", P.p
    if m % 2 == 0:
        # P**m is generated by the rational prime power p**(m/2)
        return "pair", P.p ** (m // 2)
    raise ValueError("odd precision above 1 at a ramified prime has no plain integer model")


def residue_identity(P: PrimeIdeal, m: int = 1):
    shape, _ = _residue_modulus(P, m)
    return 1 if shape == "int" else (1, 0)


def residue_reduce(P: PrimeIdeal, gamma: QuadInt, m: int = 1):
    """Canonical image of gamma in O/P^m (int, or coordinate pair)."""
    if gamma.field != P.field:
        raise ValueError("element and prime live in different fields")
    shape, mod = _residue_modulus(P, m)
    if shape == "pair":
        return (gamma.x % mod, gamma.y % mod)
    if P.kind == KIND_SPLIT:
        return (gamma.x + gamma.y * lifted_root(P, m)) % mod
    if P.kind == KIND_RAMIFIED:
        return (gamma.x + gamma.y * P.t) % mod
    return gamma.x % mod


def _pair_mul(field: FieldSpec, u: tuple[int, int], v: tuple[int, int], mod: int) -> tuple[int, int]:
    x1, y1 = u
    x2, y2 = v
    cross = x1 * y2 + y1 * x2
    yy = y1 * y2
    if field.basis_kind == BASIS_SQRT:
        return ((x1 * x2 - field.d * yy) % mod, cross % mod)
    return ((x1 * x2 - field.omega_norm * yy) % mod, (cross + yy) % mod)


def residue_pow(a: QuadInt, e: int, P: PrimeIdeal, m: int = 1):
    """a**e in O/P^m, in the canonical encoding of residue_reduce."""
    if e < 0:
        raise ValueError("exponent must be >= 0")
    shape, mod = _residue_modulus(P, m)
    if shape == "int":
        if P.kind == KIND_SPLIT:
            base = (a.x + a.y * lifted_root(P, m)) % mod
        elif P.kind == KIND_RAMIFIED:
            base = (a.x + a.y * P.t) % mod
        else:
            base = a.x % mod
        return pow(base, e, mod)
    result = (1 % mod, 0)
    base = (a.x % mod, a.y % mod)
    while e:
        if e & 1:
            result = _pair_mul(P.field, result, base, mod)
        e >>= 1
        if e:
            base = _pair_mul(P.field, base, base, mod)
    return result


def is_unit_mod(P: PrimeIdeal, a: QuadInt) -> bool:
    zero = 0 if _residue_modulus(P, 1)[0] == "int" else (0, 0)
    return residue_reduce(P, a, 1) != zero


def residue_order(P: PrimeIdeal, a: QuadInt, budget: FactorBudget | None = None) -> int:
    """Multiplicative order of a in (O/P)*; needs q - 1 fully factored."""
    if not is_unit_mod(P, a):
        raise ValueError(f"{a} is not a unit modulo {P.label()}")
    group_size = P.norm - 1
    if group_size == 0:
        return 1
    decomposition = factorize(group_size, budget)
    if not decomposition.complete:
        raise BudgetExhausted(f"cannot fully factor {group_size} to compute an order")
    order = group_size
    identity = residue_identity(P, 1)
    for ell in decomposition.factors:
        while order % ell == 0 and residue_pow(a, order // ell, P, 1) == identity:
            order //= ell
    return order


class IdealFactorization:
    """A nonzero integral ideal as known prime exponents plus an unfactored tail.

    `cofactor` is the portion of the norm that the budget could not resolve
    into primes; everything in `exponents` is certified.  Products of these
    objects multiply exponents and cofactors independently.
    """

    __slots__ = ("field", "exponents", "cofactor")

    def __init__(self, field: FieldSpec, exponents: dict[PrimeIdeal, int] | None = None, cofactor: int = 1):
        self.field = field
        self.exponents = {P: e for P, e in (exponents or {}).items() if e}
        self.cofactor = int(cofactor)
        if any(e < 0 for e in self.exponents.values()) or self.cofactor < 1:
            raise ValueError("ideal exponents and cofactor must be nonnegative")

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def items_sorted(self) -> list[tuple[PrimeIdeal, int]]:
        return sorted(self.exponents.items(), key=lambda item: item[0].sort_key())

    def exponent(self, P: PrimeIdeal) -> int:
        return self.exponents.get(P, 0)

    def norm(self) -> int:
        out = self.cofactor
        for P, e in self.exponents.items():
            out *= P.norm**e
        return out

    def norm_radical(self) -> int:
        """Norm of the radical of the known part (cofactor excluded)."""
        out = 1
        for P in self.exponents:
            out *= P.norm
        return out

    def is_trivial(self) -> bool:
        return not self.exponents and self.cofactor == 1

    def mul(self, other: IdealFactorization) -> IdealFactorization:
        if other.field != self.field:
            raise ValueError("cannot multiply ideals of different fields")
        merged = dict(self.exponents)
        for P, e in other.exponents.items():
            merged[P] = merged.get(P, 0) + e
        return IdealFactorization(self.field, merged, self.cofactor * other.cofactor)

    def gcd(self, other: IdealFactorization) -> IdealFactorization:
        if other.field != self.field:
            raise ValueError("cannot intersect ideals of different fields")
        if not (self.complete and other.complete):
            raise BudgetExhausted("gcd of partially factored ideals is not determined")
        shared = {
            P: min(e, other.exponents[P])
            for P, e in self.exponents.items()
            if P in other.exponents
        }
        return IdealFactorization(self.field, shared)

    def is_coprime_to(self, other: IdealFactorization) -> bool:
        return self.gcd(other).is_trivial()

    def restrict(self, keep) -> IdealFactorization:
        """Sub-ideal of the known part keeping primes with keep(P, e) true."""
        return IdealFactorization(
            self.field, {P: e for P, e in self.exponents.items() if keep(P, e)}
        )

    def squarefree_part(self) -> IdealFactorization:
        return self.restrict(lambda P, e: e == 1)

    def powerful_part(self) -> IdealFactorization:
        return self.restrict(lambda P, e: e >= 2)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IdealFactorization)
            and self.field == other.field
            and self.exponents == other.exponents
            and self.cofactor == other.cofactor
        )

    def __repr__(self) -> str:
        body = " * ".join(
            f"{P.label()}^{e}" if e > 1 else P.label() for P, e in self.items_sorted()
        )
        if self.cofactor != 1:
            body = f"{body} * <unfactored {self.cofactor}>" if body else f"<unfactored {self.cofactor}>"
        return f"IdealFactorization({body or '(1)'})"


def factor_principal(gamma: QuadInt, budget: FactorBudget | None = None) -> IdealFactorization:
    """Factor the principal ideal (gamma) within the effort budget."""
    if gamma.is_zero:
        raise ValueError("cannot factor the zero ideal")
    field = gamma.field
    nm = gamma.abs_norm()
    if nm == 1:
        return IdealFactorization(field)
    decomposition = factorize(nm, budget)
    exponents: dict[PrimeIdeal, int] = {}
    for p in sorted(decomposition.factors):
        total = decomposition.factors[p]
        above = primes_above(field, p)
        if len(above) == 2:
            first = element_valuation(above[0], gamma)
            if first:
                exponents[above[0]] = first
            if total - first:
                exponents[above[1]] = total - first
        else:
            P = above[0]
            exponents[P] = element_valuation(P, gamma)
    return IdealFactorization(field, exponents, decomposition.cofactor)
