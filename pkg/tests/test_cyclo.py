"""Cyclotomic evaluation, divisor lattice helpers, and totient densities.

The polynomial oracle builds each cyclotomic polynomial by the recursive
definition: divide x**n - 1 by the product of all lower-level cyclotomic
polynomials, with naive integer polynomial long division.
"""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from wieferich import (
    CycloFactorCache,
    FactorBudget,
    FieldSpec,
    cyclotomic_eval,
    cyclotomic_polynomial,
    decompose,
    divisors,
    euler_phi,
    high_totient_count,
    mobius,
    power_minus_one,
    totient_density_constant,
)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def poly_divide_exact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        coeff = num[shift + len(den) - 1]
        assert coeff % den[-1] == 0
        q = coeff // den[-1]
        out[shift] = q
        for j, dj in enumerate(den):
            num[shift + j] -= q * dj
    assert all(c == 0 for c in num)
    return out


def oracle_cyclotomic(n, _memo={}):
    if n in _memo:
        return _memo[n]
    num = [-1] + [0] * (n - 1) + [1]  # x**n - 1, constant first
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = poly_mul(den, oracle_cyclotomic(d))
    result = poly_divide_exact(num, den)
    _memo[n] = result
    return result


def naive_phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def naive_mobius(n):
    if n == 1:
        return 1
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


class TestDivisorLattice:
    @given(st.integers(1, 3000))
    def test_divisors(self, n):
        assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]

    @given(st.integers(1, 2000))
    def test_phi(self, n):
        assert euler_phi(n) == naive_phi(n)

    @given(st.integers(1, 2000))
    def test_mobius(self, n):
        assert mobius(n) == naive_mobius(n)

    @given(st.integers(1, 500))
    def test_phi_sum_identity(self, n):
        assert sum(euler_phi(d) for d in divisors(n)) == n


class TestCyclotomicPolynomials:
    @pytest.mark.parametrize("n", list(range(1, 31)) + [36, 48, 60, 100, 105, 120])
    def test_matches_recursive_oracle(self, n):
        assert list(cyclotomic_polynomial(n)) == oracle_cyclotomic(n)

    def test_degree_is_phi(self):
        for n in range(1, 80):
            assert len(cyclotomic_polynomial(n)) == euler_phi(n) + 1

    def test_105_has_minus_two(self):
        # the first index with a coefficient outside {-1, 0, 1}
        assert cyclotomic_polynomial(105)[7] == -2

    def test_small_table(self):
        assert list(cyclotomic_polynomial(1)) == [-1, 1]
        assert list(cyclotomic_polynomial(2)) == [1, 1]
        assert list(cyclotomic_polynomial(4)) == [1, 0, 1]
        assert list(cyclotomic_polynomial(6)) == [1, -1, 1]


class TestEvaluation:
    @pytest.mark.parametrize("n", range(1, 61))
    def test_rational_eval_matches_horner(self, n):
        field = FieldSpec.rational()
        for base in (2, 3, 10, -2):
            a = field.element(base)
            value = cyclotomic_eval(n, a)
            horner = 0
            for c in reversed(cyclotomic_polynomial(n)):
                horner = horner * base + c
            assert value.x == horner

    @pytest.mark.parametrize("n", range(1, 41))
    def test_quadratic_eval_matches_coeff_path(self, n, gauss_field, d2_field):
        for a in (gauss_field.element(2, 1), d2_field.element(1, 2)):
            value = cyclotomic_eval(n, a)
            horner = a.field.zero()
            for c in reversed(cyclotomic_polynomial(n)):
                horner = horner * a + a.field.element(c)
            assert value == horner

    @pytest.mark.parametrize("n", range(1, 61))
    def test_product_identity(self, n, gauss_field):
        for a in (gauss_field.element(2, 1), FieldSpec.rational().element(2)):
            prod = a.field.one()
            for d in divisors(n):
                prod = prod * cyclotomic_eval(d, a)
            assert prod == power_minus_one(a, n)

    def test_root_of_unity_base(self, d3_field):
        # omega is a primitive sixth root of unity: Phi_6(omega) = 0
        omega = d3_field.element(0, 1)
        assert cyclotomic_eval(6, omega).is_zero
        assert not cyclotomic_eval(4, omega).is_zero


class TestTotientDensity:
    def test_constant_values(self):
        assert totient_density_constant(1) == Fraction(1)
        assert totient_density_constant(2) == Fraction(1, 2)
        assert totient_density_constant(6) == Fraction(1, 3)
        assert totient_density_constant(30) == Fraction(4, 15)

    @given(st.integers(1, 200))
    def test_constant_is_phi_over_k(self, k):
        # gcd(k, p) = p for every prime p dividing k, so the product telescopes
        assert totient_density_constant(k) == Fraction(euler_phi(k), k)

    def test_small_count_by_hand(self):
        # thresholds: phi(n) > (2/3) n strictly; ties at n = 3, 9 excluded
        assert high_totient_count(10, 1) == 3

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_counts_match_naive(self, k):
        threshold = Fraction(2, 3) * totient_density_constant(k)
        for x in (10, 50, 137):
            expected = sum(
                1 for n in range(1, x + 1) if Fraction(naive_phi(n * k)) > threshold * n * k
            )
            assert high_totient_count(x, k) == expected

    def test_positive_density(self):
        for k in range(1, 11):
            assert high_totient_count(1000, k) > 0


class TestCacheAndDecompose:
    def test_cache_levels(self, base_2i, cache_2i):
        lv = cache_2i.level(12)
        assert lv.complete
        assert lv.value == cyclotomic_eval(12, base_2i)
        assert lv.ideal.norm() == lv.value.abs_norm()

    def test_power_ideal_merges(self, base_2i, cache_2i):
        merged = cache_2i.power_ideal(10)
        assert merged.complete
        assert merged.norm() == power_minus_one(base_2i, 10).abs_norm()

    def test_rejects_degenerate_bases(self, gauss_field):
        with pytest.raises(ValueError):
            CycloFactorCache(gauss_field.zero())
        with pytest.raises(ValueError):
            CycloFactorCache(gauss_field.element(0, 1))

    def test_decompose_example(self, base_2i, cache_2i):
        dec = decompose(base_2i, 2, cache=cache_2i)
        assert dec.complete
        assert [(P.label(), e) for P, e in dec.squarefree.items_sorted()] == [("(5,split,2)", 1)]
        assert [(P.label(), e) for P, e in dec.powerful.items_sorted()] == [("(2,ramified,1)", 2)]
        assert [(P.label(), e) for P, e in dec.level_squarefree.items_sorted()] == [
            ("(5,split,2)", 1)
        ]
        assert dec.norm_summary()["norm_level_squarefree"] == 5

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 8, 12, 15, 20])
    def test_split_reassembles(self, base_2i, cache_2i, n):
        dec = decompose(base_2i, n, cache=cache_2i)
        assert dec.complete
        total = power_minus_one(base_2i, n).abs_norm()
        assert dec.squarefree.norm() * dec.powerful.norm() == total
        assert all(e == 1 for _, e in dec.squarefree.items_sorted())
        assert all(e >= 2 for _, e in dec.powerful.items_sorted())
        level_total = cyclotomic_eval(n, base_2i).abs_norm()
        assert dec.level_squarefree.norm() * dec.level_powerful.norm() == level_total

    def test_incomplete_is_flagged(self, d2_field):
        outlier = d2_field.element(2, 1)
        cache = CycloFactorCache(outlier, FactorBudget(trial_limit=10**3, rho_iterations=10))
        dec = decompose(outlier, 37, cache=cache)
        assert not dec.complete
