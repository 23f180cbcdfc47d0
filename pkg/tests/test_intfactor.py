"""Effort-bounded factorization against naive trial-division oracles."""

import pytest
from hypothesis import given, strategies as st

from wieferich import FactorBudget, certify_prime, factorize, is_probable_prime
from wieferich.intfactor import (
    DETERMINISTIC_MR_BOUND,
    padic_valuation,
    perfect_power,
    primes_up_to,
)


def naive_factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def naive_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n**0.5) + 1))


class TestPrimality:
    def test_small_agreement(self):
        for n in range(2, 5000):
            assert is_probable_prime(n) == naive_prime(n), n

    def test_sieve_matches_naive(self):
        assert list(primes_up_to(200)) == [p for p in range(2, 201) if naive_prime(p)]

    def test_known_composites_and_primes(self):
        assert is_probable_prime(2**61 - 1)
        assert is_probable_prime(2**89 - 1)
        assert not is_probable_prime(561)          # Carmichael
        assert not is_probable_prime(41041)        # Carmichael
        assert not is_probable_prime(3215031751)   # strong pseudoprime to 2,3,5,7
        assert not is_probable_prime(1)
        assert not is_probable_prime(0)

    def test_certify_below_deterministic_bound(self):
        assert certify_prime(10**9 + 7) is True
        assert certify_prime(10**9 + 9) is True
        assert certify_prime(561) is False
        assert DETERMINISTIC_MR_BOUND > 10**18

    def test_certify_above_deterministic_bound(self):
        # 25-digit prime needs an explicit certificate, not just the fixed bases
        p = 2**89 - 1
        assert p > DETERMINISTIC_MR_BOUND
        assert certify_prime(p) is True
        assert certify_prime(p * (2**61 - 1)) is False


class TestHelpers:
    @given(st.integers(min_value=1, max_value=10**6), st.sampled_from([2, 3, 5, 7, 11]))
    def test_padic_valuation(self, n, p):
        v = padic_valuation(n, p)
        assert n % p**v == 0
        assert n % p ** (v + 1) != 0

    def test_perfect_power(self):
        assert perfect_power(1024) == (2, 10)
        assert perfect_power(36) == (6, 2)
        assert perfect_power(27) == (3, 3)
        assert perfect_power(2**6 * 3**6) == (6, 6)
        # non-powers report themselves with exponent 1
        assert perfect_power(12) == (12, 1)
        assert perfect_power(2) == (2, 1)


class TestFactorize:
    @given(st.integers(min_value=2, max_value=10**6))
    def test_matches_naive(self, n):
        result = factorize(n)
        assert result.complete
        assert result.cofactor == 1
        assert result.factors == naive_factor(n)
        assert result.reassembled() == n

    def test_large_semiprime(self):
        p, q = 1000003, 1000033
        result = factorize(p * q)
        assert result.complete
        assert result.factors == {p: 1, q: 1}

    def test_rho_beyond_trial_range(self):
        # both factors exceed the trial bound, so rho has to do the work
        p, q = 15485867, 32452843
        result = factorize(p * q, FactorBudget(trial_limit=10**4, rho_iterations=10**6))
        assert result.complete
        assert result.factors == {p: 1, q: 1}

    def test_budget_exhaustion_flags_cofactor(self):
        p, q = 2**61 - 1, 2**89 - 1
        result = factorize(p * q, FactorBudget(trial_limit=10**3, rho_iterations=50))
        assert not result.complete
        assert result.cofactor > 1
        assert result.reassembled() == p * q
        for prime in result.factors:
            assert certify_prime(prime, FactorBudget(trial_limit=10**3, rho_iterations=50)) is True

    def test_perfect_power_peeling(self):
        n = (15485867) ** 3
        result = factorize(n, FactorBudget(trial_limit=10**4, rho_iterations=10**6))
        assert result.complete
        assert result.factors == {15485867: 3}

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            factorize(0)
        with pytest.raises(ValueError):
            factorize(-6)

    def test_factor_one_is_trivial(self):
        result = factorize(1)
        assert result.complete and result.factors == {} and result.reassembled() == 1
