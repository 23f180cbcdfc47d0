"""Field construction, quadratic integer arithmetic, and base classification.

The multiplication and norm oracles below work in doubled coordinates
u + v*sqrt(-d) with u, v integers or half-integers (2u, 2v stored), a
representation independent of the omega basis used by the package.
"""

import pytest
from hypothesis import given, strategies as st

from wieferich import BaseClass, FieldSpec, InexactDivisionError, QuadInt, classify_base, is_squarefree
from wieferich.qfield import BASIS_HALF, BASIS_SQRT

FIELD_DS = [1, 2, 3, 5, 6, 7, 10, 11, 13, 15]


def doubled(a: QuadInt) -> tuple[int, int, int]:
    """(2u, 2v, d) with a = u + v*sqrt(-d)."""
    F = a.field
    if F.is_rational:
        return 2 * a.x, 0, 0
    if F.basis_kind == BASIS_SQRT:
        return 2 * a.x, 2 * a.y, F.d
    return 2 * a.x + a.y, a.y, F.d


def oracle_mul(a: QuadInt, b: QuadInt) -> tuple[int, int]:
    u1, v1, d = doubled(a)
    u2, v2, _ = doubled(b)
    return u1 * u2 - d * v1 * v2, u1 * v2 + v1 * u2  # 4*(real), 4*(coeff of sqrt(-d))


def oracle_norm(a: QuadInt) -> int:
    u, v, d = doubled(a)
    assert (u * u + d * v * v) % 4 == 0
    return (u * u + d * v * v) // 4


small_ints = st.integers(min_value=-50, max_value=50)


class TestFieldSpec:
    def test_basis_kinds(self):
        assert FieldSpec.from_d(1).basis_kind == BASIS_SQRT
        assert FieldSpec.from_d(2).basis_kind == BASIS_SQRT
        assert FieldSpec.from_d(3).basis_kind == BASIS_HALF
        assert FieldSpec.from_d(7).basis_kind == BASIS_HALF
        assert FieldSpec.from_d(11).basis_kind == BASIS_HALF

    def test_discriminants(self):
        assert FieldSpec.from_d(1).discriminant == -4
        assert FieldSpec.from_d(2).discriminant == -8
        assert FieldSpec.from_d(3).discriminant == -3
        assert FieldSpec.from_d(7).discriminant == -7
        assert FieldSpec.from_d(5).discriminant == -20

    def test_omega_trace_and_norm(self):
        F1 = FieldSpec.from_d(1)
        assert (F1.omega_trace, F1.omega_norm) == (0, 1)
        F7 = FieldSpec.from_d(7)
        assert (F7.omega_trace, F7.omega_norm) == (1, 2)

    def test_rational_mode(self):
        F = FieldSpec.rational()
        assert F.is_rational
        assert F.degree == 1
        assert FieldSpec.from_d(0) == F
        assert str(F) == "Q"

    def test_rejects_bad_d(self):
        for bad in (4, 8, 9, 12, -1, -3):
            with pytest.raises(ValueError):
                FieldSpec.imaginary_quadratic(bad)

    def test_parse_element(self):
        F = FieldSpec.from_d(1)
        assert F.parse_element("2,1") == F.element(2, 1)
        assert F.parse_element("-3") == F.element(-3)
        assert F.parse_element(" 4 , -5 ") == F.element(4, -5)
        with pytest.raises(ValueError):
            F.parse_element("1,2,3")
        with pytest.raises(ValueError):
            F.parse_element("x")
        with pytest.raises(ValueError):
            FieldSpec.rational().parse_element("1,2")

    def test_is_squarefree(self):
        assert [n for n in range(1, 20) if is_squarefree(n)] == [
            1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19,
        ]


class TestArithmetic:
    @given(small_ints, small_ints, small_ints, small_ints, st.sampled_from(FIELD_DS))
    def test_mul_matches_doubled_oracle(self, x1, y1, x2, y2, d):
        F = FieldSpec.from_d(d)
        a, b = F.element(x1, y1), F.element(x2, y2)
        pu, pv, _ = doubled(a * b)
        # doubled coords of the product are half the product of doubled coords
        assert (2 * pu, 2 * pv) == oracle_mul(a, b)

    @given(small_ints, small_ints, st.sampled_from(FIELD_DS))
    def test_norm_matches_oracle(self, x, y, d):
        a = FieldSpec.from_d(d).element(x, y)
        assert a.norm() == oracle_norm(a)
        assert a.abs_norm() == abs(oracle_norm(a))

    @given(small_ints, small_ints, st.sampled_from(FIELD_DS))
    def test_conjugate_involution_and_norm(self, x, y, d):
        a = FieldSpec.from_d(d).element(x, y)
        c = a.conjugate()
        assert c.conjugate() == a
        assert (a * c).is_rational_int()
        assert (a * c).x == a.norm()

    @given(small_ints, small_ints, small_ints, small_ints, st.sampled_from(FIELD_DS))
    def test_norm_multiplicative(self, x1, y1, x2, y2, d):
        F = FieldSpec.from_d(d)
        a, b = F.element(x1, y1), F.element(x2, y2)
        assert (a * b).norm() == a.norm() * b.norm()

    @given(small_ints, small_ints, small_ints, small_ints, st.sampled_from(FIELD_DS))
    def test_exact_div_roundtrip(self, x1, y1, x2, y2, d):
        F = FieldSpec.from_d(d)
        a, b = F.element(x1, y1), F.element(x2, y2)
        if b.is_zero:
            return
        assert (a * b).exact_div(b) == a

    def test_exact_div_rejects_inexact(self):
        F = FieldSpec.from_d(1)
        with pytest.raises(InexactDivisionError):
            F.element(1, 0).exact_div(F.element(1, 1))
        R = FieldSpec.rational()
        with pytest.raises(InexactDivisionError):
            R.element(7).exact_div(R.element(2))
        assert R.element(-8).exact_div(R.element(2)) == R.element(-4)

    def test_pow(self):
        F = FieldSpec.from_d(1)
        a = F.element(2, 1)
        assert a**0 == F.one()
        assert a**1 == a
        assert a**2 == F.element(3, 4)
        assert a**5 == a * a * a * a * a
        with pytest.raises(ValueError):
            a ** (-1)

    def test_signed_rational_norm(self):
        R = FieldSpec.rational()
        assert R.element(-7).norm() == -7
        assert R.element(-7).abs_norm() == 7

    def test_units(self):
        F1 = FieldSpec.from_d(1)
        assert F1.element(0, 1).is_unit()
        assert F1.element(-1, 0).is_unit()
        assert not F1.element(1, 1).is_unit()
        F3 = FieldSpec.from_d(3)
        # omega = (1 + sqrt(-3))/2 is a sixth root of unity
        assert F3.element(0, 1).is_unit()
        assert FieldSpec.rational().element(-1).is_unit()
        assert not FieldSpec.rational().element(2).is_unit()

    def test_str_forms(self):
        F1 = FieldSpec.from_d(1)
        assert str(F1.element(2, 1)) == "2+i"
        assert str(F1.element(0, -1)) == "-i"
        F2 = FieldSpec.from_d(2)
        assert str(F2.element(1, -1)) == "1-sqrt(-2)"
        assert str(FieldSpec.rational().element(-3)) == "-3"


class TestClassifyBase:
    def test_buckets(self, gauss_field):
        assert classify_base(gauss_field.zero()) is BaseClass.ZERO
        assert classify_base(gauss_field.element(0, 1)) is BaseClass.ROOT_OF_UNITY
        assert classify_base(gauss_field.element(1, 1)) is BaseClass.SMALL
        assert classify_base(gauss_field.element(2, 1)) is BaseClass.ELIGIBLE

    def test_half_basis_unit(self, d3_field):
        assert classify_base(d3_field.element(0, 1)) is BaseClass.ROOT_OF_UNITY
        assert classify_base(d3_field.element(1, -1)) is BaseClass.ROOT_OF_UNITY
        assert classify_base(d3_field.element(1, 1)) is BaseClass.SMALL
        assert classify_base(d3_field.element(0, 2)) is BaseClass.ELIGIBLE

    def test_rational(self, rational_field):
        assert classify_base(rational_field.element(0)) is BaseClass.ZERO
        assert classify_base(rational_field.element(-1)) is BaseClass.ROOT_OF_UNITY
        assert classify_base(rational_field.element(2)) is BaseClass.ELIGIBLE
        assert classify_base(rational_field.element(-2)) is BaseClass.ELIGIBLE

    @given(small_ints, small_ints, st.sampled_from(FIELD_DS))
    def test_eligible_iff_norm_at_least_four(self, x, y, d):
        a = FieldSpec.from_d(d).element(x, y)
        assert (classify_base(a) is BaseClass.ELIGIBLE) == (a.norm() >= 4)
