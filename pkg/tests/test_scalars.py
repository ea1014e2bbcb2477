from fractions import Fraction

import pytest
from hypothesis import given

from conftest import coefficients, gaussians
from starbundle import Coefficient, GaussianRational
from starbundle.scalars import GR_I, HBAR_OVER_I, I_OVER_HBAR


class TestGaussianRational:
    def test_exact_construction(self):
        x = GaussianRational(Fraction(2, 4), Fraction(-6, 4))
        assert x.re == Fraction(1, 2)
        assert x.im == Fraction(-3, 2)

    def test_one_plus_i_times_one_minus_i(self):
        assert GaussianRational(1, 1) * GaussianRational(1, -1) == GaussianRational(2)

    def test_i_squared(self):
        assert GR_I * GR_I == GaussianRational(-1)

    def test_division_roundtrip(self):
        x = GaussianRational(Fraction(3, 7), Fraction(-2, 5))
        y = GaussianRational(Fraction(1, 3), Fraction(4))
        assert (x / y) * y == x

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(1) / GaussianRational(0)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            GaussianRational(1).re = Fraction(2)

    @given(gaussians, gaussians)
    def test_commutative(self, x, y):
        assert x + y == y + x
        assert x * y == y * x

    @given(gaussians, gaussians, gaussians)
    def test_distributive(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    @given(gaussians)
    def test_conjugation_involution(self, x):
        assert x.conjugate().conjugate() == x


class TestCoefficient:
    def test_laurent_exponents_cancel(self):
        assert Coefficient.hbar(1) * Coefficient.hbar(-1) == Coefficient.one()

    def test_hbar_over_i_times_i_over_hbar(self):
        assert HBAR_OVER_I * I_OVER_HBAR == Coefficient.one()

    def test_product_adds_exponents(self):
        x = Coefficient.hbar(2, GaussianRational(0, 1))
        y = Coefficient.hbar(-3, 2)
        assert (x * y).items() == [(-1, GaussianRational(0, 2))]

    def test_zero_entries_dropped(self):
        c = Coefficient({0: GaussianRational(1), 1: GaussianRational(0)})
        assert c.items() == [(0, GaussianRational(1))]
        assert (c - c).items() == []
        assert not (c - c)

    def test_pow(self):
        assert HBAR_OVER_I ** 2 == Coefficient.hbar(2, -1)
        assert HBAR_OVER_I ** 0 == Coefficient.one()
        with pytest.raises(ValueError):
            HBAR_OVER_I ** -1

    def test_conjugate_keeps_hbar_real(self):
        assert HBAR_OVER_I.conjugate() == Coefficient.hbar(1, GaussianRational(0, 1))

    @given(coefficients, coefficients, coefficients)
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(coefficients)
    def test_additive_inverse(self, a):
        assert not (a + (-a))
