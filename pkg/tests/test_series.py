from fractions import Fraction
from math import factorial, gcd

import pytest

from fploops import linkpat as lp
from fploops import series as se
from fploops.errors import GuardLimitError

CATALAN = [factorial(2 * n) // (factorial(n) * factorial(n + 1)) for n in range(0, 16)]

# Printed reference coefficients of the orbit-count series.
ORBIT_COUNTS = (1, 1, 2, 3, 6, 12, 27, 65, 175, 490, 1473, 4588)


class TestTotient:
    def test_examples(self):
        assert se.euler_phi(1) == 1
        assert se.euler_phi(6) == 2
        assert se.euler_phi(12) == 4

    def test_against_gcd_count(self):
        for m in range(1, 80):
            assert se.euler_phi(m) == sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)

    def test_domain(self):
        with pytest.raises(ValueError):
            se.euler_phi(0)


class TestSeriesArithmetic:
    def test_inverse(self):
        s = se.RationalSeries.from_ints(8, {0: 1, 1: -1, 3: 2})
        prod = s * s.inverse()
        assert prod.coeffs == se.RationalSeries.one(8).coeffs

    def test_inverse_requires_constant_term(self):
        with pytest.raises(ValueError):
            se.RationalSeries.x(5).inverse()

    def test_substitute_power(self):
        s = se.RationalSeries.from_ints(9, {1: 1, 2: 3})
        t = s.substitute_power(3)
        assert t[3] == 1 and t[6] == 3 and t[1] == 0

    def test_multiplication_truncates(self):
        x = se.RationalSeries.x(3)
        assert (x * x * x * x).coeffs == se.RationalSeries.zero(3).coeffs

    def test_shift_down(self):
        s = se.RationalSeries.from_ints(4, {1: 7, 3: 5})
        assert s.shift_down().coeffs[:3] == (Fraction(7), Fraction(0), Fraction(5))
        with pytest.raises(ValueError):
            se.RationalSeries.one(4).shift_down()

    def test_pow(self):
        s = se.RationalSeries.from_ints(6, {0: 1, 1: 1})
        assert s.pow(5)[2] == 10  # binomial(5, 2)


class TestCatalanSeries:
    def test_coefficients(self):
        c = se.catalan_series(12)
        assert c[0] == 0
        for k in range(1, 13):
            assert c[k] == CATALAN[k - 1]
        assert c[4] == 5 and c[11] == 16796

    def test_convolution_identity(self):
        # c(x)^2 coefficient extraction: Catalan(n+1) = sum Catalan(k) Catalan(n-k)
        c = se.catalan_series(14)
        square = c * c
        for n in range(0, 13):
            assert square[n + 2] == CATALAN[n + 1]


class TestWrapSeries:
    def test_first_coefficients_against_recurrence(self):
        # From a * (1 - x - c(x^2)) = x: a_1 = 1 and
        # a_k = a_(k-1) + sum over even j >= 2 of Catalan(j/2 - 1) a_(k-j).
        order = 12
        a = se.a_series(order)
        vals = [Fraction(0)] * (order + 1)
        vals[1] = Fraction(1)
        for k in range(2, order + 1):
            acc = vals[k - 1]
            for j in range(2, k, 2):
                acc += CATALAN[j // 2 - 1] * vals[k - j]
            vals[k] = acc
        assert a.coeffs == tuple(vals)

    def test_examples(self):
        a = se.a_series(5)
        assert (a[1], a[2], a[3]) == (1, 1, 2)


class TestCycleIndex:
    def test_n1_collapses(self):
        x = se.RationalSeries.x(6)
        z = se.modified_cycle_index(1, [x, x], x)
        assert z.coeffs == x.coeffs

    def test_n2_hand_expansion(self):
        # (1/4)(z1^2 + z2) + (1/4)(y^2 + z2) with z1 = x, z2 = x^2, y = x:
        # (1/4)(x^2 + x^2 + x^2 + x^2) = x^2
        order = 6
        x = se.RationalSeries.x(order)
        x2 = x.substitute_power(2)
        z = se.modified_cycle_index(2, [x, x2], x)
        assert z.coeffs == x2.coeffs

    def test_divisor_totients_at_6(self):
        assert [se.euler_phi(i) for i in se.divisors(6)] == [1, 1, 2, 2]


class TestOrbitSeries:
    def test_published_coefficients(self):
        assert tuple(se.orbit_count_series(12)) == ORBIT_COUNTS

    def test_margin_orders_are_integers(self):
        coeffs = se.unrooted_tree_series(16).integer_coeffs()
        assert coeffs[0] == 0
        assert all(v >= 0 for v in coeffs)


class TestBurnside:
    def test_values(self):
        assert [se.o_n_direct(n) for n in range(1, 10)] == list(ORBIT_COUNTS[:9])

    def test_matches_series_and_orbits(self):
        coeffs = se.orbit_count_series(8)
        for n in range(1, 9):
            assert se.o_n_direct(n) == coeffs[n - 1] == len(lp.orbits(n))

    def test_guard(self):
        with pytest.raises(GuardLimitError):
            se.o_n_direct(12)
        with pytest.raises(ValueError):
            se.o_n_direct(0)
