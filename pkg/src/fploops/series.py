"""Orbit counting: exact truncated power series and direct Burnside counting.

The number of dihedral orbits of link patterns on 2n points is computed two
independent ways: from the classical cycle-index generating function for
unrooted projective plane trees, and by literally averaging fixed-point counts
over the 4n symmetries.  Both are exact; agreement of the two is one of the
package's standing cross-checks.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from functools import lru_cache

from .errors import GuardLimitError, StructuralFailureError
from .linkpat import catalan, dihedral_group, enumerate_matches


@dataclasses.dataclass(frozen=True)
class RationalSeries:
    """A power series with exact rational coefficients, truncated at x^order."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"need {self.order + 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_ints(cls, order: int, values: dict[int, int] | None = None) -> "RationalSeries":
        c = [Fraction(0)] * (order + 1)
        for k, v in (values or {}).items():
            if k <= order:
                c[k] = Fraction(v)
        return cls(order, tuple(c))

    @classmethod
    def zero(cls, order: int) -> "RationalSeries":
        return cls.from_ints(order)

    @classmethod
    def one(cls, order: int) -> "RationalSeries":
        return cls.from_ints(order, {0: 1})

    @classmethod
    def x(cls, order: int) -> "RationalSeries":
        return cls.from_ints(order, {1: 1})

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def _check(self, other: "RationalSeries") -> None:
        if self.order != other.order:
            raise ValueError("truncation orders differ")

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        self._check(other)
        return RationalSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        self._check(other)
        return RationalSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other) -> "RationalSeries":
        if isinstance(other, (int, Fraction)):
            return RationalSeries(self.order, tuple(a * other for a in self.coeffs))
        self._check(other)
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return RationalSeries(self.order, tuple(out))

    __rmul__ = __mul__

    def pow(self, k: int) -> "RationalSeries":
        if k < 0:
            raise ValueError("negative power")
        result = RationalSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def substitute_power(self, k: int) -> "RationalSeries":
        """The series in x^k: coefficient of x^(k*i) becomes coeffs[i]."""
        if k < 1:
            raise ValueError("k must be >= 1")
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a and i * k <= self.order:
                out[i * k] = a
        return RationalSeries(self.order, tuple(out))

    def inverse(self) -> "RationalSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ValueError("series with zero constant term has no inverse")
        inv = [Fraction(0)] * (self.order + 1)
        inv[0] = 1 / c0
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += self.coeffs[j] * inv[k - j]
            inv[k] = -acc / c0
        return RationalSeries(self.order, tuple(inv))

    def shift_down(self) -> "RationalSeries":
        """Divide by x; requires a vanishing constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("constant term must vanish to divide by x")
        return RationalSeries(self.order, tuple(self.coeffs[1:]) + (Fraction(0),))

    def integer_coeffs(self) -> list[int]:
        """Coefficients as ints; raises StructuralFailureError on a fractional one."""
        out = []
        for k, a in enumerate(self.coeffs):
            if a.denominator != 1:
                raise StructuralFailureError(f"coefficient of x^{k} is not an integer: {a}")
            out.append(int(a))
        return out


def euler_phi(m: int) -> int:
    """Euler's totient: how many of 1..m are coprime to m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    result, rest, p = m, m, 2
    while p * p <= rest:
        if rest % p == 0:
            result -= result // p
            while rest % p == 0:
                rest //= p
        p += 1
    if rest > 1:
        result -= result // rest
    return result


def divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def catalan_series(order: int) -> RationalSeries:
    """c(x) = sum over n >= 0 of Catalan(n) x^(n+1)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return RationalSeries.from_ints(order, {k: catalan(k - 1) for k in range(1, order + 1)})


def a_series(order: int) -> RationalSeries:
    """a(x) = x / (1 - x - c(x^2))."""
    denom = (
        RationalSeries.one(order)
        - RationalSeries.x(order)
        - catalan_series(order).substitute_power(2)
    )
    return RationalSeries.x(order) * denom.inverse()


def modified_cycle_index(
    n: int, z: list[RationalSeries], y: RationalSeries
) -> RationalSeries:
    """Dihedral cycle index with the reflection slot tracked by its own variable.

    The rotation part is (1/2n) * sum over divisors i of n of phi(i) * z_i^(n/i);
    reflections across a point-pair axis contribute (1/2) y z_2^((n-1)/2) for odd
    n, and for even n the two reflection classes give
    (1/4) (y^2 z_2^((n-2)/2) + z_2^(n/2)).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(z) < n or (n >= 2 and len(z) < 2):
        raise ValueError("need substitution values z_1..z_n")
    order = y.order
    total = RationalSeries.zero(order)
    for i in divisors(n):
        total = total + euler_phi(i) * z[i - 1].pow(n // i)
    total = total * Fraction(1, 2 * n)
    if n % 2:
        refl = y * (z[1].pow((n - 1) // 2) if n > 1 else RationalSeries.one(order))
        total = total + Fraction(1, 2) * refl
    else:
        refl = y.pow(2) * z[1].pow((n - 2) // 2) + z[1].pow(n // 2)
        total = total + Fraction(1, 4) * refl
    return total


def _tree_index_terms(order: int) -> list[RationalSeries]:
    c = catalan_series(order)
    z = [c.substitute_power(i) for i in range(1, order + 1)]
    y = a_series(order)
    return [modified_cycle_index(n, z[:max(n, 2)], y) for n in range(1, order + 1)]


def unrooted_tree_series(order: int) -> RationalSeries:
    """Orbit-count generating function: coefficient of x^n is the orbit count O_n.

    Built from the cycle-index terms Z_n evaluated at z_i = c(x^i), y = a(x):
    summing x*Z_n over n, subtracting the rooted double-count correction
    Z_2 - c(x^2), and shifting one power of x down (the raw series indexes
    trees by vertex count, one more than the pattern size).  All coefficients
    must come out as nonnegative integers.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    work = order + 1  # one extra order absorbs the final shift
    terms = _tree_index_terms(work)
    x = RationalSeries.x(work)
    rooted = RationalSeries.zero(work)
    for t in terms:
        rooted = rooted + x * t
    c2 = catalan_series(work).substitute_power(2)
    raw = rooted - terms[1] + c2
    shifted = raw.shift_down()
    result = RationalSeries(order, shifted.coeffs[: order + 1])
    values = result.integer_coeffs()
    if values[0] != 0 or any(v < 0 for v in values[1:]):
        raise StructuralFailureError(f"orbit series has impossible coefficients: {values}")
    return result


def orbit_count_series(order: int) -> list[int]:
    """[O_1, ..., O_order] from the generating function."""
    return unrooted_tree_series(order).integer_coeffs()[1:]


DEFAULT_BURNSIDE_GUARD = 11


@lru_cache(maxsize=32)
def _o_n_direct_cached(n: int) -> int:
    group = [g.perm() for g in dihedral_group(n)]
    m2 = 2 * n
    total = 0
    for match in enumerate_matches(n):
        for perm in group:
            # match is fixed by perm iff the relabelled pattern coincides.
            if all(match[perm[i]] == perm[match[i]] for i in range(m2)):
                total += 1
    if total % (4 * n):
        raise StructuralFailureError(
            f"Burnside sum {total} is not divisible by the group order {4 * n}"
        )
    return total // (4 * n)


def o_n_direct(n: int, guard: int = DEFAULT_BURNSIDE_GUARD) -> int:
    """Orbit count by Burnside averaging over all 4n symmetries.

    Independent of both the orbit partition and the generating function; this
    is the cross-check oracle.  Refuses n beyond the guard (the scan is
    exhaustive over all Catalan(n) patterns); pass a larger guard to override.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > guard:
        raise GuardLimitError(
            f"o_n_direct(n={n}) exceeds the guard {guard}; pass guard={n} to run anyway"
        )
    return _o_n_direct_cached(n)
