"""Closed-form pattern counts and exact polynomial machinery.

Every evaluator here returns exact integers or rationals; where a formula is
supposed to count something, integrality is enforced and a fractional result
raises StructuralFailureError rather than being rounded.  The verification
harness (``fploops.verify``) compares these formulas against enumerated and
eigenvector data; nothing in this module looks at data.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import StructuralFailureError
from .fplgrid import a_total
from .linkpat import LinkPattern, pattern_of_dyck


@lru_cache(maxsize=None)
def superfactorial(m: int) -> int:
    """Product 1! 2! ... m!; both m = -1 and m = 0 give the empty product 1."""
    if m < -1:
        raise ValueError(f"superfactorial undefined for m={m}")
    if m <= 0:
        return 1
    return superfactorial(m - 1) * factorial(m)


def _as_count(value: Fraction, label: str) -> int:
    if value.denominator != 1 or value <= 0:
        raise StructuralFailureError(f"{label} should be a positive integer, got {value}")
    return int(value)


def nested_bundles_count(p: int, q: int, r: int) -> int:
    """Configurations whose pattern is three consecutive nested bundles (p, q, r).

    Superfactorial ratio form; agrees with the box-counting product
    (``boxed_plane_partitions``) and the binomial-ratio form.  Always a
    positive integer, symmetric in p, q, r.
    """
    if min(p, q, r) < 0:
        raise ValueError("bundle sizes must be nonnegative")
    value = Fraction(
        superfactorial(p + q + r - 1)
        * superfactorial(p - 1)
        * superfactorial(q - 1)
        * superfactorial(r - 1),
        superfactorial(p + q - 1) * superfactorial(q + r - 1) * superfactorial(r + p - 1),
    )
    return _as_count(value, f"three-bundle count ({p},{q},{r})")


def nested_bundles_count_binomial(p: int, q: int, r: int) -> Fraction:
    """Binomial-ratio form of the three-bundle count (less symmetric, same value)."""
    if min(p, q, r) < 0:
        raise ValueError("bundle sizes must be nonnegative")
    n = p + q + r
    num = den = 1
    for j in range(1, q + 1):
        num *= comb(n - j, p)
        den *= comb(p + q - j, p)
    return Fraction(num, den)


def boxed_plane_partitions(p: int, q: int, r: int) -> int:
    """Plane partitions inside a p x q x r box: product of (i+j+k-1)/(i+j+k-2)."""
    if min(p, q, r) < 0:
        raise ValueError("box sides must be nonnegative")
    value = Fraction(1)
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            for k in range(1, r + 1):
                value *= Fraction(i + j + k - 1, i + j + k - 2)
    return _as_count(value, f"box count ({p},{q},{r})")


def nested_bundles_pattern(p: int, q: int, r: int) -> LinkPattern:
    """The pattern with three consecutive nested bundles of p, q, r arches."""
    if p + q + r < 1:
        raise ValueError("need at least one arch")
    return pattern_of_dyck("U" * p + "D" * p + "U" * q + "D" * q + "U" * r + "D" * r)


def bundle_with_box_count(p: int, q: int, r: int) -> int:
    """Closed form for the family pairing a q x r bundle cluster with one extra box.

    Valid for p >= 1, q, r >= 0; manifestly symmetric under q <-> r.  The
    matching pattern family is identified empirically by the harness.
    """
    if p < 1 or q < 0 or r < 0:
        raise ValueError("need p >= 1 and q, r >= 0")
    prefactor = Fraction(
        superfactorial(q - 1) * superfactorial(r - 1), superfactorial(q + r - 1)
    ) * Fraction(
        superfactorial(p) * superfactorial(p + q + r),
        superfactorial(p + q + 1) * superfactorial(p + r + 1),
    )
    bracket = (
        p**3
        + 2 * p**2 * (q + r + 1)
        + p * (q**2 + q * r + r**2 + 3 * (q + r) + 1)
        + q * (q + 1)
        + r * (r + 1)
    )
    value = prefactor * factorial(p + q) * factorial(p + r) * bracket
    return _as_count(value, f"bundle-plus-box count ({p},{q},{r})")


def bundle_with_two_boxes_count(p: int, q: int, r: int) -> int:
    """Closed form for the family pairing a q x r bundle cluster with two extra boxes.

    Valid for p >= 1, q, r >= 0; not symmetric in q and r.
    """
    if p < 1 or q < 0 or r < 0:
        raise ValueError("need p >= 1 and q, r >= 0")
    prefactor = Fraction(
        superfactorial(q - 1) * superfactorial(r - 1), 2 * superfactorial(q + r - 1)
    ) * Fraction(
        superfactorial(p + 1) * superfactorial(p + q + r + 1),
        superfactorial(p + q + 3) * superfactorial(p + r + 3),
    )
    bracket = (
        p**5
        + p**4 * (7 + 4 * q + 4 * r)
        + p**3 * (17 + 22 * q + 6 * q**2 + 24 * r + 10 * q * r + 6 * r**2)
        + p**2
        * (
            17
            + 40 * q
            + 24 * q**2
            + 4 * q**3
            + 46 * r
            + 42 * q * r
            + 8 * q**2 * r
            + 30 * r**2
            + 8 * q * r**2
            + 4 * r**3
        )
        + p
        * (
            6
            + 28 * q
            + 29 * q**2
            + 10 * q**3
            + q**4
            + 32 * r
            + 49 * q * r
            + 17 * q**2 * r
            + 2 * q**3 * r
            + 41 * r**2
            + 23 * q * r**2
            + 3 * q**2 * r**2
            + 16 * r**3
            + 2 * q * r**3
            + r**4
        )
        + (
            6 * q
            + 11 * q**2
            + 6 * q**3
            + q**4
            + 6 * r
            + 13 * q * r
            + 3 * q**2 * r
            + 15 * r**2
            + 15 * q * r**2
            + 3 * q**2 * r**2
            + 12 * r**3
            + 2 * q * r**3
            + 3 * r**4
        )
    )
    value = (
        prefactor
        * factorial(p + q + 2)
        * factorial(p + q + 1)
        * factorial(p + r + 3)
        * factorial(p + r)
        * (p + 2)
        * bracket
    )
    return _as_count(value, f"bundle-plus-two-boxes count ({p},{q},{r})")


# --- closed forms in n -----------------------------------------------------------


def inclusive_nested_formula(n: int, p: int) -> Fraction:
    """Closed form for the inclusive count over patterns with p nested arches fixed.

    p = 0 gives the plain total.  Implemented for p <= 3 (the known cases);
    each is an even rational function of n times the total count.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = a_total(n)
    if p == 0:
        return Fraction(total)
    if p == 1:
        return Fraction(3, 2) * Fraction(n**2 + 1, (2 * n - 1) * (2 * n + 1)) * total
    if p == 2:
        num = 59 * n**6 + 299 * n**4 + 866 * n**2 + 576
        den = (2 * n - 3) * (2 * n - 1) ** 2 * (2 * n + 1) ** 2 * (2 * n + 3)
        return Fraction(1, 16) * Fraction(num, den) * total
    if p == 3:
        num = (
            2579 * n**12
            + 39364 * n**10
            + 374412 * n**8
            + 2174092 * n**6
            + 6601109 * n**4
            + 11674044 * n**2
            + 6350400
        )
        den = (
            (2 * n - 5)
            * (2 * n - 3) ** 2
            * (2 * n - 1) ** 3
            * (2 * n + 1) ** 3
            * (2 * n + 3) ** 2
            * (2 * n + 5)
        )
        return Fraction(3, 512) * Fraction(num, den) * total
    raise ValueError(f"no closed form implemented for p={p} (only p <= 3)")


def relation_sum_c(n: int) -> Fraction:
    """The first two-pattern-sum closed form (valid for n >= 3)."""
    num = 97 * n**6 + 82 * n**4 - 107 * n**2 - 792
    den = 8 * (2 * n - 3) * (2 * n - 1) ** 2 * (2 * n + 1) ** 2 * (2 * n + 3)
    return Fraction(num, den) * a_total(n)


def relation_sum_d(n: int) -> Fraction:
    """The second two-pattern-sum closed form (valid for n >= 3)."""
    num = (
        5977 * n**12
        + 16622 * n**10
        + 54681 * n**8
        - 216784 * n**6
        - 2071808 * n**4
        - 337488 * n**2
        + 3456000
    )
    den = (
        (2 * n - 5)
        * (2 * n - 3) ** 2
        * (2 * n - 1) ** 3
        * (2 * n + 1) ** 3
        * (2 * n + 3) ** 2
        * (2 * n + 5)
    )
    return Fraction(9, 256) * Fraction(num, den) * a_total(n)


def combined_corollary(n: int) -> Fraction:
    """The boxed recombination of the inclusive and two-pattern-sum formulas."""
    num = (n**2 - 4) * (n**4 + 3 * n**2 + 4)
    den = (2 * n - 3) * (2 * n - 1) ** 2 * (2 * n + 1) ** 2 * (2 * n + 3)
    return Fraction(3**3 * 5, 2**4) * Fraction(num, den) * a_total(n)


_P12_NUMERATORS = {
    "first": (12631, 101096, 586518, 1237988, -5800349, -19336284, -23976000),
    "second": (23231, -1364, -258432, -2538692, -6630499, 17311356, 44712000),
}


def degree_twelve_ratio(n: int, which: str) -> Fraction:
    """The two degree-12 even-polynomial ratios sharing one denominator."""
    coeffs = _P12_NUMERATORS[which]
    poly = sum(c * n ** (12 - 2 * k) for k, c in enumerate(coeffs))
    den = (4 * n**2 - 25) * (4 * n**2 - 9) ** 2 * (4 * n**2 - 1) ** 3
    return Fraction(3, 512) * Fraction(poly, den) * a_total(n)


def corollary_and_p12(n: int) -> tuple[Fraction, Fraction, Fraction]:
    """The boxed corollary and both degree-12 ratios at size n."""
    return (
        combined_corollary(n),
        degree_twelve_ratio(n, "first"),
        degree_twelve_ratio(n, "second"),
    )


# --- exact polynomials ------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class RationalPolynomial:
    """A polynomial with exact rational coefficients, ascending degree order."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def from_values(cls, values) -> "RationalPolynomial":
        return cls._trim(tuple(Fraction(v) for v in values))

    @staticmethod
    def _trim(coeffs: tuple[Fraction, ...]) -> "RationalPolynomial":
        last = 0
        for k, c in enumerate(coeffs):
            if c:
                last = k + 1
        return RationalPolynomial(coeffs[:last])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        la, lb = len(self.coeffs), len(other.coeffs)
        return self._trim(
            tuple(
                (self.coeffs[k] if k < la else 0) + (other.coeffs[k] if k < lb else 0)
                for k in range(max(la, lb))
            )
        )

    def __mul__(self, other) -> "RationalPolynomial":
        if isinstance(other, (int, Fraction)):
            return self._trim(tuple(c * other for c in self.coeffs))
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return self._trim(tuple(out))

    __rmul__ = __mul__

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (other * -1)

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def constant(cls, v) -> "RationalPolynomial":
        return cls._trim((Fraction(v),))

    @classmethod
    def from_roots_and_scale(cls, roots, scale) -> "RationalPolynomial":
        poly = cls.constant(scale)
        for r in roots:
            poly = poly * cls((Fraction(-r), Fraction(1)))
        return poly

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            term = "1" if k and abs(c) == 1 else str(abs(c))
            if k:
                term = f"{term}*n" if k == 1 else f"{term}*n^{k}"
            parts.append(("- " if c < 0 else "+ " if parts else "") + term)
        return " ".join(parts) or "0"

    def scaled_integer_coeffs(self, factor: int) -> list[int]:
        """factor * coeffs as ints; raises ValueError if any stays fractional."""
        out = []
        for c in self.coeffs:
            v = c * factor
            if v.denominator != 1:
                raise ValueError(f"coefficient {c} not integral after scaling by {factor}")
            out.append(int(v))
        return out


def fit_polynomial(
    data: list[tuple[int, Fraction | int]],
    degree: int,
    known_leading: Fraction | None = None,
) -> RationalPolynomial:
    """Exact interpolating polynomial of the given degree through the data.

    Uses the first ``degree + 1`` points (divided differences, exact
    rationals); remaining points are the caller's held-out checks.  With
    ``known_leading`` the leading coefficient is constrained, so one data
    point fewer is consumed.
    """
    points = [(Fraction(x), Fraction(v)) for x, v in data]
    if len({x for x, _ in points}) != len(points):
        raise ValueError("data points must have distinct abscissae")
    need = degree + 1 if known_leading is None else degree
    if len(points) < need:
        raise ValueError(f"need at least {need} points for degree {degree}, got {len(points)}")
    lead_term = RationalPolynomial((Fraction(0),))
    if known_leading is not None:
        lead_term = RationalPolynomial(
            tuple(Fraction(0) for _ in range(degree)) + (Fraction(known_leading),)
        )
        points = [(x, v - known_leading * x**degree) for x, v in points[:need]]
        degree -= 1
    else:
        points = points[:need]
    # Newton divided differences, then expansion to the monomial basis.
    xs = [x for x, _ in points]
    table = [v for _, v in points]
    coeffs = [table[0]]
    for level in range(1, len(points)):
        table = [
            (table[k + 1] - table[k]) / (xs[k + level] - xs[k])
            for k in range(len(table) - 1)
        ]
        coeffs.append(table[0])
    poly = RationalPolynomial((Fraction(0),))
    basis = RationalPolynomial.constant(1)
    for k, c in enumerate(coeffs):
        poly = poly + basis * c
        basis = basis * RationalPolynomial((Fraction(-xs[k]), Fraction(1)))
    return poly + lead_term


# --- the extra closed-form polynomial counts --------------------------------------

_x = RationalPolynomial.x


def _poly(coeffs_desc: list[int]) -> RationalPolynomial:
    return RationalPolynomial.from_values(list(reversed(coeffs_desc)))


@lru_cache(maxsize=1)
def extra_pattern_polynomials() -> tuple[RationalPolynomial, ...]:
    """The six additional closed-form counts, as exact polynomials in n."""
    return (
        RationalPolynomial.from_roots_and_scale([2], Fraction(1, 6)) * _poly([2, -5, 9]),
        RationalPolynomial.from_roots_and_scale([1, 3], Fraction(1, 180))
        * _poly([4, -32, 155, -394, 540]),
        RationalPolynomial.from_roots_and_scale([1, 3, 4], Fraction(1, 720))
        * _poly([5, -38, 197, -522, 840]),
        RationalPolynomial.from_roots_and_scale([1, 4], Fraction(1, 20160))
        * _poly([45, -635, 4639, -21865, 68924, -136740, 146160]),
        RationalPolynomial.from_roots_and_scale(
            [1, 2, 3, 4], Fraction(1, factorial(4) * factorial(5))
        )
        * _poly([5, -46, 275, -802, 1440]),
        RationalPolynomial.from_roots_and_scale([4], Fraction(1, 2520))
        * _poly([10, -135, 853, -3378, 9343, -17403, 18270]),
    )


def extra_pattern_formula(k: int, n: int) -> Fraction:
    """Value of the k-th (1-based) extra closed-form count at size n."""
    if not 1 <= k <= 6:
        raise ValueError("k must be in 1..6")
    return extra_pattern_polynomials()[k - 1](n)
