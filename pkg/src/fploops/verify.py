"""The harness comparing every closed form against enumerated and eigenvector data.

Each check produces a VerificationReport whose cases carry exact values on
both sides; a mismatch is reported, never raised, so a falsified formula shows
up as data.  Pattern families that the closed forms refer to only pictorially
are pinned down by an identification search: candidate Young-diagram pairs are
scanned and kept when the eigenvector data reproduces the formula across every
available size.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from functools import lru_cache

from math import factorial

from . import fplgrid, formulas, groundstate, series
from .errors import GuardLimitError
from .linkpat import (
    LinkPattern,
    YoungDiagram,
    orbit_index,
    orbits,
    pattern_from_young_pair,
)

#: Published reference values used as cross-check targets.
ORBIT_SERIES_REFERENCE = (1, 1, 2, 3, 6, 12, 27, 65, 175, 490, 1473, 4588)

REPORT_IDS = (
    "conj2",
    "conj3",
    "conj4",
    "conj5",
    "conj67",
    "conj8",
    "conj9",
    "appendix",
    "series",
)

_ALIASES = {
    "conj6": "conj67",
    "conj7": "conj67",
    "conj6-7": "conj67",
    "appendix-a": "appendix",
    "appendixa": "appendix",
}


@dataclasses.dataclass
class CaseResult:
    params: str
    formula_value: str
    data_value: str
    status: str  # "match" | "mismatch" | "info"

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclasses.dataclass
class VerificationReport:
    conjecture: str
    parameter_range: str
    cases: list[CaseResult] = dataclasses.field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "mismatch" for c in self.cases)

    def add(self, params: str, formula_value, data_value, note: str | None = None) -> None:
        status = "match" if formula_value == data_value else "mismatch"
        if note and status == "match":
            params = f"{params} [{note}]"
        self.cases.append(CaseResult(params, str(formula_value), str(data_value), status))

    def info(self, params: str, text: str) -> None:
        self.cases.append(CaseResult(params, text, text, "info"))

    def to_dict(self) -> dict:
        return {
            "conjecture": self.conjecture,
            "parameter_range": self.parameter_range,
            "cases": [c.to_dict() for c in self.cases],
            "pass": self.passed,
        }


# --- helpers ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _partitions(total: int) -> tuple[tuple[int, ...], ...]:
    if total == 0:
        return ((),)
    out = []

    def build(remaining: int, cap: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            build(remaining - part, part, prefix + (part,))

    build(total, total, ())
    return tuple(out)


def young_pairs(total_boxes: int) -> list[tuple[YoungDiagram, YoungDiagram]]:
    """All diagram pairs with the given total box count, up to the symmetries
    (Y, Y') ~ (Y', Y) ~ (transpose both), which produce dihedrally equivalent
    pattern families."""
    seen = set()
    out = []
    for b in range(total_boxes + 1):
        for rows in _partitions(b):
            for rows_p in _partitions(total_boxes - b):
                y, yp = YoungDiagram(rows), YoungDiagram(rows_p)
                key = min(
                    (y.rows, yp.rows),
                    (yp.rows, y.rows),
                    (y.transpose().rows, yp.transpose().rows),
                    (yp.transpose().rows, y.transpose().rows),
                )
                if key not in seen:
                    seen.add(key)
                    out.append((y, yp))
    return out


def _family_values(
    y: YoungDiagram, yp: YoungDiagram, n_values: list[int]
) -> dict[int, int]:
    """Eigenvector component of the (y, yp) pattern family at each size."""
    out = {}
    for n in n_values:
        p = pattern_from_young_pair(y, yp, n)
        out[n] = groundstate.component(n, p)
    return out


def identify_young_pair(
    values_by_n: dict[int, Fraction], max_boxes: int, exact_boxes: int | None = None
) -> list[tuple[YoungDiagram, YoungDiagram]]:
    """Diagram pairs whose pattern family reproduces the given values everywhere.

    Only sizes n >= the family's minimal size are compared; candidates with no
    comparable size at all are dropped.  This turns a picture-defined family
    into a reproducible, falsifiable identification.
    """
    sizes = sorted(values_by_n)
    found = []
    totals = [exact_boxes] if exact_boxes is not None else list(range(max_boxes + 1))
    for total in totals:
        for y, yp in young_pairs(total):
            lo = y.min_arches() + yp.min_arches()
            usable = [n for n in sizes if n >= lo]
            if not usable:
                continue
            fam = _family_values(y, yp, usable)
            if all(values_by_n[n] == fam[n] for n in usable):
                found.append((y, yp))
    return found


def _pair_label(y: YoungDiagram, yp: YoungDiagram) -> str:
    return f"Y=({y.to_text() or '-'}), Y'=({yp.to_text() or '-'})"


# --- individual checks -------------------------------------------------------------


def check_conj2(n_max: int) -> VerificationReport:
    """Largest component sits on the small-arch orbit and equals the size-(n-1) total."""
    report = VerificationReport("conj2", f"n = 2..{n_max}")
    for n in range(2, n_max + 1):
        state = groundstate.ground_vector(n)
        small = LinkPattern.from_text("()" * n)
        report.add(
            f"n={n}: max component", fplgrid.a_total(n - 1), state.max_component()
        )
        report.add(
            f"n={n}: small-arch component",
            fplgrid.a_total(n - 1),
            state.component_of(small),
        )
    return report


def check_conj3(n_max: int, form_range: int = 8) -> VerificationReport:
    """Three equal closed forms, and each equal to the eigenvector component."""
    report = VerificationReport(
        "conj3", f"forms: p,q,r <= {form_range}; data: p+q+r <= {n_max}"
    )
    bad = 0
    for p in range(form_range + 1):
        for q in range(form_range + 1):
            for r in range(form_range + 1):
                v1 = formulas.nested_bundles_count(p, q, r)
                v2 = formulas.boxed_plane_partitions(p, q, r)
                v3 = formulas.nested_bundles_count_binomial(p, q, r)
                if not (v1 == v2 == v3):
                    bad += 1
                    report.add(f"forms p={p},q={q},r={r}", v1, f"{v2} / {v3}")
                if v1 != formulas.nested_bundles_count(q, r, p):
                    bad += 1
                    report.add(
                        f"symmetry p={p},q={q},r={r}",
                        v1,
                        formulas.nested_bundles_count(q, r, p),
                    )
    report.add(
        f"superfactorial = box product = binomial ratio, {(form_range + 1) ** 3} triples",
        "all equal",
        "all equal" if bad == 0 else f"{bad} mismatches",
    )
    for n in range(1, n_max + 1):
        mism = []
        for p in range(n + 1):
            for q in range(n - p + 1):
                r = n - p - q
                value = formulas.nested_bundles_count(p, q, r)
                data = groundstate.component(n, formulas.nested_bundles_pattern(p, q, r))
                if value != data:
                    mism.append((p, q, r, value, data))
        if mism:
            for p, q, r, value, data in mism:
                report.add(f"data p={p},q={q},r={r}", value, data)
        else:
            count = (n + 1) * (n + 2) // 2
            report.add(f"data: all {count} triples with p+q+r={n}", "match", "match")
    return report


def _rect(rows: int, cols: int) -> YoungDiagram:
    return YoungDiagram((cols,) * rows if rows and cols else ())


def _check_identified_family(
    report: VerificationReport,
    formula,
    variants: dict[str, tuple[YoungDiagram, YoungDiagram]],
    n_of_pqr,
    n_max: int,
) -> None:
    """Compare a (p,q,r)-indexed closed form against candidate pattern families.

    Eliminated conventions are recorded as information (for an asymmetric
    formula only some orientation conventions can survive); the check fails
    only when no convention reproduces the formula everywhere.
    """
    survivors = dict(variants)
    tested = 0
    for p in range(1, n_max + 1):
        for q in range(n_max + 1):
            for r in range(n_max + 1):
                n = n_of_pqr(p, q, r)
                if n > n_max:
                    continue
                tested += 1
                value = formula(p, q, r)
                for name, (maker_y, maker_yp) in list(survivors.items()):
                    y, yp = maker_y(q, r), maker_yp(q, r)
                    if y.min_arches() + yp.min_arches() > n:
                        continue  # the family only starts at larger sizes
                    data = groundstate.component(n, pattern_from_young_pair(y, yp, n))
                    if data != value:
                        survivors.pop(name)
                        report.info(
                            name,
                            f"eliminated at p={p},q={q},r={r}: formula {value}, data {data}",
                        )
    report.add(
        f"identification over {tested} parameter points",
        "at least one matching family",
        "at least one matching family" if survivors else "no family matched",
        note=", ".join(sorted(survivors)) if survivors else None,
    )


def check_conj4(n_max: int) -> VerificationReport:
    """The bundle-plus-one-box closed form against its identified pattern family."""
    report = VerificationReport("conj4", f"p >= 1, q, r >= 0 with p+q+r+1 <= {n_max}")
    variants = {
        "rect(q,r) with one-box cluster": (
            lambda q, r: _rect(q, r),
            lambda q, r: YoungDiagram((1,)),
        ),
        "rect(r,q) with one-box cluster": (
            lambda q, r: _rect(r, q),
            lambda q, r: YoungDiagram((1,)),
        ),
    }
    _check_identified_family(
        report,
        formulas.bundle_with_box_count,
        variants,
        lambda p, q, r: p + q + r + 1,
        n_max,
    )
    return report


def check_conj5(n_max: int) -> VerificationReport:
    """The bundle-plus-two-boxes closed form against its identified pattern family."""
    report = VerificationReport("conj5", f"p >= 1, q, r >= 0 with p+q+r+2 <= {n_max}")
    variants = {
        "rect(q,r) with row-pair cluster": (
            lambda q, r: _rect(q, r),
            lambda q, r: YoungDiagram((2,)),
        ),
        "rect(q,r) with column-pair cluster": (
            lambda q, r: _rect(q, r),
            lambda q, r: YoungDiagram((1, 1)),
        ),
        "rect(r,q) with row-pair cluster": (
            lambda q, r: _rect(r, q),
            lambda q, r: YoungDiagram((2,)),
        ),
        "rect(r,q) with column-pair cluster": (
            lambda q, r: _rect(r, q),
            lambda q, r: YoungDiagram((1, 1)),
        ),
    }
    _check_identified_family(
        report,
        formulas.bundle_with_two_boxes_count,
        variants,
        lambda p, q, r: p + q + r + 2,
        n_max,
    )
    return report


DEFAULT_YOUNG_PAIRS = tuple(
    (YoungDiagram(rows), YoungDiagram(rows_p))
    for rows_p in ((), (1,), (2,), (1, 1))
    for total in range(0, 5 - sum(rows_p))
    for rows in _partitions(total)
)


def verify_young_pair(
    y: YoungDiagram, yp: YoungDiagram, n_values: list[int]
) -> VerificationReport:
    """Polynomial structure of one pattern family: degree, integrality, leading term.

    Fits the exact interpolating polynomial through the first degree+1 data
    points; any further points are held-out exactness checks.  Requires at
    least degree+1 usable sizes.
    """
    degree = y.boxes + yp.boxes
    lo = y.min_arches() + yp.min_arches()
    usable = sorted(n for n in n_values if n >= lo)
    label = _pair_label(y, yp)
    report = VerificationReport("conj67", f"{label}, n in {usable}")
    if len(usable) < degree + 1:
        raise GuardLimitError(
            f"{label}: need {degree + 1} sizes with n >= {lo}, have {len(usable)}"
        )
    data = _family_values(y, yp, usable)
    points = [(n, Fraction(data[n])) for n in usable]
    poly = formulas.fit_polynomial(points, degree)
    report.add(f"{label}: fitted degree", degree, poly.degree)
    clear = factorial(y.boxes) * factorial(yp.boxes)
    try:
        poly.scaled_integer_coeffs(clear)
        report.add(f"{label}: coefficients x {clear} integral", "yes", "yes")
    except ValueError as exc:
        report.add(f"{label}: coefficients x {clear} integral", "yes", f"no ({exc})")
    expected_leading = Fraction(y.dim() * yp.dim(), clear)
    report.add(f"{label}: leading coefficient", expected_leading, poly.leading())
    held_out = points[degree + 1 :]
    if held_out:
        bad = [(int(x), v, poly(x)) for x, v in held_out if poly(x) != v]
        if bad:
            for n, v, got in bad:
                report.add(f"{label}: held-out n={n}", v, got)
        else:
            report.add(f"{label}: {len(held_out)} held-out point(s)", "exact", "exact")
    else:
        report.info(label, "no held-out points (fit consumed all available sizes)")
    return report


def check_conj67(n_max: int, pairs=None) -> VerificationReport:
    """Polynomial structure for every default Young pair within reach of the data."""
    pairs = DEFAULT_YOUNG_PAIRS if pairs is None else pairs
    report = VerificationReport(
        "conj67", f"|Y| + |Y'| <= 4, Y' in {{-, 1, 2, 1x1}}, data n <= {n_max}"
    )
    for y, yp in pairs:
        try:
            sub = verify_young_pair(y, yp, list(range(1, n_max + 1)))
        except GuardLimitError as exc:
            report.info(_pair_label(y, yp), f"skipped: {exc}")
            continue
        report.cases.extend(sub.cases)
    return report


def check_conj8(n_max: int, sweep_max: int = 200) -> VerificationReport:
    """Inclusive-count closed forms: data match for one arch, candidate
    definitions for more arches, and long integrality sweeps."""
    report = VerificationReport("conj8", f"data n <= {n_max}, integrality n <= {sweep_max}")
    for n in range(3, n_max + 1):
        report.add(
            f"p=1, n={n}",
            formulas.inclusive_nested_formula(n, 1),
            Fraction(groundstate.inclusive_count(n, [(1, 2)])),
        )
    for p in (2, 3):
        nested_ok, adjacent_ok = [], []
        for n in range(max(3, p), n_max + 1):
            value = formulas.inclusive_nested_formula(n, p)
            nested = groundstate.inclusive_count(n, [(i, 2 * p + 1 - i) for i in range(1, p + 1)])
            adjacent = groundstate.inclusive_count(n, [(2 * i - 1, 2 * i) for i in range(1, p + 1)])
            nested_ok.append(value == nested)
            adjacent_ok.append(value == adjacent)
            report.add(f"p={p} nested-arches definition, n={n}", value, Fraction(nested))
        verdict = (
            f"nested definition {'matches' if all(nested_ok) else 'fails'}; "
            f"adjacent definition {'matches' if all(adjacent_ok) else 'fails'}"
        )
        report.info(f"p={p} candidate definitions", verdict)
    bad = []
    for n in range(1, sweep_max + 1):
        for p in range(4):
            if n >= p and formulas.inclusive_nested_formula(n, p).denominator != 1:
                bad.append(("A", n, p))
    for n in range(3, sweep_max + 1):
        values = (
            formulas.relation_sum_c(n),
            formulas.relation_sum_d(n),
            *formulas.corollary_and_p12(n),
        )
        bad.extend(("B", n, k) for k, v in enumerate(values) if v.denominator != 1)
    report.add(
        f"integrality of all closed forms to n={sweep_max}",
        "all integral",
        "all integral" if not bad else f"{len(bad)} fractional values, first {bad[0]}",
    )
    return report


_C_ARCHES = ((1, 2), (3, 4))
_P12_ARCHES = {"first": ((1, 6), (2, 3)), "second": ((1, 2), (3, 6))}


def check_conj9(n_max: int) -> VerificationReport:
    """The two-pattern-sum forms, pinned to inclusive sums found by search.

    The defining sub-patterns are only drawn, not printed, so they were
    recovered by scanning small required-arch sets against the closed forms:
    the first form is the inclusive sum over patterns containing the two
    adjacent small arches (1,2), (3,4); each degree-12 ratio is an inclusive
    sum over one arch nested beside a small arch; the second form is exactly
    the sum of the two degree-12 ratios; and the boxed corollary is the first
    form minus the two-nested-arch inclusive formula.
    """
    report = VerificationReport("conj9", f"data n = 3..{n_max}, identities n <= 200")
    report.add("first closed form at n=3", 2, formulas.relation_sum_c(3))
    for n in range(3, n_max + 1):
        report.add(
            f"first form = inclusive sum over {_C_ARCHES}, n={n}",
            formulas.relation_sum_c(n),
            Fraction(groundstate.inclusive_count(n, _C_ARCHES)),
        )
        for which, arches in _P12_ARCHES.items():
            report.add(
                f"{which} degree-12 ratio = inclusive sum over {arches}, n={n}",
                formulas.degree_twelve_ratio(n, which),
                Fraction(groundstate.inclusive_count(n, arches)),
            )
        report.add(
            f"second form = sum of the two degree-12 inclusive sums, n={n}",
            formulas.relation_sum_d(n),
            Fraction(
                groundstate.inclusive_count(n, _P12_ARCHES["first"])
                + groundstate.inclusive_count(n, _P12_ARCHES["second"])
            ),
        )
    identity_ok = all(
        formulas.relation_sum_d(n)
        == formulas.degree_twelve_ratio(n, "first") + formulas.degree_twelve_ratio(n, "second")
        for n in range(3, 201)
    )
    report.add("second form = sum of degree-12 ratios (formula identity, n <= 200)",
               True, identity_ok)
    recombination_ok = all(
        formulas.combined_corollary(n)
        == formulas.relation_sum_c(n) - formulas.inclusive_nested_formula(n, 2)
        for n in range(3, 201)
    )
    report.add("corollary = first form minus two-arch inclusive formula (n <= 200)",
               True, recombination_ok)
    return report


def check_appendix(n_max: int) -> VerificationReport:
    """Identify each extra closed form's pattern family and verify its structure.

    Identification requires a candidate family to reproduce the closed form
    at every available size *and* to carry the structurally forced leading
    coefficient (dimension ratio); with short data ranges several diagrams of
    the right size can match the few available values by coincidence, and the
    leading-term constraint removes those.  Where the data range allows, the
    polynomial is refit from the eigenvector values and compared coefficient
    by coefficient; one size short of that, the refit is pinned by the claimed
    leading coefficient.
    """
    report = VerificationReport("appendix", f"entries 1..6, data n <= {n_max}")
    polys = formulas.extra_pattern_polynomials()
    for k, poly in enumerate(polys, start=1):
        degree = poly.degree
        start = max(1, _first_integer_size(poly))
        values = {n: poly(n) for n in range(start, n_max + 1)}
        matched = identify_young_pair(values, degree, exact_boxes=degree)
        label = f"entry {k} (degree {degree})"
        found = []
        for y, yp in matched:
            clear = factorial(y.boxes) * factorial(yp.boxes)
            if Fraction(y.dim() * yp.dim(), clear) == poly.leading():
                found.append((y, yp))
            else:
                report.info(
                    f"{label}: {_pair_label(y, yp)}",
                    "matched the data but has the wrong leading dimension ratio; rejected",
                )
        report.add(
            f"{label}: identification (data + leading term)",
            "at least one family",
            "at least one family" if found else "none",
            note=", ".join(_pair_label(y, yp) for y, yp in found) or None,
        )
        if not found:
            continue
        y, yp = found[0]
        clear = factorial(y.boxes) * factorial(yp.boxes)
        expected_leading = Fraction(y.dim() * yp.dim(), clear)
        report.add(f"{label}: claimed degree for {_pair_label(y, yp)}",
                   y.boxes + yp.boxes, degree)
        try:
            poly.scaled_integer_coeffs(clear)
            report.add(f"{label}: coefficients x {clear} integral", "yes", "yes")
        except ValueError as exc:
            report.add(f"{label}: coefficients x {clear} integral", "yes", f"no ({exc})")
        lo = y.min_arches() + yp.min_arches()
        usable = [n for n in range(lo, n_max + 1)]
        family = _family_values(y, yp, usable)
        points = [(n, Fraction(family[n])) for n in usable]
        if len(usable) >= degree + 1:
            refit = formulas.fit_polynomial(points, degree)
            report.add(f"{label}: refit from data equals closed form", str(poly), str(refit))
        elif len(usable) == degree:
            refit = formulas.fit_polynomial(points, degree, known_leading=expected_leading)
            report.add(
                f"{label}: leading-constrained refit equals closed form", str(poly), str(refit)
            )
        else:
            report.info(
                label,
                f"refit impossible: {len(usable)} data size(s) cannot pin degree {degree}; "
                "pointwise and structural checks above stand in",
            )
    return report


def _first_integer_size(poly) -> int:
    n = 1
    while poly(n).denominator != 1 or poly(n) < 0:
        n += 1
        if n > 20:
            raise ValueError("polynomial never turns into a count")
    return n


def check_series(burnside_max: int = 11) -> VerificationReport:
    """Generating-function coefficients against print reference and Burnside."""
    report = VerificationReport("series", f"orders 1..{len(ORBIT_SERIES_REFERENCE)}")
    coeffs = series.orbit_count_series(len(ORBIT_SERIES_REFERENCE))
    report.add("published coefficient list", list(ORBIT_SERIES_REFERENCE), coeffs)
    for n in range(1, min(burnside_max, len(coeffs)) + 1):
        report.add(f"Burnside count at n={n}", coeffs[n - 1], series.o_n_direct(n))
    return report


_CHECKS = {
    "conj2": check_conj2,
    "conj3": check_conj3,
    "conj4": check_conj4,
    "conj5": check_conj5,
    "conj67": check_conj67,
    "conj8": check_conj8,
    "conj9": check_conj9,
    "appendix": check_appendix,
}


def verify_all(n_max: int, only=None) -> list[VerificationReport]:
    """Run the selected checks (all by default) against data up to size n_max."""
    if only is None:
        selected = list(REPORT_IDS)
    else:
        selected = []
        for token in only:
            token = token.strip().lower()
            token = _ALIASES.get(token, token)
            if token not in REPORT_IDS:
                raise ValueError(
                    f"unknown check {token!r}; valid: {', '.join(REPORT_IDS)}"
                )
            if token not in selected:
                selected.append(token)
    reports = []
    for name in selected:
        if name == "series":
            reports.append(check_series(burnside_max=min(n_max + 1, 11)))
        else:
            reports.append(_CHECKS[name](n_max))
    return reports
