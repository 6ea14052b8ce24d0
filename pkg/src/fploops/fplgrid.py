"""Fully packed loops on the n x n grid and their alternating-sign-matrix twins.

Grid conventions (frozen):

* Vertices are (row, col), 0-based from the top-left; each vertex carries four
  edge slots N/E/S/W.  Interior edges join neighbouring vertices; every
  boundary vertex additionally has external links sticking out of the grid,
  4n in total.
* Walking the boundary counterclockwise from the top-left corner (down the
  left side, along the bottom, up the right side, back along the top) visits
  the external links in a cyclic order.  A configuration occupies every second
  external link; ``parity`` 0 or 1 selects which alternation class.  The
  occupied links are labelled 1..2n counterclockwise, label 1 at the first
  occupied position of this walk.
* A fully packed configuration occupies exactly two edge slots at every
  vertex, so the occupied edges form disjoint paths (plus closed interior
  loops) entering and leaving through the 2n occupied external links.

The per-vertex sign map: a path running straight through a vertex contributes
+1 on horizontal / -1 on vertical segments at even vertices ((row+col) even)
and the opposite at odd vertices; corners contribute 0.  This sends every
configuration to an alternating-sign matrix and is inverted by
``asm_to_fpl``.

Serialization order for edge bit-strings: row-major horizontal interior
edges, then row-major vertical interior edges, then external links clockwise
from the top-left corner (top side left to right, right side top to bottom,
bottom side right to left, left side bottom to top).
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator

from .errors import GuardLimitError
from .linkpat import LinkPattern

Side = str  # "N" | "E" | "S" | "W"

DEFAULT_ENUM_GUARD = 7


def a_total(n: int) -> int:
    """Total number of configurations: product of (3j-2)! / (n+j-1)! for j = 1..n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    value = Fraction(1)
    for j in range(1, n + 1):
        value *= Fraction(factorial(3 * j - 2), factorial(n + j - 1))
    if value.denominator != 1:
        raise AssertionError(f"total count formula gave a non-integer for n={n}")
    return int(value)


@lru_cache(maxsize=64)
def _boundary_tables(n: int, parity: int):
    """Occupancy of each external link and the 1-based labels of occupied ones.

    Returns (ext_occ, labels) where both are dicts keyed by (side, index);
    index is the row for W/E links and the column for N/S links.
    """
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    ccw: list[tuple[Side, int]] = (
        [("W", i) for i in range(n)]
        + [("S", j) for j in range(n)]
        + [("E", i) for i in range(n - 1, -1, -1)]
        + [("N", j) for j in range(n - 1, -1, -1)]
    )
    ext_occ = {link: 1 if pos % 2 == parity else 0 for pos, link in enumerate(ccw)}
    labels = {}
    for m in range(2 * n):
        labels[ccw[(parity + 2 * m) % (4 * n)]] = m + 1
    return ext_occ, labels


@dataclasses.dataclass(frozen=True)
class FplConfiguration:
    """Edge occupancies of one fully packed configuration.

    ``horizontal[i*(n-1) + j]`` is the edge east of vertex (i, j) for
    j < n-1; ``vertical[i*n + j]`` the edge south of (i, j) for i < n-1.
    External-link occupancies are implied by (n, parity).
    """

    n: int
    parity: int
    horizontal: tuple[int, ...]
    vertical: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.n
        if len(self.horizontal) != n * (n - 1) or len(self.vertical) != n * (n - 1):
            raise ValueError("edge arrays have the wrong length")
        for i in range(n):
            for j in range(n):
                if sum(self.slots(i, j).values()) != 2:
                    raise ValueError(f"vertex ({i}, {j}) does not have degree 2")

    def slots(self, i: int, j: int) -> dict[Side, int]:
        """Occupancy of the four edge slots at vertex (i, j)."""
        n = self.n
        ext, _ = _boundary_tables(n, self.parity)
        return {
            "N": ext[("N", j)] if i == 0 else self.vertical[(i - 1) * n + j],
            "S": ext[("S", j)] if i == n - 1 else self.vertical[i * n + j],
            "W": ext[("W", i)] if j == 0 else self.horizontal[i * (n - 1) + j - 1],
            "E": ext[("E", i)] if j == n - 1 else self.horizontal[i * (n - 1) + j],
        }

    def bit_string(self) -> str:
        """Edges in the documented fixed order as a 0/1 string."""
        ext, _ = _boundary_tables(self.n, self.parity)
        n = self.n
        cw = (
            [("N", j) for j in range(n)]
            + [("E", i) for i in range(n)]
            + [("S", j) for j in range(n - 1, -1, -1)]
            + [("W", i) for i in range(n - 1, -1, -1)]
        )
        bits = list(self.horizontal) + list(self.vertical) + [ext[link] for link in cw]
        return "".join(map(str, bits))

    @classmethod
    def from_bit_string(cls, n: int, parity: int, bits: str) -> "FplConfiguration":
        if len(bits) != 2 * n * (n - 1) + 4 * n or set(bits) - {"0", "1"}:
            raise ValueError("malformed bit string")
        m = n * (n - 1)
        horizontal = tuple(int(b) for b in bits[:m])
        vertical = tuple(int(b) for b in bits[m : 2 * m])
        cfg = cls(n, parity, horizontal, vertical)
        if cfg.bit_string() != bits:
            raise ValueError("external-link bits disagree with the stated parity")
        return cfg


def enumerate_fpl(n: int, parity: int = 0) -> Iterator[FplConfiguration]:
    """Yield every configuration once, by row-major vertex backtracking."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ext, _ = _boundary_tables(n, parity)
    n_ext = [ext[("N", j)] for j in range(n)]
    s_ext = [ext[("S", j)] for j in range(n)]
    w_ext = [ext[("W", i)] for i in range(n)]
    e_ext = [ext[("E", i)] for i in range(n)]
    horiz = [0] * (n * (n - 1))  # east edge of (i, j), j < n-1
    vert = [0] * (n * (n - 1))  # south edge of (i, j), i < n-1

    def solve(v_idx: int):
        if v_idx == n * n:
            yield FplConfiguration(n, parity, tuple(horiz), tuple(vert))
            return
        i, j = divmod(v_idx, n)
        north = n_ext[j] if i == 0 else vert[(i - 1) * n + j]
        west = w_ext[i] if j == 0 else horiz[i * (n - 1) + j - 1]
        need = 2 - north - west
        if need < 0:
            return
        east_choices = (e_ext[i],) if j == n - 1 else (0, 1)
        for east in east_choices:
            south = need - east
            if south not in (0, 1):
                continue
            if i == n - 1:
                if south != s_ext[j]:
                    continue
            else:
                vert[i * n + j] = south
            if j < n - 1:
                horiz[i * (n - 1) + j] = east
            yield from solve(v_idx + 1)

    yield from solve(0)


@dataclasses.dataclass(frozen=True)
class AsmMatrix:
    """An n x n matrix over {-1, 0, +1} with alternating-sign rows and columns."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        if n == 0 or any(len(row) != n for row in self.entries):
            raise ValueError("entries must form a square matrix")
        lines = list(self.entries) + [tuple(row[j] for row in self.entries) for j in range(n)]
        for line in lines:
            signs = [e for e in line if e]
            if any(e not in (-1, 0, 1) for e in line):
                raise ValueError("entries must be in {-1, 0, 1}")
            if not signs or signs[0] != 1 or signs[-1] != 1:
                raise ValueError("nonzero entries of each line must start and end with +1")
            if any(signs[k] == signs[k + 1] for k in range(len(signs) - 1)):
                raise ValueError("nonzero entries of each line must alternate in sign")

    @property
    def n(self) -> int:
        return len(self.entries)


def fpl_to_asm(config: FplConfiguration) -> AsmMatrix:
    """Per-vertex sign map; straight segments give +-1 by vertex parity, corners 0.

    The checkerboard colouring is offset by the external-link parity so that
    both alternation sectors land on matrices with +1-bordered sign patterns
    (with the plain (row+col) colouring the parity-1 sector would come out
    globally negated).
    """
    rows = []
    for i in range(config.n):
        row = []
        for j in range(config.n):
            s = config.slots(i, j)
            horizontal = s["W"] and s["E"]
            vertical = s["N"] and s["S"]
            even = (i + j + config.parity) % 2 == 0
            if horizontal:
                row.append(1 if even else -1)
            elif vertical:
                row.append(-1 if even else 1)
            else:
                row.append(0)
        rows.append(tuple(row))
    return AsmMatrix(tuple(rows))


def asm_to_fpl(matrix: AsmMatrix, parity: int = 0) -> FplConfiguration:
    """Inverse of fpl_to_asm for the chosen external-link parity.

    Horizontal occupancy is constant through nonzero entries and flips at
    corners, so it propagates from the left boundary; vertically likewise from
    the top.  Boundary mismatches cannot occur for a valid matrix.
    """
    n = matrix.n
    ext, _ = _boundary_tables(n, parity)
    horiz = [0] * (n * (n - 1))
    vert = [0] * (n * (n - 1))
    for i in range(n):
        h = ext[("W", i)]
        for j in range(n):
            e = matrix.entries[i][j]
            if e:
                demanded = 1 if (e == 1) == ((i + j + parity) % 2 == 0) else 0
                if h != demanded:
                    raise ValueError(
                        f"entry at ({i}, {j}) inconsistent with horizontal occupancy"
                    )
            else:
                h = 1 - h
            if j < n - 1:
                horiz[i * (n - 1) + j] = h
            elif h != ext[("E", i)]:
                raise ValueError(f"row {i} does not close on the east boundary")
    for j in range(n):
        v = ext[("N", j)]
        for i in range(n):
            e = matrix.entries[i][j]
            if e:
                demanded = 1 if (e == 1) == ((i + j + parity) % 2 == 1) else 0
                if v != demanded:
                    raise ValueError(
                        f"entry at ({i}, {j}) inconsistent with vertical occupancy"
                    )
            else:
                v = 1 - v
            if i < n - 1:
                vert[i * n + j] = v
            elif v != ext[("S", j)]:
                raise ValueError(f"column {j} does not close on the south boundary")
    return FplConfiguration(n, parity, tuple(horiz), tuple(vert))


_STEP = {"N": (-1, 0, "S"), "S": (1, 0, "N"), "W": (0, -1, "E"), "E": (0, 1, "W")}


def boundary_pattern(config: FplConfiguration) -> LinkPattern:
    """The pairing of the 2n occupied external links induced by the open paths."""
    n = config.n
    _, labels = _boundary_tables(n, config.parity)
    entry_vertex = {"W": lambda k: (k, 0), "E": lambda k: (k, n - 1), "N": lambda k: (0, k), "S": lambda k: (n - 1, k)}
    match = [-1] * (2 * n)
    for (side, idx), label in labels.items():
        if match[label - 1] >= 0:
            continue
        i, j = entry_vertex[side](idx)
        came_from = side
        while True:
            slots = config.slots(i, j)
            exits = [d for d, occ in slots.items() if occ and d != came_from]
            out = exits[0] if len(exits) == 1 else exits[0]
            if len(exits) != 1:
                raise AssertionError(f"path through ({i}, {j}) is ambiguous")
            di, dj, opposite = _STEP[out]
            ni, nj = i + di, j + dj
            if not (0 <= ni < n and 0 <= nj < n):
                other = labels[(out, j if out in "NS" else i)]
                match[label - 1], match[other - 1] = other - 1, label - 1
                break
            i, j, came_from = ni, nj, opposite
    return LinkPattern(tuple(match))


def count_by_pattern(
    n: int, parity: int = 0, guard: int = DEFAULT_ENUM_GUARD, force: bool = False
) -> dict[LinkPattern, int]:
    """Number of configurations realizing each link pattern (absent if zero)."""
    if n > guard and not force:
        raise GuardLimitError(
            f"count_by_pattern(n={n}) exceeds the exhaustive-enumeration guard {guard}; "
            "pass force=True to run anyway"
        )
    counts: dict[LinkPattern, int] = {}
    for config in enumerate_fpl(n, parity):
        p = boundary_pattern(config)
        counts[p] = counts.get(p, 0) + 1
    return counts
