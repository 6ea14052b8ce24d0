"""Link patterns on a circle, their dihedral symmetry, and Young-diagram encodings.

A link pattern on ``2n`` points is a noncrossing perfect matching of points
placed on a circle and labelled counterclockwise.  Internally a pattern is the
involution tuple ``match`` with 0-based positions: ``match[i] == j`` means an
arch joins points ``i`` and ``j``.  All *text* formats use the conventional
1-based cyclic labels instead.

Dyck encoding (frozen convention): reading points counterclockwise from a
basepoint, a point emits ``U`` when it is the first-visited endpoint of its
arch and ``D`` otherwise.  A word of length ``2n`` corresponds to the Young
diagram complementary to the path inside the staircase ``(n-1, ..., 1)``: the
j-th ``D`` step contributes a row of length ``n`` minus the number of ``U``
steps before it.  Under this bijection ``U^n D^n`` (the fully nested pattern)
maps to the empty diagram and ``(UD)^n`` (the n small arches) to the full
staircase.
"""

from __future__ import annotations

import dataclasses
from functools import lru_cache
from math import factorial


def is_noncrossing_matching(match: tuple[int, ...]) -> bool:
    """Return True if ``match`` is a fixed-point-free noncrossing involution."""
    m = len(match)
    if m == 0 or m % 2:
        return False
    if not all(0 <= match[i] < m and match[i] != i and match[match[i]] == i for i in range(m)):
        return False
    stack: list[int] = []
    for i in range(m):
        if match[i] > i:
            stack.append(match[i])
        elif stack.pop() != i:
            return False
    return True


@dataclasses.dataclass(frozen=True, order=True)
class LinkPattern:
    """A noncrossing perfect matching of 2n circle points (0-based involution)."""

    match: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_noncrossing_matching(self.match):
            raise ValueError(f"not a noncrossing fixed-point-free involution: {self.match!r}")

    @property
    def n(self) -> int:
        return len(self.match) // 2

    def pairs(self) -> list[tuple[int, int]]:
        """The arches as sorted 1-based pairs, e.g. [(1, 6), (2, 3), (4, 5)]."""
        return [(i + 1, j + 1) for i, j in enumerate(self.match) if i < j]

    def has_arch(self, i: int, j: int) -> bool:
        """True if an arch joins the 1-based points i and j."""
        return self.match[(i - 1) % len(self.match)] == (j - 1) % len(self.match)

    def dyck(self, basepoint: int = 1) -> str:
        """The Dyck word read counterclockwise from the 1-based basepoint."""
        m = len(self.match)
        if not 1 <= basepoint <= m:
            raise ValueError(f"basepoint {basepoint} out of range 1..{m}")
        b = basepoint - 1
        out = []
        for k in range(m):
            i = (b + k) % m
            out.append("U" if (self.match[i] - b) % m > k else "D")
        return "".join(out)

    def to_text(self) -> str:
        """Balanced-parenthesis form of the basepoint-1 Dyck word, e.g. "(()())"."""
        return self.dyck().replace("U", "(").replace("D", ")")

    @classmethod
    def from_text(cls, text: str) -> "LinkPattern":
        """Parse a parenthesis/UD word or an explicit pair list like "(1 6)(2 3)(4 5)"."""
        stripped = text.strip()
        if not stripped:
            raise ValueError("empty link-pattern text")
        if any(ch.isdigit() for ch in stripped):
            return cls(_match_from_pair_text(stripped))
        return pattern_of_dyck(stripped)

    def __str__(self) -> str:
        return self.to_text()


def _match_from_pair_text(text: str) -> tuple[int, ...]:
    groups = [g for g in text.replace("(", " ").replace(")", " ; ").split(";") if g.strip()]
    pairs = []
    for g in groups:
        parts = g.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError(f"malformed pair {g!r} in {text!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    m = 2 * len(pairs)
    match = [-1] * m
    for i, j in pairs:
        if not (1 <= i <= m and 1 <= j <= m):
            raise ValueError(f"point out of range in pair ({i}, {j})")
        match[i - 1], match[j - 1] = j - 1, i - 1
    if -1 in match:
        raise ValueError(f"pair list does not cover all {m} points: {text!r}")
    return tuple(match)


def nested_pattern(n: int) -> LinkPattern:
    """The fully nested pattern (1,2n)(2,2n-1)...; its Dyck word is U^n D^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return LinkPattern(tuple(2 * n - 1 - i for i in range(2 * n)))


@lru_cache(maxsize=32)
def enumerate_matches(n: int) -> tuple[tuple[int, ...], ...]:
    """All noncrossing involution tuples on 2n points in lexicographic order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out: list[tuple[int, ...]] = []
    match = [-1] * (2 * n)

    def fill(lo: int, hi: int):
        # Matchings of the contiguous block lo..hi; the leftmost point pairs at
        # odd distance, splitting the block into two independent sub-blocks.
        if lo > hi:
            yield
            return
        for j in range(lo + 1, hi + 1, 2):
            match[lo], match[j] = j, lo
            for _ in fill(lo + 1, j - 1):
                for _ in fill(j + 1, hi):
                    yield

    for _ in fill(0, 2 * n - 1):
        out.append(tuple(match))
    out.sort()
    return tuple(out)


def enumerate_link_patterns(n: int) -> list[LinkPattern]:
    """All link patterns on 2n points, lexicographic on the match tuples."""
    return [LinkPattern(m) for m in enumerate_matches(n)]


def catalan(n: int) -> int:
    """Catalan number (2n)! / (n! (n+1)!)."""
    return factorial(2 * n) // (factorial(n) * factorial(n + 1))


# --- dihedral action ---------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class DihedralElement:
    """A symmetry of the 2n labelled circle points: i -> rotation ± i (mod 2n).

    ``reflected=False`` gives the rotation i -> i + rotation; ``reflected=True``
    the reflection i -> rotation - i.  The 2n rotations and 2n reflections form
    the full symmetry group of order 4n.
    """

    n: int
    rotation: int
    reflected: bool = False

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        object.__setattr__(self, "rotation", self.rotation % (2 * self.n))

    @classmethod
    def identity(cls, n: int) -> "DihedralElement":
        return cls(n, 0, False)

    def apply(self, i: int) -> int:
        """Image of the 0-based point i."""
        return (self.rotation - i) % (2 * self.n) if self.reflected else (self.rotation + i) % (2 * self.n)

    def perm(self) -> tuple[int, ...]:
        return tuple(self.apply(i) for i in range(2 * self.n))

    def compose(self, other: "DihedralElement") -> "DihedralElement":
        """The element acting as self after other."""
        if self.n != other.n:
            raise ValueError("cannot compose elements of different sizes")
        r = self.rotation + (-other.rotation if self.reflected else other.rotation)
        return DihedralElement(self.n, r, self.reflected != other.reflected)

    def inverse(self) -> "DihedralElement":
        return self if self.reflected else DihedralElement(self.n, -self.rotation, False)

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        return self.compose(other)


def dihedral_group(n: int) -> list[DihedralElement]:
    """All 4n symmetries of the 2n labelled points."""
    return [DihedralElement(n, r, s) for s in (False, True) for r in range(2 * n)]


def _act_match(perm: tuple[int, ...], match: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(match)
    for i, j in enumerate(match):
        out[perm[i]] = perm[j]
    return tuple(out)


def act(g: DihedralElement, p: LinkPattern) -> LinkPattern:
    """Relabel the endpoints of p by g; noncrossingness is preserved."""
    if g.n != p.n:
        raise ValueError(f"size mismatch: element on {2 * g.n} points, pattern on {2 * p.n}")
    return LinkPattern(_act_match(g.perm(), p.match))


def canonical_match(match: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically minimal relabelling of ``match`` over the 4n symmetries."""
    n = len(match) // 2
    return min(_act_match(g.perm(), match) for g in dihedral_group(n))


@dataclasses.dataclass(frozen=True)
class Orbit:
    """A dihedral equivalence class of link patterns.

    The representative is the lexicographically minimal member; members are
    sorted.  The orbit size always divides the group order 4n.
    """

    representative: LinkPattern
    members: tuple[LinkPattern, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@lru_cache(maxsize=32)
def _orbit_tables(
    n: int,
) -> tuple[tuple[Orbit, ...], dict[tuple[int, ...], int]]:
    """Orbits sorted by representative, plus a match -> orbit-index lookup."""
    perms = [g.perm() for g in dihedral_group(n)]
    assigned: dict[tuple[int, ...], int] = {}
    raw_orbits: list[tuple[tuple[int, ...], list[tuple[int, ...]]]] = []
    for m in enumerate_matches(n):
        if m in assigned:
            continue
        images = sorted({_act_match(s, m) for s in perms})
        idx = len(raw_orbits)
        for im in images:
            assigned[im] = idx
        raw_orbits.append((images[0], images))
    order = sorted(range(len(raw_orbits)), key=lambda k: raw_orbits[k][0])
    rank = {old: new for new, old in enumerate(order)}
    orbits_sorted = tuple(
        Orbit(LinkPattern(raw_orbits[k][0]), tuple(LinkPattern(m) for m in raw_orbits[k][1]))
        for k in order
    )
    lookup = {m: rank[idx] for m, idx in assigned.items()}
    for orb in orbits_sorted:
        if (4 * n) % orb.size:
            raise AssertionError(f"orbit size {orb.size} does not divide {4 * n}")
    return orbits_sorted, lookup


def orbits(n: int) -> list[Orbit]:
    """Partition of all link patterns on 2n points into dihedral orbits."""
    return list(_orbit_tables(n)[0])


def orbit_index(p: LinkPattern) -> int:
    """Index of p's orbit within orbits(p.n)."""
    return _orbit_tables(p.n)[1][p.match]


# --- Dyck words and Young diagrams -------------------------------------------


def _normalize_word(word: str) -> str:
    w = word.strip().replace("(", "U").replace(")", "D").upper()
    if set(w) - {"U", "D"}:
        raise ValueError(f"not a U/D or parenthesis word: {word!r}")
    return w


def _check_balanced(w: str) -> None:
    height = 0
    for ch in w:
        height += 1 if ch == "U" else -1
        if height < 0:
            raise ValueError(f"unbalanced word: {w!r}")
    if height:
        raise ValueError(f"unbalanced word: {w!r}")


def pattern_of_dyck(word: str) -> LinkPattern:
    """The link pattern whose basepoint-1 Dyck word is ``word``."""
    w = _normalize_word(word)
    _check_balanced(w)
    match = [-1] * len(w)
    stack: list[int] = []
    for i, ch in enumerate(w):
        if ch == "U":
            stack.append(i)
        else:
            j = stack.pop()
            match[i], match[j] = j, i
    return LinkPattern(tuple(match))


def pattern_to_dyck(p: LinkPattern, basepoint: int = 1) -> str:
    """Dyck word of p read counterclockwise from the 1-based basepoint."""
    return p.dyck(basepoint)


@dataclasses.dataclass(frozen=True, order=True)
class YoungDiagram:
    """An integer partition; rows are weakly decreasing positive lengths."""

    rows: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(r < 1 for r in self.rows):
            raise ValueError(f"rows must be positive: {self.rows!r}")
        if any(self.rows[i] < self.rows[i + 1] for i in range(len(self.rows) - 1)):
            raise ValueError(f"rows must be weakly decreasing: {self.rows!r}")

    @property
    def boxes(self) -> int:
        return sum(self.rows)

    def transpose(self) -> "YoungDiagram":
        if not self.rows:
            return self
        return YoungDiagram(tuple(sum(1 for r in self.rows if r > j) for j in range(self.rows[0])))

    def hook_lengths(self) -> list[list[int]]:
        """Hook length of each box: arm + leg + 1."""
        cols = self.transpose().rows
        return [
            [self.rows[i] - j + cols[j] - i - 1 for j in range(self.rows[i])]
            for i in range(len(self.rows))
        ]

    def hook_product(self) -> int:
        prod = 1
        for row in self.hook_lengths():
            for h in row:
                prod *= h
        return prod

    def dim(self) -> int:
        """Number of standard tableaux: |Y|! divided by the hook product."""
        num, den = factorial(self.boxes), self.hook_product()
        if num % den:
            raise AssertionError(f"hook product {den} does not divide {self.boxes}!")
        return num // den

    def add_box(self) -> list["YoungDiagram"]:
        """All diagrams obtained by adding one box, ordered by row index."""
        out = []
        for i in range(len(self.rows) + 1):
            above = self.rows[i - 1] if i else None
            here = self.rows[i] if i < len(self.rows) else 0
            if above is None or here < above:
                grown = list(self.rows)
                if i < len(self.rows):
                    grown[i] += 1
                else:
                    grown.append(1)
                out.append(YoungDiagram(tuple(grown)))
        return out

    def min_arches(self) -> int:
        """Half-length of the shortest Dyck word whose complementary diagram is self."""
        return max((r + i + 1 for i, r in enumerate(self.rows)), default=0)

    def to_text(self) -> str:
        """Comma-separated row lengths, e.g. "3,2,1"; empty diagram gives ""."""
        return ",".join(str(r) for r in self.rows)

    @classmethod
    def from_text(cls, text: str) -> "YoungDiagram":
        stripped = text.strip()
        if not stripped:
            return cls(())
        return cls(tuple(int(t) for t in stripped.split(",")))

    @classmethod
    def staircase(cls, n: int) -> "YoungDiagram":
        """(n-1, n-2, ..., 1); empty for n <= 1."""
        return cls(tuple(range(n - 1, 0, -1)))

    def __str__(self) -> str:
        return self.to_text() or "empty"


def dyck_to_young(word: str) -> YoungDiagram:
    """The Young diagram complementary to the word's path inside the staircase."""
    w = _normalize_word(word)
    _check_balanced(w)
    n = len(w) // 2
    rows, ups = [], 0
    for ch in w:
        if ch == "U":
            ups += 1
        else:
            rows.append(n - ups)
    return YoungDiagram(tuple(r for r in rows if r > 0))


def young_to_dyck(y: YoungDiagram, n: int) -> str:
    """Inverse of dyck_to_young at size n; requires the diagram to fit the staircase."""
    if y.min_arches() > n:
        raise ValueError(f"diagram {y.to_text() or 'empty'} needs at least {y.min_arches()} arches, got n={n}")
    mu = list(y.rows) + [0] * (n - len(y.rows))
    down_positions = {(n - mu[j]) + j + 1 for j in range(n)}  # 1-based positions of D steps
    return "".join("D" if k in down_positions else "U" for k in range(1, 2 * n + 1))


def pattern_from_young_pair(y: YoungDiagram, yp: YoungDiagram, n: int) -> LinkPattern:
    """The pattern made of the two encoded arch clusters separated by nested arches.

    The cluster encoded by ``y`` sits at points 1..2r (its minimal Dyck word),
    then ``n - r - r'`` arches wrap around the cluster encoded by ``yp``.  With
    both diagrams empty this is the fully nested pattern; with the staircase
    and an empty partner it is the n-small-arch pattern.
    """
    r, rp = y.min_arches(), yp.min_arches()
    k = n - r - rp
    if k < 0:
        raise ValueError(f"n={n} too small for clusters needing {r} + {rp} arches")
    word = young_to_dyck(y, r) + "U" * k + young_to_dyck(yp, rp) + "D" * k
    return pattern_of_dyck(word)
