"""The periodic loop-model ground state on link patterns, in exact arithmetic.

The cut-and-rejoin operator e_i acts on a link pattern by connecting points i
and i+1 (cyclically) and rejoining their former partners; patterns already
carrying the arch (i, i+1) are fixed.  At loop weight 1 this is a pure map on
patterns.  The Hamiltonian summing all 2n such operators has column sums 2n,
so 2n is its top eigenvalue; the corresponding right eigenvector is strictly
positive and, normalized so the fully nested pattern carries 1, empirically
consists of integers that count grid configurations per pattern.

Everything here is exact.  The kernel of (H - 2n) is computed by modular
Gaussian elimination over several word-sized primes, lifted by the Chinese
remainder theorem, and then certified by an exact integer matrix-vector
product; a single prime with nullity one certifies that the kernel is
one-dimensional.  No floating point is involved at any step.
"""

from __future__ import annotations

import dataclasses
import json
import os
import tempfile
from fractions import Fraction
from functools import lru_cache
from hashlib import sha256
from pathlib import Path

import numpy as np

from .errors import GuardLimitError, StructuralFailureError
from .fplgrid import a_total
from .linkpat import (
    LinkPattern,
    Orbit,
    _orbit_tables,
    enumerate_matches,
    nested_pattern,
    pattern_of_dyck,
)

DEFAULT_FULL_DIM_GUARD = 5000
DEFAULT_REDUCED_DIM_GUARD = 6000

CACHE_ENV_VAR = "FPLOOPS_CACHE_DIR"
_CACHE_FORMAT = "fploops-ground/1"

cache_hits = 0
_cache_dir_override: Path | None = None


# --- the generator action -----------------------------------------------------


def _apply_gen(match: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Image of ``match`` under the 0-based generator pairing points i, i+1."""
    m = len(match)
    ip = i + 1 if i + 1 < m else 0
    if match[i] == ip:
        return match
    j, k = match[i], match[ip]
    out = list(match)
    out[i], out[ip] = ip, i
    out[j], out[k] = k, j
    return tuple(out)


def apply_ei(i: int, p: LinkPattern) -> LinkPattern:
    """Act with the cut-and-rejoin operator at 1-based position i (cyclic).

    i = 2n pairs points 2n and 1.  If p already has the arch (i, i+1) it is
    returned unchanged; otherwise the former partners of i and i+1 are joined.
    """
    m = 2 * p.n
    if not 1 <= i <= m:
        raise ValueError(f"generator index {i} out of range 1..{m}")
    return LinkPattern(_apply_gen(p.match, i - 1))


# --- Hamiltonians ---------------------------------------------------------------


@dataclasses.dataclass
class SparseIntMatrix:
    """A square matrix with integer entries stored as {(row, col): value}."""

    dim: int
    entries: dict[tuple[int, int], int]

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def column_sums(self) -> list[int]:
        sums = [0] * self.dim
        for (_, c), v in self.entries.items():
            sums[c] += v
        return sums

    def mul_vector(self, vec) -> list:
        out = [0] * self.dim
        for (r, c), v in self.entries.items():
            out[r] += v * vec[c]
        return out


def build_hamiltonian(n: int, guard: int = DEFAULT_FULL_DIM_GUARD) -> SparseIntMatrix:
    """Sum of all 2n generators on the full pattern basis (lexicographic order).

    Entry (b, a) counts the generators mapping pattern a to pattern b; every
    column sums to 2n.
    """
    matches = enumerate_matches(n)
    if len(matches) > guard:
        raise GuardLimitError(
            f"full basis at n={n} has dimension {len(matches)} > guard {guard}"
        )
    index = {m: k for k, m in enumerate(matches)}
    entries: dict[tuple[int, int], int] = {}
    for a, match in enumerate(matches):
        for i in range(2 * n):
            b = index[_apply_gen(match, i)]
            entries[(b, a)] = entries.get((b, a), 0) + 1
    return SparseIntMatrix(len(matches), entries)


def build_reduced_hamiltonian(n: int) -> SparseIntMatrix:
    """The Hamiltonian acting on orbit-symmetrized sums of patterns.

    Entry (o', o) counts, over all members a of orbit o and all generators,
    the maps landing exactly on the canonical representative of orbit o'.
    For vectors constant on orbits this reproduces the full action.
    """
    orbs, lookup = _orbit_tables(n)
    rep_index = {orb.representative.match: k for k, orb in enumerate(orbs)}
    entries: dict[tuple[int, int], int] = {}
    for match, o in lookup.items():
        for i in range(2 * n):
            b = _apply_gen(match, i)
            op = rep_index.get(b)
            if op is not None:
                entries[(op, o)] = entries.get((op, o), 0) + 1
    return SparseIntMatrix(len(orbs), entries)


# --- exact kernel of (H - 2n) ---------------------------------------------------


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


@lru_cache(maxsize=1)
def _solver_primes(count: int = 20) -> tuple[int, ...]:
    out, cand = [], (1 << 30) - 1
    while len(out) < count:
        if _is_prime(cand):
            out.append(cand)
        cand -= 2
    return tuple(out)


def _nullspace_mod_p(dense: np.ndarray, p: int) -> list[np.ndarray]:
    """Kernel basis of a square int64 matrix modulo p (entries already reduced)."""
    a = dense.copy()
    dim = a.shape[0]
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(dim):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            # Columns left of c are exactly zero in every pivot row, so the
            # update can be restricted to the slice c: without changing the RREF.
            a[rows, c:] = (a[rows, c:] - np.outer(a[rows, c], a[r, c:])) % p
        pivot_of_col[c] = r
        r += 1
        if r == dim:
            break
    basis = []
    for f in range(dim):
        if f in pivot_of_col:
            continue
        v = np.zeros(dim, dtype=np.int64)
        v[f] = 1
        for c, pr in pivot_of_col.items():
            v[c] = (-int(a[pr, f])) % p
        basis.append(v)
    return basis


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """The residue mod m1*m2 matching r1 mod m1 and r2 mod m2 (m1, m2 coprime)."""
    return (r1 + ((r2 - r1) * pow(m1, -1, m2) % m2) * m1) % (m1 * m2)


def _rational_reconstruct(a: int, m: int) -> Fraction | None:
    """The fraction p/q with |p|, q <= sqrt(m/2) congruent to a mod m, if any."""
    bound = int((m // 2) ** 0.5)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if abs(s1) > bound or s1 == 0:
        return None
    frac = Fraction(r1, s1)
    return frac if (frac.numerator - a * frac.denominator) % m == 0 else None


def solve_top_kernel(matrix: SparseIntMatrix, eigenvalue: int, anchor: int) -> list:
    """The kernel vector of (matrix - eigenvalue*I) normalized to 1 at ``anchor``.

    Returns a list of ints when the normalized vector is integral (the
    expected situation), otherwise a list of Fractions.  Raises
    StructuralFailureError if any verified prime shows a kernel of dimension
    other than one, or if no candidate passes exact verification.
    """
    dim = matrix.dim
    shifted = dict(matrix.entries)
    for k in range(dim):
        shifted[(k, k)] = shifted.get((k, k), 0) - eigenvalue

    def verify(vec) -> bool:
        out = [0] * dim
        for (r, c), v in shifted.items():
            if vec[c]:
                out[r] += v * vec[c]
        return not any(out)

    rows = np.fromiter((k[0] for k in shifted), dtype=np.int64, count=len(shifted))
    cols = np.fromiter((k[1] for k in shifted), dtype=np.int64, count=len(shifted))
    vals = np.fromiter(shifted.values(), dtype=np.int64, count=len(shifted))

    residues: list[int] | None = None
    modulus = 1
    nullity_one_seen = False
    for p in _solver_primes():
        dense = np.zeros((dim, dim), dtype=np.int64)
        dense[rows, cols] = vals % p
        basis = _nullspace_mod_p(dense, p)
        if len(basis) != 1:
            continue
        nullity_one_seen = True
        v = basis[0]
        if int(v[anchor]) == 0:
            continue
        v = (v * pow(int(v[anchor]), p - 2, p)) % p
        if residues is None:
            residues, modulus = [int(t) for t in v], p
        else:
            residues = [_crt_pair(r1, modulus, int(r2), p) for r1, r2 in zip(residues, v)]
            modulus *= p
        lifted = [c if c <= modulus // 2 else c - modulus for c in residues]
        if verify(lifted):
            return lifted
        if modulus.bit_length() > 240:
            break
    if not nullity_one_seen:
        raise StructuralFailureError(
            f"eigenspace at eigenvalue {eigenvalue} is not one-dimensional "
            f"(checked {len(_solver_primes())} primes)"
        )
    if residues is not None:
        fractions = [_rational_reconstruct(c, modulus) for c in residues]
        if all(f is not None for f in fractions) and verify(fractions):
            return fractions
    raise StructuralFailureError(
        "kernel vector could not be certified; modular images never lifted to an "
        "exact solution"
    )


# --- the ground state -----------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class GroundState:
    """Exact top-eigenvector components, nested-pattern component normalized to 1.

    In the reduced basis there is one entry per dihedral orbit (keyed by the
    canonical representative); in the full basis one entry per pattern.
    """

    n: int
    basis: str
    reps: tuple[tuple[int, ...], ...]
    sizes: tuple[int, ...]
    components: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.components)

    def component_of(self, p: LinkPattern) -> int:
        """The component of pattern p (patterns in one orbit share a value)."""
        if p.n != self.n:
            raise ValueError(f"pattern size {p.n} differs from ground state size {self.n}")
        if self.basis == "reduced":
            return self.components[_orbit_tables(self.n)[1][p.match]]
        return self.components[self.reps.index(p.match)]

    def weighted_sum(self) -> int:
        """Sum of components weighted by orbit sizes: the total configuration count."""
        return sum(s * c for s, c in zip(self.sizes, self.components))

    def max_component(self) -> int:
        return max(self.components)

    def items(self) -> list[tuple[LinkPattern, int, int]]:
        """(representative pattern, orbit size, component) triples."""
        return [
            (LinkPattern(m), s, c)
            for m, s, c in zip(self.reps, self.sizes, self.components)
        ]


_memory_cache: dict[tuple[int, str], GroundState] = {}


def set_cache_dir(path: str | os.PathLike | None) -> None:
    """Override the on-disk cache directory (None restores the default)."""
    global _cache_dir_override
    _cache_dir_override = Path(path) if path is not None else None


def get_cache_dir() -> Path:
    if _cache_dir_override is not None:
        return _cache_dir_override
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "fploops"


def _cache_file(n: int, basis: str) -> Path:
    return get_cache_dir() / f"ground-n{n}-{basis}.json"


def _record_checksum(record: dict) -> str:
    return sha256(json.dumps(record, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _save_ground_state(state: GroundState) -> None:
    record = {
        "format": _CACHE_FORMAT,
        "n": state.n,
        "basis": state.basis,
        "orbits": [
            {"dyck": LinkPattern(m).dyck(), "size": s, "component": str(c)}
            for m, s, c in zip(state.reps, state.sizes, state.components)
        ],
    }
    payload = {"record": record, "sha256": _record_checksum(record)}
    path = _cache_file(state.n, state.basis)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_ground_state(n: int, basis: str) -> GroundState | None:
    path = _cache_file(n, basis)
    if not path.exists():
        return None
    try:
        payload = json.loads(path.read_text())
        record = payload["record"]
        if payload.get("sha256") != _record_checksum(record):
            return None
        if record.get("format") != _CACHE_FORMAT or record["n"] != n or record["basis"] != basis:
            return None
        reps, sizes, comps = [], [], []
        for row in record["orbits"]:
            reps.append(pattern_of_dyck(row["dyck"]).match)
            sizes.append(int(row["size"]))
            comps.append(int(row["component"]))
        return GroundState(n, basis, tuple(reps), tuple(sizes), tuple(comps))
    except (KeyError, ValueError, json.JSONDecodeError):
        return None


def ground_vector(
    n: int,
    basis: str = "reduced",
    use_cache: bool = True,
    full_guard: int = DEFAULT_FULL_DIM_GUARD,
    reduced_guard: int = DEFAULT_REDUCED_DIM_GUARD,
) -> GroundState:
    """Solve (H - 2n) x = 0 exactly and normalize the nested component to 1.

    Components must come out strictly positive (they always do: the matrix is
    irreducible with nonnegative entries); a non-integer normalized component
    would be surfaced as a StructuralFailureError carrying the exact rational.
    Results are cached in memory and on disk.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if basis not in ("full", "reduced"):
        raise ValueError(f"unknown basis {basis!r}")
    global cache_hits
    key = (n, basis)
    if use_cache and key in _memory_cache:
        cache_hits += 1
        return _memory_cache[key]
    if use_cache:
        loaded = _load_ground_state(n, basis)
        if loaded is not None:
            cache_hits += 1
            _memory_cache[key] = loaded
            return loaded

    nested = nested_pattern(n).match
    if basis == "reduced":
        orbs, lookup = _orbit_tables(n)
        if len(orbs) > reduced_guard:
            raise GuardLimitError(
                f"reduced basis at n={n} has dimension {len(orbs)} > guard {reduced_guard}"
            )
        matrix = build_reduced_hamiltonian(n)
        anchor = lookup[nested]
        reps = tuple(o.representative.match for o in orbs)
        sizes = tuple(o.size for o in orbs)
    else:
        matches = enumerate_matches(n)
        matrix = build_hamiltonian(n, guard=full_guard)
        anchor = matches.index(nested)
        reps = tuple(matches)
        sizes = (1,) * len(matches)

    vec = solve_top_kernel(matrix, 2 * n, anchor)
    bad = [v for v in vec if isinstance(v, Fraction) and v.denominator != 1]
    if bad:
        raise StructuralFailureError(
            f"normalized components are not integers at n={n}; first offender: {bad[0]}"
        )
    comps = tuple(int(v) for v in vec)
    if any(c <= 0 for c in comps):
        raise StructuralFailureError(
            f"non-positive component in the top eigenvector at n={n}: min={min(comps)}"
        )
    state = GroundState(n, basis, reps, sizes, comps)
    if use_cache:
        _memory_cache[key] = state
        try:
            _save_ground_state(state)
        except OSError:
            pass
    return state


def component(n: int, p: LinkPattern) -> int:
    """Exact eigenvector component of pattern p at size n (reduced-basis solve)."""
    return ground_vector(n).component_of(p)


def _arches_cross(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (i, j), (k, l) = sorted(a), sorted(b)
    if (i, j) > (k, l):
        (i, j), (k, l) = (k, l), (i, j)
    return i < k < j < l


def inclusive_count(n: int, required) -> int:
    """Sum of components over all patterns containing every required arch.

    ``required`` is an iterable of 1-based point pairs; they must be mutually
    noncrossing (otherwise no pattern could contain them all).  The empty set
    gives the total over all patterns.
    """
    arches = [tuple(sorted(pair)) for pair in required]
    m = 2 * n
    pts = [q for pair in arches for q in pair]
    if any(not 1 <= q <= m for q in pts):
        raise ValueError(f"arch endpoints out of range 1..{m}")
    if len(set(pts)) != len(pts):
        raise ValueError("required arches share endpoints")
    for x in range(len(arches)):
        for y in range(x + 1, len(arches)):
            if _arches_cross(arches[x], arches[y]):
                raise ValueError(f"required arches {arches[x]} and {arches[y]} cross")
    state = ground_vector(n)
    _, lookup = _orbit_tables(n)
    wanted = [(i - 1, j - 1) for i, j in arches]
    total = 0
    for match in enumerate_matches(n):
        if all(match[i] == j for i, j in wanted):
            total += state.components[lookup[match]]
    return total
