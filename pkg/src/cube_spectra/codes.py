"""Binary codes as bitmask sets: distances, duals, enumeration, and file i/o.

A code is a nonempty subset of {0,1}^n stored as a sorted tuple of bitmasks;
a linear code is stored by its reduced row-echelon generator matrix over F2,
one bitmask per row, with the pivot of each row at its lowest set bit.  Both
are frozen values with structural equality.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cube_fourier import (
    CubeFunction,
    IntCubeFunction,
    hamming_weights,
    int_wht,
)


class CodeFileError(ValueError):
    """Malformed code file."""


class SingletonDistanceWarning(UserWarning):
    """Minimal distance requested for a one-word code (reported as n+1)."""


def _popcounts(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a.astype(np.uint64))


@dataclass(frozen=True)
class Code:
    """Nonempty subset of {0,1}^n; points are deduplicated and sorted."""

    n: int
    points: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("block length must be at least 1")
        pts = tuple(sorted(set(int(p) for p in self.points)))
        if not pts:
            raise ValueError("a code must contain at least one word")
        if pts[0] < 0 or pts[-1] >= (1 << self.n):
            raise ValueError(f"codewords must lie in [0, 2^{self.n})")
        object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return len(self.points)

    def indicator(self) -> CubeFunction:
        vals = np.zeros(1 << self.n)
        vals[list(self.points)] = 1.0
        return CubeFunction(self.n, vals)

    def int_indicator(self) -> IntCubeFunction:
        vals = np.zeros(1 << self.n, dtype=np.int64)
        vals[list(self.points)] = 1
        return IntCubeFunction(self.n, vals)


@dataclass(frozen=True)
class LinearCode:
    """F2-subspace given by generator rows in reduced row-echelon form.

    Row pivots (lowest set bits) are strictly increasing and each pivot
    column is zero in every other row, so the representation is canonical:
    two equal subspaces compare equal.  Zero rows are rejected; the trivial
    subspace {0} is the empty generator tuple.
    """

    n: int
    generators: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("block length must be at least 1")
        gens = tuple(int(g) for g in self.generators)
        pivots = []
        for g in gens:
            if not 0 < g < (1 << self.n):
                raise ValueError(f"generator {g} out of range for n={self.n}")
            pivots.append((g & -g).bit_length() - 1)
        if sorted(pivots) != pivots or len(set(pivots)) != len(pivots):
            raise ValueError("generator pivots must be strictly increasing")
        for i, g in enumerate(gens):
            for j, p in enumerate(pivots):
                if i != j and (g >> p) & 1:
                    raise ValueError("generators are not fully reduced")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int:
        return len(self.generators)

    @classmethod
    def from_spanning(cls, n: int, rows) -> "LinearCode":
        """Reduce an arbitrary spanning set to canonical echelon form."""
        return cls(n, _rref(rows))

    def expand(self) -> Code:
        span = [0]
        for g in self.generators:
            span += [x ^ g for x in span]
        return Code(self.n, tuple(span))


def _rref(rows) -> tuple[int, ...]:
    by_pivot: dict[int, int] = {}
    for row in rows:
        cur = int(row)
        # one pass suffices: stored rows carry no pivot bits but their own
        for q, other in by_pivot.items():
            if (cur >> q) & 1:
                cur ^= other
        if not cur:
            continue
        p = (cur & -cur).bit_length() - 1
        for q, other in by_pivot.items():
            if (other >> p) & 1:
                by_pivot[q] = other ^ cur
        by_pivot[p] = cur
    return tuple(by_pivot[p] for p in sorted(by_pivot))


@dataclass(frozen=True)
class DistanceDistribution:
    """counts[w] = (number of ordered codeword pairs at distance w) / |C|."""

    n: int
    counts: tuple[float, ...]

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise ValueError("need one count per weight 0..n")
        object.__setattr__(self, "counts", tuple(float(c) for c in self.counts))


def min_distance(c: Code) -> int:
    """Smallest Hamming distance between distinct codewords.

    A singleton code has no pairs; by convention it reports n+1 and emits
    :class:`SingletonDistanceWarning` so callers can reject it explicitly.
    """
    if c.size == 1:
        warnings.warn(
            f"minimal distance of a one-word code is undefined; reporting {c.n + 1}",
            SingletonDistanceWarning,
            stacklevel=2,
        )
        return c.n + 1
    pts = np.array(c.points, dtype=np.uint64)
    best = c.n
    for i in range(len(pts) - 1):
        d = int(_popcounts(pts[i] ^ pts[i + 1 :]).min())
        if d < best:
            best = d
            if best == 1:
                break
    return best


@lru_cache(maxsize=1024)
def _pair_counts(c: Code) -> np.ndarray:
    """counts[x] = number of ordered pairs (u, v) in C^2 with u XOR v = x.

    Exact: square the unnormalized integer transform of the indicator and
    transform back; every value is 2^n * counts[x], an exact int64.
    """
    t = int_wht(c.int_indicator()).values.copy()
    t *= t
    from .cube_fourier import _butterfly

    back = _butterfly(t)
    assert not (back & ((1 << c.n) - 1)).any()
    counts = back >> c.n
    counts.flags.writeable = False
    return counts


def autocorrelation(c: Code) -> CubeFunction:
    """The function x -> mean_y 1_C(y) 1_C(x XOR y); exact and nonnegative."""
    return CubeFunction(c.n, _pair_counts(c) / float(1 << c.n))


def min_distance_autocorrelation(c: Code) -> int:
    """Distance via the support of the autocorrelation; exact integer route."""
    counts = _pair_counts(c)
    w = hamming_weights(c.n)
    hit = (counts != 0) & (w > 0)
    if not hit.any():
        return c.n + 1
    return int(w[hit].min())


def dual_distance(c: Code) -> int:
    """Largest d such that the transform of 1_C vanishes on 0 < |S| < d.

    Computed on the unnormalized integer transform so the vanishing test is
    exact.  Returns n+1 when the transform vanishes at every S != 0 (the
    whole cube), and 1 when some weight-1 coefficient is nonzero.
    """
    t = int_wht(c.int_indicator()).values
    w = hamming_weights(c.n)
    hit = (t != 0) & (w > 0)
    if not hit.any():
        return c.n + 1
    return int(w[hit].min())


def dual_code(c: LinearCode) -> LinearCode:
    """Generator of the orthogonal subspace over F2."""
    pivots = [(g & -g).bit_length() - 1 for g in c.generators]
    pivot_set = set(pivots)
    basis = []
    for col in range(c.n):
        if col in pivot_set:
            continue
        v = 1 << col
        for g, p in zip(c.generators, pivots):
            if (g >> col) & 1:
                v |= 1 << p
        basis.append(v)
    dual = LinearCode.from_spanning(c.n, basis)
    assert c.dim + dual.dim == c.n
    return dual


def distance_distribution(c: Code) -> DistanceDistribution:
    counts = _pair_counts(c)
    w = hamming_weights(c.n)
    per_weight = np.bincount(w, weights=counts.astype(np.float64), minlength=c.n + 1)
    return DistanceDistribution(c.n, tuple(per_weight / c.size))


def enumerate_linear_codes(n: int, k: int):
    """Yield every k-dimensional subspace of F2^n exactly once.

    Enumerates canonical echelon forms directly: choose pivot columns, then
    fill the free positions (non-pivot columns to the right of each pivot)
    in all 2^free ways.  Count per pivot set multiplies out to the Gaussian
    binomial coefficient.
    """
    if not (1 <= k <= n <= 8):
        raise ValueError(f"enumeration supports 1 <= k <= n <= 8, got n={n} k={k}")
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [
            [col for col in range(n) if col not in pivot_set and col > p]
            for p in pivots
        ]
        total = sum(len(f) for f in free)
        for bits in range(1 << total):
            rows = []
            t = 0
            for p, cols in zip(pivots, free):
                row = 1 << p
                for col in cols:
                    if (bits >> t) & 1:
                        row |= 1 << col
                    t += 1
                rows.append(row)
            yield LinearCode(n, tuple(rows))


def random_code(n: int, min_d: int, seed: int = 0) -> Code:
    """Greedy random code with pairwise distance >= min_d.

    Scans a seeded permutation of the cube, keeping every point compatible
    with all previously kept ones; the result is maximal by inclusion and
    deterministic for a fixed seed.  min_d larger than n leaves no room for
    a second word, so the result degenerates to a single random point.
    """
    if min_d < 1:
        raise ValueError(f"need min_d >= 1, got {min_d}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(1 << n).astype(np.uint64)
    if min_d == 1:
        return Code(n, tuple(range(1 << n)))
    chosen = np.empty(1 << n, dtype=np.uint64)
    count = 0
    for p in perm:
        if count == 0 or int(_popcounts(chosen[:count] ^ p).min()) >= min_d:
            chosen[count] = p
            count += 1
    return Code(n, tuple(int(x) for x in chosen[:count]))


@lru_cache(maxsize=None)
def max_code_size_exact(n: int, d: int) -> int:
    """Exact maximum size of a length-n code with minimal distance d.

    Branch-and-bound maximum clique on the distance->=d graph over all 2^n
    points, with candidate sets as Python-int bitsets and a greedy-coloring
    bound.  Practical up to n = 8; d = 1 is the complete graph (whole cube).
    """
    if not (1 <= d <= n <= 8):
        raise ValueError(f"exact search supports 1 <= d <= n <= 8, got n={n} d={d}")
    if d == 1:
        return 1 << n
    size = 1 << n
    full = (1 << size) - 1
    adj = []
    for v in range(size):
        row = 0
        for u in range(size):
            if u != v and (u ^ v).bit_count() >= d:
                row |= 1 << u
        adj.append(row)

    # greedy clique in index order seeds the incumbent
    best = 0
    cand = full
    while cand:
        v = (cand & -cand).bit_length() - 1
        best += 1
        cand &= adj[v]

    def color_order(pool: int):
        order, bounds = [], []
        color = 0
        while pool:
            color += 1
            avail = pool
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append(v)
                bounds.append(color)
                avail &= ~(1 << v) & ~adj[v]
                pool &= ~(1 << v)
        return order, bounds

    def expand(pool: int, depth: int):
        nonlocal best
        order, bounds = color_order(pool)
        for i in range(len(order) - 1, -1, -1):
            if depth + bounds[i] <= best:
                return
            v = order[i]
            if depth + 1 > best:
                best = depth + 1
            nxt = pool & adj[v]
            if nxt:
                expand(nxt, depth + 1)
            pool &= ~(1 << v)

    expand(full, 0)
    return best


# --- code files ---------------------------------------------------------------
#
# UTF-8 text, one codeword per line.  Either 0/1 strings, all of the same
# length n (leftmost character is coordinate n-1), or 0x-prefixed hex words
# together with an explicit "n=<int>" header line.  '#' starts a comment.

def parse_code_text(text: str) -> Code:
    n_header = None
    words: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        compact = line.replace(" ", "")
        if compact.lower().startswith("n="):
            try:
                n_header = int(compact[2:])
            except ValueError:
                raise CodeFileError(f"line {lineno}: bad header {line!r}") from None
            if n_header < 1:
                raise CodeFileError(f"line {lineno}: n must be positive")
            continue
        words.append((lineno, line))
    if not words:
        raise CodeFileError("no codewords found")

    bit_lengths = set()
    masks = []
    for lineno, word in words:
        if word.lower().startswith("0x"):
            if n_header is None:
                raise CodeFileError(
                    f"line {lineno}: hex codewords require an n=<int> header"
                )
            try:
                masks.append(int(word, 16))
            except ValueError:
                raise CodeFileError(f"line {lineno}: bad hex word {word!r}") from None
        elif set(word) <= {"0", "1"}:
            bit_lengths.add(len(word))
            if len(bit_lengths) > 1:
                raise CodeFileError(
                    f"line {lineno}: codeword length {len(word)} differs from "
                    f"{bit_lengths - {len(word)}}"
                )
            masks.append(int(word, 2))
        else:
            raise CodeFileError(f"line {lineno}: not a 0/1 or 0x word: {word!r}")

    if bit_lengths:
        n_bits = bit_lengths.pop()
        if n_header is not None and n_header != n_bits:
            raise CodeFileError(
                f"header says n={n_header} but codewords have length {n_bits}"
            )
        n = n_bits
    else:
        n = n_header
    try:
        return Code(n, tuple(masks))
    except ValueError as exc:
        raise CodeFileError(str(exc)) from None


def format_code_text(c: Code) -> str:
    return "".join(format(p, f"0{c.n}b") + "\n" for p in c.points)


def read_code_file(path) -> Code:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code_text(fh.read())


def write_code_file(c: Code, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_code_text(c))
