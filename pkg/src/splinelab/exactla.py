"""Exact rational linear algebra with a certified modular shortcut.

Exact results come from fraction-free integer elimination written here.
The modular side reduces matrices modulo large primes and delegates the
elimination to FLINT's ``nmod_mat``; agreement across primes is reported
so callers can fall back to the exact route when the primes disagree.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import flint
import sympy

log = logging.getLogger(__name__)

ExactScalar = Fraction

PRIME_LOWER = 2**30
PRIME_UPPER = 2**31


def to_scalar(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class ExactMatrix:
    """Sparse matrix over Q keyed by (row, col)."""

    __slots__ = ("nrows", "ncols", "_entries")

    def __init__(self, nrows: int, ncols: int, entries=None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.nrows = nrows
        self.ncols = ncols
        self._entries: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            v = to_scalar(v)
            if v:
                self._entries[(i, j)] = v

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                if v:
                    entries[(i, j)] = v
        return cls(len(rows), ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def items(self):
        return self._entries.items()

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(key)
        return self._entries.get((i, j), Fraction(0))

    def to_rows(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self._entries.items():
            rows[i][j] = v
        return rows

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self._entries.items()})

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (k, j), v in other._entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self._entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), Fraction(0)) + a * b
        return ExactMatrix(self.nrows, other.ncols, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={len(self._entries)})"


def block_matrix(blocks: dict[tuple[int, int], ExactMatrix], row_sizes: Sequence[int],
                 col_sizes: Sequence[int]) -> ExactMatrix:
    """Assemble a matrix from blocks placed on a grid of given sizes."""
    row_off = [0]
    for s in row_sizes:
        row_off.append(row_off[-1] + s)
    col_off = [0]
    for s in col_sizes:
        col_off.append(col_off[-1] + s)
    entries = {}
    for (bi, bj), blk in blocks.items():
        if blk.shape != (row_sizes[bi], col_sizes[bj]):
            raise ValueError(f"block ({bi}, {bj}) has shape {blk.shape}")
        for (i, j), v in blk.items():
            entries[(row_off[bi] + i, col_off[bj] + j)] = v
    return ExactMatrix(row_off[-1], col_off[-1], entries)


# ---------------------------------------------------------------------------
# fraction-free elimination
# ---------------------------------------------------------------------------

def _integer_row(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive integer row (same span)."""
    fr = [to_scalar(v) for v in row]
    den = 1
    for v in fr:
        if v.denominator != 1:
            den = lcm(den, v.denominator)
    ints = [int(v * den) for v in fr]
    return _primitive(ints)


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def _as_rows(m) -> tuple[list[list], int]:
    if isinstance(m, ExactMatrix):
        return m.to_rows(), m.ncols
    rows = [list(r) for r in m]
    return rows, (len(rows[0]) if rows else 0)


def _forward_eliminate(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Integer row echelon form.

    Pivot column is the leftmost column with a nonzero entry among the
    remaining rows; the pivot row is the one whose entry there has the
    smallest bit size.  Rows are kept primitive to curb growth.
    """
    active = [r for r in rows if any(r)]
    done: list[list[int]] = []
    pivots: list[int] = []
    col = 0
    while active and col < ncols:
        cands = [r for r in active if r[col]]
        if not cands:
            col += 1
            continue
        prow = min(cands, key=lambda r: abs(r[col]).bit_length())
        pv = prow[col]
        nxt = []
        for r in active:
            if r is prow:
                continue
            a = r[col]
            if a:
                g = gcd(a, pv)
                ma, mp = pv // g, a // g
                r = [ma * x - mp * y for x, y in zip(r, prow)]
                if not any(r):
                    continue
                r = _primitive(r)
            nxt.append(r)
        done.append(prow)
        pivots.append(col)
        active = nxt
        col += 1
    return done, pivots


def echelon_form(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q with its pivot columns."""
    rows, ncols = _as_rows(m)
    ints = [_integer_row(r) for r in rows]
    ech, pivots = _forward_eliminate(ints, ncols)
    red = [[Fraction(x, r[p]) for x in r] for r, p in zip(ech, pivots)]
    for k in range(len(red) - 1, -1, -1):
        p = pivots[k]
        for i in range(k):
            f = red[i][p]
            if f:
                red[i] = [x - f * y for x, y in zip(red[i], red[k])]
    return red, pivots


def rank(m) -> int:
    rows, ncols = _as_rows(m)
    return len(_forward_eliminate([_integer_row(r) for r in rows], ncols)[1])


def determinant(m) -> Fraction:
    """Bareiss determinant of a square matrix."""
    rows, n = _as_rows(m)
    if len(rows) != n:
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    den = 1
    a = []
    for r in rows:
        fr = [to_scalar(v) for v in r]
        d = 1
        for v in fr:
            d = lcm(d, v.denominator)
        den *= d
        a.append([int(v * d) for v in fr])
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], den)


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^n stored as the RREF of a spanning set."""

    ambient_dim: int
    vectors: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "SubspaceBasis":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length differs from ambient dimension")
        if not vecs:
            return cls(ambient_dim, ())
        red, _ = echelon_form(vecs)
        return cls(ambient_dim, tuple(tuple(r) for r in red))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def contains(self, v: Sequence) -> bool:
        return SubspaceBasis.from_vectors(self.ambient_dim, list(self.vectors) + [list(v)]).dim == self.dim


def kernel_basis(m) -> SubspaceBasis:
    """Right kernel of ``m`` over Q."""
    rows, ncols = _as_rows(m)
    red, pivots = echelon_form(rows) if rows else ([], [])
    pivset = set(pivots)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        vecs.append(v)
    return SubspaceBasis.from_vectors(ncols, vecs)


def subspace_sum_dim(bases: Sequence[SubspaceBasis]) -> int:
    if not bases:
        return 0
    n = bases[0].ambient_dim
    if any(b.ambient_dim != n for b in bases):
        raise ValueError("subspaces live in different ambient spaces")
    vecs = [list(v) for b in bases for v in b.vectors]
    return rank(vecs) if vecs else 0


def interpolate_poly(points: Sequence[tuple], degree: int) -> list[Fraction]:
    """Coefficients c0..c_degree of the unique polynomial through the points.

    Exactly ``degree + 1`` points with distinct abscissae are required.
    """
    if len(points) != degree + 1:
        raise ValueError(f"need exactly {degree + 1} points, got {len(points)}")
    xs = [to_scalar(x) for x, _ in points]
    ys = [to_scalar(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be distinct")
    # Newton divided differences, then expand to the monomial basis
    coef = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[k] * p for s, p in zip(shifted, poly)]
        poly[0] += coef[k]
    return poly


# ---------------------------------------------------------------------------
# modular route
# ---------------------------------------------------------------------------

def check_primes(primes: Sequence[int]) -> None:
    if not primes:
        raise ValueError("at least one prime is required")
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    for p in primes:
        if p <= PRIME_LOWER or not sympy.isprime(p):
            raise ValueError(f"{p} is not a prime above 2^30")


def default_primes(seed: int = 0, count: int = 2) -> tuple[int, ...]:
    """Deterministic primes in (2^30, 2^31) derived from ``seed``."""
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        p = sympy.nextprime(rng.randrange(PRIME_LOWER, PRIME_UPPER - 10**6))
        if p not in out:
            out.append(int(p))
    return tuple(out)


def reduce_mod(value, p: int) -> int:
    v = to_scalar(value)
    if v.denominator % p == 0:
        raise ZeroDivisionError(f"denominator divisible by {p}")
    return v.numerator * pow(v.denominator, -1, p) % p


def nmod_matrix(rows: Sequence[Sequence], ncols: int, p: int) -> "flint.nmod_mat":
    flat = [reduce_mod(v, p) if not isinstance(v, int) else v % p for r in rows for v in r]
    return flint.nmod_mat(len(rows), ncols, flat, p)


@dataclass(frozen=True)
class ModularRank:
    rank: int
    ranks: tuple[int, ...]
    primes: tuple[int, ...]

    @property
    def agree(self) -> bool:
        return len(set(self.ranks)) == 1


def modular_rank(m, primes: Sequence[int]) -> ModularRank:
    """Rank modulo each prime; ``rank`` is the maximum seen (a lower bound over Q)."""
    check_primes(primes)
    rows, ncols = _as_rows(m)
    ints = [_integer_row(r) for r in rows]
    ranks = tuple(nmod_matrix(ints, ncols, p).rank() for p in primes)
    return ModularRank(max(ranks), ranks, tuple(primes))


def certified_rank(m, primes: Sequence[int] | None = None) -> int:
    """Modular rank when all primes agree, exact rank otherwise."""
    res = modular_rank(m, primes or default_primes())
    if res.agree:
        return res.rank
    log.warning("modular ranks %s disagree; recomputing exactly", res.ranks)
    return rank(m)
