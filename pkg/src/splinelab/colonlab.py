"""Colon ideals <s^p, t^q> : (s+t)^r in two variables and related checks.

Binary forms of degree d are stored as coefficient vectors indexed by the
exponent of s: coordinate j is the coefficient of s^j t^(d-j).  Monomials
are exponent pairs (i, j) for s^i t^j.  Lex order has s > t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import comb
from typing import Sequence

from . import exactla
from .exactla import ExactMatrix, SubspaceBasis, determinant, kernel_basis
from .polyring import HomogeneousForm, n_monomials, monomial_basis, power


class InitialIdealMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class ColonSpec:
    p: int
    q: int
    r: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1 or self.r < 0:
            raise ValueError("need p, q >= 1 and r >= 0")

    @property
    def proper(self) -> bool:
        return self.p + self.q - self.r >= 2

    def require_proper(self) -> None:
        if not self.proper:
            raise ValueError(f"{self} is the unit ideal (p + q - r <= 1)")


def _binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def colon_case(c: ColonSpec) -> int:
    c.require_proper()
    if c.p + c.r - c.q <= 1:
        return 1
    if c.q + c.r - c.p <= 1:
        return 2
    return 3


def colon_gen_degrees(c: ColonSpec) -> tuple[int, int]:
    """Degrees a <= b of the two generators of the complete intersection."""
    case = colon_case(c)
    p, q, r = c.p, c.q, c.r
    if case == 1:
        return (min(p, q - r), max(p, q - r))
    if case == 2:
        return (min(q, p - r), max(q, p - r))
    n = p + q - r
    return (n // 2, n - n // 2)


def colon_hf(c: ColonSpec, d: int) -> int:
    a, b = colon_gen_degrees(c)

    def lin(x):
        return x if x >= 1 else 0

    return lin(d + 1 - a) + lin(d + 1 - b) - lin(d + 1 - a - b)


def coeff_matrix(c: ColonSpec, d: int) -> ExactMatrix:
    """Conditions on f of degree d for f (s+t)^r to lie in <s^p, t^q>.

    Row i is the coefficient of s^u t^(d+r-u) with u = d+r-q+1+i, for
    i = 0..p+q-r-d-2; these are exactly the monomials of degree d+r outside
    the ideal, plus zero rows when d+r-q+1 < 0.
    """
    c.require_proper()
    if d < 0:
        raise ValueError("degree must be non-negative")
    nrows = max(c.p + c.q - c.r - d - 1, 0)
    base = d + c.r - c.q + 1
    entries = {(i, j): _binom(c.r, base + i - j) for i in range(nrows) for j in range(d + 1)}
    return ExactMatrix(nrows, d + 1, entries)


def colon_piece(c: ColonSpec, d: int) -> SubspaceBasis:
    """I_d as the kernel of the coefficient matrix."""
    m = coeff_matrix(c, d)
    if m.nrows == 0:
        return SubspaceBasis.from_vectors(d + 1, [[int(i == j) for i in range(d + 1)] for j in range(d + 1)])
    return kernel_basis(m)


def _to_s_index(vec_lex: Sequence, d: int) -> list:
    # lex basis lists s^d, s^(d-1) t, ..., t^d; coordinate j is s^j t^(d-j)
    return list(reversed(vec_lex))


def brute_force_colon(c: ColonSpec, d: int) -> SubspaceBasis:
    """I_d by expanding f (s+t)^r and keeping only monomials outside <s^p, t^q>."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    mult = power(HomogeneousForm.linear([1, 1]), c.r)
    target = monomial_basis(2, d + c.r)
    bad = [m for m in target.monomials if m[0] < c.p and m[1] < c.q]
    columns = []
    for j in range(d + 1):
        prod = HomogeneousForm.monomial((j, d - j)) * mult
        columns.append([prod.coefficient(m) for m in bad])
    rows = [[columns[j][i] for j in range(d + 1)] for i in range(len(bad))]
    if not rows:
        return SubspaceBasis.from_vectors(d + 1, [[int(i == j) for i in range(d + 1)] for j in range(d + 1)])
    return kernel_basis(rows)


def _shift_up(vec: Sequence, var: str) -> list:
    """Multiply a binary form (s-exponent coordinates) by s or t."""
    return [0] + list(vec) if var == "s" else list(vec) + [0]


def brute_force_generator_degrees(c: ColonSpec, dmax: int) -> list[int]:
    """Degrees of minimal generators found degree by degree up to dmax."""
    degs = []
    prev = None
    for d in range(dmax + 1):
        cur = brute_force_colon(c, d)
        if prev is None or prev.dim == 0:
            new = cur.dim
        else:
            imgs = [_shift_up(v, x) for v in prev.vectors for x in "st"]
            new = cur.dim - exactla.rank(imgs)
        degs.extend([d] * new)
        prev = cur
    return degs


def brute_force_generators(c: ColonSpec, dmax: int) -> list[HomogeneousForm]:
    """Minimal generators (as binary forms in s, t) extracted degree by degree."""
    gens: list[list] = []
    gen_degs: list[int] = []
    for d in range(dmax + 1):
        cur = brute_force_colon(c, d)
        span = []
        for g, gd in zip(gens, gen_degs):
            for k in range(d - gd + 1):
                # g * s^k t^(d-gd-k)
                span.append([0] * k + list(g) + [0] * (d - gd - k))
        base_rank = exactla.rank(span) if span else 0
        for v in cur.vectors:
            if (exactla.rank(span + [list(v)]) if span else 1) > base_rank:
                span.append(list(v))
                base_rank += 1
                gens.append(list(v))
                gen_degs.append(d)
    return [HomogeneousForm(2, {(j, gd - j): x for j, x in enumerate(g)}, degree=gd) for g, gd in zip(gens, gen_degs)]


def lex_segment(a: int, b: int) -> list[tuple[int, int]]:
    """Generators of L(a, b): s^a and s^(a-i) t^(b-a+2i-1) for i = 1..a."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    return [(a, 0)] + [(a - i, b - a + 2 * i - 1) for i in range(1, a + 1)]


def _divides(m: tuple[int, ...], n: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(m, n))


def leading_monomials(c: ColonSpec, d: int) -> list[tuple[int, int]]:
    """Lex-leading monomials of I_d, read off an echelon form."""
    basis = colon_piece(c, d)
    if basis.dim == 0:
        return []
    # columns ordered from the lex-largest monomial s^d down to t^d
    lex_rows = [list(reversed(v)) for v in basis.vectors]
    _, pivots = exactla.echelon_form(lex_rows)
    return [(d - k, k) for k in pivots]


def initial_ideal(c: ColonSpec, dmax: int | None = None, check: bool = True) -> list[tuple[int, int]]:
    """Minimal generators of in(I) up to dmax; checked against L(a, b)."""
    a, b = colon_gen_degrees(c)
    if dmax is None:
        dmax = a + b
    if dmax < a + b:
        raise ValueError("dmax must be at least a + b")
    gens: list[tuple[int, int]] = []
    for d in range(dmax + 1):
        for m in leading_monomials(c, d):
            if not any(_divides(g, m) for g in gens):
                gens.append(m)
    gens.sort(reverse=True)
    if check and gens != lex_segment(a, b):
        raise InitialIdealMismatch(f"in(I) = {gens} but L({a},{b}) = {lex_segment(a, b)}")
    return gens


# ---------------------------------------------------------------------------
# Schur determinants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if not parts or any(x < 1 for x in parts) or any(x < y for x, y in zip(parts, parts[1:])):
            raise ValueError("a partition is a nonempty weakly decreasing tuple of positive integers")
        object.__setattr__(self, "parts", parts)

    def conjugate(self) -> "Partition":
        return Partition(tuple(sum(1 for x in self.parts if x > i) for i in range(self.parts[0])))

    def cells(self):
        for i, row in enumerate(self.parts):
            for j in range(row):
                yield i, j

    def hook(self, i: int, j: int) -> int:
        conj = self.conjugate().parts
        return (self.parts[i] - j) + (conj[j] - i) - 1

    @property
    def size(self) -> int:
        return sum(self.parts)


def schur_matrix(mu: Partition, r: int) -> ExactMatrix:
    k = len(mu.parts)
    return ExactMatrix(k, k, {(i, j): _binom(r, mu.parts[j] + i - j) for i in range(k) for j in range(k)})


def hook_content(lam: Partition, r: int) -> int:
    """s_lambda(1, ..., 1) with r ones via the hook-content formula."""
    val = Fraction(1)
    for i, j in lam.cells():
        val *= Fraction(r + j - i, lam.hook(i, j))
    assert val.denominator == 1
    return int(val)


@dataclass(frozen=True)
class SchurCheck:
    det: int
    hook_value: int

    @property
    def equal(self) -> bool:
        return self.det == self.hook_value


def schur_check(mu: Partition, r: int) -> SchurCheck:
    if r < mu.parts[0]:
        raise ValueError("need r >= largest part of mu")
    det = determinant(schur_matrix(mu, r))
    return SchurCheck(int(det), hook_content(mu.conjugate(), r))


# ---------------------------------------------------------------------------
# three-variable saturation
# ---------------------------------------------------------------------------

def sum_saturation_check(a: int, b: int, c: int, d: int) -> tuple[int, bool]:
    """Whether L(a,b)(x,z) + L(c,d)(y,z) contains every monomial of degree N."""
    if not (1 <= a <= b and 1 <= c <= d):
        raise ValueError("need 1 <= a <= b and 1 <= c <= d")
    n = max(a + d - 1, b + c - 1)
    gens = [(i, 0, k) for i, k in lex_segment(a, b)] + [(0, j, k) for j, k in lex_segment(c, d)]
    full = all(any(_divides(g, m) for g in gens) for m in monomial_basis(3, n).monomials)
    return n, full


def initial3_M(a1: int, a2: int, b1: int, b2: int, at: int) -> int:
    return at + max(a1 + a2, a1 + b1, a1 + b2, a2 + b1, a2 + b2, b1 + b2,
                    at + a1, at + a2, at + b1, at + b2)


@dataclass(frozen=True)
class Initial3Report:
    M: int
    D: int
    degrees1: tuple[int, int]
    degrees2: tuple[int, int]
    N: int
    dim_sum: int
    dim_S: int

    @property
    def full(self) -> bool:
        return self.dim_sum == self.dim_S

    @property
    def ok(self) -> bool:
        return self.full and self.N <= self.D


@lru_cache(maxsize=None)
def _piece_vectors(c: ColonSpec, d: int) -> tuple[tuple[Fraction, ...], ...]:
    return colon_piece(c, d).vectors if d >= 0 else ()


def cor_initial3_check(a1: int, a2: int, b1: int, b2: int, at: int) -> Initial3Report:
    """Check (I1 + I2)_D = S_D for the actual colon ideals, D = M - b1 - b2 - 1.

    I1 = <x^a1, z^at> : (x+z)^b1 and I2 = <y^a2, z^at> : (y+z)^b2 in k[x,y,z].
    """
    if min(a1, a2, b1, b2, at) < 1:
        raise ValueError("all parameters must be >= 1")
    for ai, bi in ((a1, b1), (a2, b2)):
        if ai + at - bi < 2 or bi + at - ai < 2:
            raise ValueError("hypotheses a_i + a_tau - b_i >= 2 and b_i + a_tau - a_i >= 2 fail")
    c1, c2 = ColonSpec(a1, at, b1), ColonSpec(a2, at, b2)
    m = initial3_M(a1, a2, b1, b2, at)
    dd = m - b1 - b2 - 1
    basis = monomial_basis(3, dd)
    vecs = []
    # (I1 S)_D = sum over j of y^j (I1)_{D-j}; coordinate k of a piece is x^k z^(deg-k)
    for j in range(dd + 1):
        deg = dd - j
        for v in _piece_vectors(c1, deg):
            row = [0] * len(basis)
            for k, x in enumerate(v):
                if x:
                    row[basis.index[(k, j, deg - k)]] = x
            vecs.append(row)
        for v in _piece_vectors(c2, deg):
            row = [0] * len(basis)
            for k, x in enumerate(v):
                if x:
                    row[basis.index[(j, k, deg - k)]] = x
            vecs.append(row)
    rk = exactla.rank(vecs) if vecs else 0
    g1, g2 = colon_gen_degrees(c1), colon_gen_degrees(c2)
    n, _ = sum_saturation_check(*g1, *g2)
    return Initial3Report(m, dd, g1, g2, n, rk, n_monomials(3, dd))


def initial3_tuples(vmax: int = 4):
    """All parameter tuples with entries in 1..vmax satisfying the hypotheses."""
    for t in cartesian(range(1, vmax + 1), repeat=5):
        a1, a2, b1, b2, at = t
        if all(ai + at - bi >= 2 and bi + at - ai >= 2 for ai, bi in ((a1, b1), (a2, b2))):
            yield t


@dataclass(frozen=True)
class SweepRow:
    p: int
    q: int
    r: int
    a: int
    b: int
    case: int
    hf_match: bool
    initial_match: bool


def colon_sweep(pmax: int = 6, qmax: int = 6, rmax: int = 6) -> list[SweepRow]:
    """Compare the closed forms with direct linear algebra over a parameter box."""
    rows = []
    for p in range(1, pmax + 1):
        for q in range(1, qmax + 1):
            for r in range(0, rmax + 1):
                c = ColonSpec(p, q, r)
                if not c.proper:
                    continue
                a, b = colon_gen_degrees(c)
                hf_ok = all(colon_piece(c, d).dim == colon_hf(c, d) == brute_force_colon(c, d).dim
                            for d in range(a + b + 3))
                init = initial_ideal(c, a + b, check=False)
                rows.append(SweepRow(p, q, r, a, b, colon_case(c), hf_ok, init == lex_segment(a, b)))
    return rows
