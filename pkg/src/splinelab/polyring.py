"""Graded polynomial rings in at most four variables.

Monomials are exponent tuples.  Within a fixed degree the basis is listed in
graded lex order with x0 > x1 > ..., which in one degree is plain
descending lex order on exponent tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm
from typing import Iterable, Mapping, Sequence

from .exactla import ExactMatrix, kernel_basis, to_scalar

MAX_VARS = 4

Monomial = tuple[int, ...]


def _check_nvars(nvars: int) -> None:
    if not 1 <= nvars <= MAX_VARS:
        raise ValueError(f"number of variables must be in 1..{MAX_VARS}, got {nvars}")


def n_monomials(nvars: int, d: int) -> int:
    """Dimension of the degree-d piece; zero for negative d."""
    _check_nvars(nvars)
    return comb(d + nvars - 1, nvars - 1) if d >= 0 else 0


def _compositions(nvars: int, d: int) -> list[Monomial]:
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _compositions(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class GradedPieceBasis:
    nvars: int
    degree: int
    monomials: tuple[Monomial, ...]
    index: Mapping[Monomial, int]

    def __len__(self) -> int:
        return len(self.monomials)


# lru_cache serialises insertion internally, so concurrent readers are safe.
@lru_cache(maxsize=None)
def monomial_basis(nvars: int, d: int) -> GradedPieceBasis:
    _check_nvars(nvars)
    mons = tuple(_compositions(nvars, d)) if d >= 0 else ()
    return GradedPieceBasis(nvars, d, mons, {m: i for i, m in enumerate(mons)})


class HomogeneousForm:
    """Homogeneous polynomial with rational coefficients."""

    __slots__ = ("nvars", "degree", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | Iterable, degree: int | None = None):
        _check_nvars(nvars)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, Fraction] = {}
        for mon, c in items:
            mon = tuple(int(e) for e in mon)
            if len(mon) != nvars or min(mon) < 0:
                raise ValueError(f"bad monomial {mon} for {nvars} variables")
            c = to_scalar(c)
            if c:
                clean[mon] = clean.get(mon, Fraction(0)) + c
        clean = {m: c for m, c in clean.items() if c}
        degs = {sum(m) for m in clean}
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        if degs:
            deg = degs.pop()
            if degree is not None and degree != deg:
                raise ValueError("declared degree does not match terms")
        elif degree is None:
            raise ValueError("the zero form needs an explicit degree")
        else:
            deg = degree
        self.nvars = nvars
        self.degree = deg
        self.terms = tuple(sorted(clean.items(), reverse=True))
        self._hash = hash((nvars, deg, self.terms))

    @classmethod
    def linear(cls, coeffs: Sequence) -> "HomogeneousForm":
        n = len(coeffs)
        return cls(n, {tuple(int(i == k) for i in range(n)): c for k, c in enumerate(coeffs)}, degree=1)

    @classmethod
    def one(cls, nvars: int) -> "HomogeneousForm":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, mon: Monomial, coeff=1) -> "HomogeneousForm":
        return cls(len(mon), {tuple(mon): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mon: Monomial) -> Fraction:
        return dict(self.terms).get(tuple(mon), Fraction(0))

    def __mul__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return product(self, other)

    def __pow__(self, k: int) -> "HomogeneousForm":
        return power(self, k)

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        if other.nvars != self.nvars or other.degree != self.degree:
            raise ValueError("can only add forms of equal degree")
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        return HomogeneousForm(self.nvars, acc, degree=self.degree)

    def __neg__(self) -> "HomogeneousForm":
        return HomogeneousForm(self.nvars, {m: -c for m, c in self.terms}, degree=self.degree)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return (self.nvars, self.degree, self.terms) == (other.nvars, other.degree, other.terms)

    def __hash__(self) -> int:
        return self._hash

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        pt = [to_scalar(x) for x in point]
        for mon, c in self.terms:
            t = c
            for x, e in zip(pt, mon):
                t *= x**e
            total += t
        return total

    def proportional_to(self, other: "HomogeneousForm") -> bool:
        if self.nvars != other.nvars or self.degree != other.degree:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        a, b = dict(self.terms), dict(other.terms)
        if a.keys() != b.keys():
            return False
        m0 = next(iter(a))
        ratio = a[m0] / b[m0]
        return all(a[m] == ratio * b[m] for m in a)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mon, c in self.terms:
            vars_ = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(mon) if e)
            parts.append(f"{c}*{vars_}" if vars_ else str(c))
        return " + ".join(parts)


def product(f: HomogeneousForm, g: HomogeneousForm) -> HomogeneousForm:
    if f.nvars != g.nvars:
        raise ValueError("forms live in different rings")
    acc: dict[Monomial, Fraction] = {}
    for m1, c1 in f.terms:
        for m2, c2 in g.terms:
            m = tuple(a + b for a, b in zip(m1, m2))
            acc[m] = acc.get(m, Fraction(0)) + c1 * c2
    return HomogeneousForm(f.nvars, acc, degree=f.degree + g.degree)


def power(f: HomogeneousForm, k: int) -> HomogeneousForm:
    if k < 0:
        raise ValueError("negative power")
    out = HomogeneousForm.one(f.nvars)
    base = f
    while k:
        if k & 1:
            out = product(out, base)
        k >>= 1
        if k:
            base = product(base, base)
    return out


def mult_entries(f: HomogeneousForm, d: int) -> dict[tuple[int, int], Fraction]:
    """Nonzero entries of multiplication by f from degree d to d + deg f."""
    src = monomial_basis(f.nvars, d)
    dst = monomial_basis(f.nvars, d + f.degree)
    out = {}
    for j, m in enumerate(src.monomials):
        for t, c in f.terms:
            out[(dst.index[tuple(a + b for a, b in zip(m, t))], j)] = c
    return out


def mult_matrix(f: HomogeneousForm, d: int) -> ExactMatrix:
    """Matrix of S_d -> S_{d+deg f}, columns and rows in basis order."""
    if d < 0:
        return ExactMatrix(n_monomials(f.nvars, d + f.degree), 0)
    return ExactMatrix(n_monomials(f.nvars, d + f.degree), n_monomials(f.nvars, d), mult_entries(f, d))


def shift_by_variable(vec: Sequence, nvars: int, d: int, var: int) -> list:
    """Coordinates of x_var * v, where v is given in the degree-d basis."""
    src = monomial_basis(nvars, d)
    dst = monomial_basis(nvars, d + 1)
    out = [0] * len(dst)
    for m, c in zip(src.monomials, vec):
        if c:
            m2 = list(m)
            m2[var] += 1
            out[dst.index[tuple(m2)]] = c
    return out


def form_from_vector(vec: Sequence, nvars: int, d: int) -> HomogeneousForm:
    basis = monomial_basis(nvars, d)
    return HomogeneousForm(nvars, dict(zip(basis.monomials, vec)), degree=d)


def form_to_vector(f: HomogeneousForm) -> list[Fraction]:
    basis = monomial_basis(f.nvars, f.degree)
    vec = [Fraction(0)] * len(basis)
    for m, c in f.terms:
        vec[basis.index[m]] = c
    return vec


def primitive_integer(coeffs: Sequence) -> list[int]:
    """Scale to coprime integers with the first nonzero entry positive."""
    fr = [to_scalar(c) for c in coeffs]
    den = 1
    for c in fr:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        raise ValueError("zero vector")
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    return [-v for v in ints] if lead < 0 else ints


def linear_form_vanishing_on(vectors: Sequence[Sequence], nvars: int) -> HomogeneousForm:
    """The linear form (up to scale) vanishing on the span of ``vectors``.

    The vectors must span a hyperplane.
    """
    vecs = [[to_scalar(x) for x in v] for v in vectors]
    if any(len(v) != nvars for v in vecs):
        raise ValueError("vector length differs from number of variables")
    ker = kernel_basis(vecs) if vecs else kernel_basis([[0] * nvars])
    if ker.dim != 1:
        raise ValueError(f"vectors span a subspace of codimension {ker.dim}, not a hyperplane")
    return HomogeneousForm.linear(primitive_integer(ker.vectors[0]))
