"""Graded pieces of spline modules and their Lyubeznik-Schenck submodules.

A spline of degree d is a tuple (F_sigma) of degree-d forms, one per facet,
such that ``form ** exponent`` divides F_a - F_b across each interior
constraint and divides F_a across each boundary constraint.  Since
multiplication by a nonzero form is injective, the divisibility condition
in degree d is cut out by a left-kernel basis Y of the multiplication map
S_{d-e} -> S_d: ``Y (F_a - F_b) = 0``.  Stacking these conditions gives a
matrix whose kernel is the degree-d piece in facet coordinates; this is
the reduced route used by ``hf``.  The full Billera-Rose matrix with
auxiliary columns is assembled by :func:`constraint_matrix` and serves as
the independent route in the tests.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

import flint

from . import exactla
from .complexes import SplineProblem, star
from .exactla import ExactMatrix, block_matrix, default_primes
from .polyring import (HomogeneousForm, monomial_basis, mult_entries, mult_matrix, n_monomials, product,
                       shift_by_variable)

log = logging.getLogger(__name__)

MODES = ("exact", "modular")


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------

class RationalField:
    """Exact arithmetic over Q using the fraction-free eliminator."""

    name = "exact"

    def convert(self, v):
        return exactla.to_scalar(v)

    def neg(self, v):
        return -v

    def rank(self, rows: list[list], ncols: int) -> int:
        return exactla.rank(rows) if rows else 0

    def nullspace(self, rows: list[list], ncols: int) -> list[list]:
        if not rows:
            return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
        return [list(v) for v in exactla.kernel_basis(rows).vectors]


class PrimeField:
    """Arithmetic modulo a word-size prime backed by FLINT."""

    def __init__(self, p: int):
        self.p = p
        self.name = f"mod {p}"

    def convert(self, v) -> int:
        return v % self.p if isinstance(v, int) else exactla.reduce_mod(v, self.p)

    def neg(self, v: int) -> int:
        return -v % self.p

    def _mat(self, rows, ncols):
        return flint.nmod_mat(len(rows), ncols, [x for r in rows for x in r], self.p)

    def rank(self, rows: list[list], ncols: int) -> int:
        if not rows or not ncols:
            return 0
        return self._mat(rows, ncols).rank()

    def nullspace(self, rows: list[list], ncols: int) -> list[list]:
        if not rows:
            return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
        x, nullity = self._mat(rows, ncols).nullspace()
        cols = x.tolist()
        return [[int(cols[i][j]) for i in range(ncols)] for j in range(nullity)]


@dataclass(frozen=True)
class ArithmeticMode:
    """Exact arithmetic, or modular arithmetic certified across primes."""

    kind: str = "modular"
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in MODES:
            raise ValueError(f"unknown arithmetic mode {self.kind!r}")
        if self.kind == "modular":
            primes = self.primes or default_primes()
            exactla.check_primes(primes)
            if len(primes) < 2:
                raise ValueError("certified modular mode needs at least two primes")
            object.__setattr__(self, "primes", tuple(primes))

    @classmethod
    def from_seed(cls, seed: int) -> "ArithmeticMode":
        return cls("modular", default_primes(seed))


EXACT = ArithmeticMode("exact")


def _resolve_mode(mode) -> ArithmeticMode:
    if mode is None:
        return ArithmeticMode()
    if isinstance(mode, str):
        return EXACT if mode == "exact" else ArithmeticMode(mode)
    return mode


def certified(compute: Callable, mode=None):
    """Run ``compute(field)`` exactly, or modulo each prime with exact fallback."""
    mode = _resolve_mode(mode)
    if mode.kind == "exact":
        return compute(RationalField())
    results = [compute(PrimeField(p)) for p in mode.primes]
    if all(r == results[0] for r in results[1:]):
        return results[0]
    log.warning("modular results disagree across primes %s; recomputing exactly", mode.primes)
    return compute(RationalField())


# ---------------------------------------------------------------------------
# reduced constraint system
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _left_kernel(form: HomogeneousForm, exponent: int, d: int, field_key) -> tuple[tuple, ...]:
    fld = RationalField() if field_key == "exact" else PrimeField(field_key)
    n = n_monomials(form.nvars, d)
    src = d - exponent
    if src < 0:
        return tuple(tuple(fld.convert(int(i == j)) for i in range(n)) for j in range(n))
    m = n_monomials(form.nvars, src)
    # rows of the transpose are columns of the multiplication map
    tr = [[0] * n for _ in range(m)]
    for (i, j), c in mult_entries(form**exponent, src).items():
        tr[j][i] = fld.convert(c)
    return tuple(tuple(v) for v in fld.nullspace(tr, n))


def _field_key(fld) -> object:
    return "exact" if isinstance(fld, RationalField) else fld.p


def _condition_rows(p: SplineProblem, d: int, fld, facets: Sequence[int]) -> tuple[list[list], int]:
    """Rows of the reduced system restricted to ``facets`` (in that order)."""
    n = n_monomials(p.nvars, d)
    pos = {k: i for i, k in enumerate(facets)}
    ncols = n * len(facets)
    rows: list[list] = []
    if n == 0:
        return rows, ncols
    for c in p.constraints:
        present = [k for k in c.facets if k in pos]
        if not present:
            continue
        ys = _left_kernel(c.form, c.exponent, d, _field_key(fld))
        signs = {c.facets[0]: 1}
        if c.interior:
            signs[c.facets[1]] = -1
        for y in ys:
            row = [fld.convert(0)] * ncols
            for k in present:
                off = pos[k] * n
                if signs[k] == 1:
                    row[off:off + n] = y
                else:
                    row[off:off + n] = [fld.neg(v) for v in y]
            rows.append(row)
    return rows, ncols


def _check_degree(d: int) -> None:
    if d < 0:
        raise ValueError("degree must be non-negative")


def _check_subset(p: SplineProblem, subset) -> tuple[int, ...]:
    sub = tuple(sorted(set(subset)))
    if any(not 0 <= k < p.nfacets for k in sub):
        raise KeyError(f"unknown facets in {subset}")
    return sub


def hf_supported(p: SplineProblem, subset: Sequence[int], d: int, mode=None) -> int:
    """Dimension of degree-d splines vanishing off the facets in ``subset``."""
    _check_degree(d)
    sub = _check_subset(p, subset)

    def compute(fld):
        rows, ncols = _condition_rows(p, d, fld, sub)
        return ncols - fld.rank(rows, ncols)

    return certified(compute, mode)


def hf(p: SplineProblem, d: int, mode=None) -> int:
    """Hilbert function of the spline module in degree d."""
    return hf_supported(p, p.facet_ids, d, mode)


def hf_range(p: SplineProblem, degrees: Sequence[int], mode=None) -> dict[int, int]:
    return {d: hf(p, d, mode) for d in degrees}


def spline_basis(p: SplineProblem, d: int, fld=None, subset=None) -> list[list]:
    """Basis of degree-d splines in full facet coordinates (facet-major)."""
    _check_degree(d)
    fld = fld or RationalField()
    sub = _check_subset(p, p.facet_ids if subset is None else subset)
    rows, ncols = _condition_rows(p, d, fld, sub)
    n = n_monomials(p.nvars, d)
    ker = fld.nullspace(rows, ncols)
    if len(sub) == p.nfacets:
        return ker
    out = []
    zero = fld.convert(0)
    for v in ker:
        full = [zero] * (n * p.nfacets)
        for i, k in enumerate(sub):
            full[k * n:(k + 1) * n] = v[i * n:(i + 1) * n]
        out.append(full)
    return out


def is_spline(p: SplineProblem, pieces: Sequence[HomogeneousForm]) -> bool:
    """Direct divisibility check of a tuple of forms (one per facet)."""
    if len(pieces) != p.nfacets:
        raise ValueError("one form per facet is required")
    d = pieces[0].degree
    for c in p.constraints:
        diff = pieces[c.facets[0]]
        if c.interior:
            diff = diff + (-pieces[c.facets[1]])
        if diff.is_zero():
            continue
        if d < c.exponent:
            return False
        mm = mult_matrix(c.power, d - c.exponent)
        vec = [diff.coefficient(m) for m in monomial_basis(p.nvars, d).monomials]
        aug = mm.to_rows()
        if exactla.rank([r + [v] for r, v in zip(aug, vec)]) != exactla.rank(aug):
            return False
    return True


# ---------------------------------------------------------------------------
# direct Billera-Rose assembly
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedConstraintMatrix:
    """Degree-d piece of the constraint matrix with its block layout.

    Columns: one block of size N_d per facet, then one auxiliary block of
    size N_{d-e} per constraint.  Rows: one block of size N_d per constraint.
    """

    matrix: ExactMatrix
    column_blocks: tuple[tuple[str, int, int], ...]
    row_blocks: tuple[tuple[int, int], ...]


def constraint_matrix(p: SplineProblem, d: int) -> GradedConstraintMatrix:
    _check_degree(d)
    n = n_monomials(p.nvars, d)
    eye = ExactMatrix.identity(n)
    neg_eye = ExactMatrix(n, n, {(i, i): -1 for i in range(n)})
    col_sizes = [n] * p.nfacets
    col_blocks = [("facet", k, n) for k in p.facet_ids]
    blocks = {}
    for r, c in enumerate(p.constraints):
        aux = n_monomials(p.nvars, d - c.exponent)
        col_sizes.append(aux)
        col_blocks.append(("aux", r, aux))
        blocks[(r, c.facets[0])] = eye
        if c.interior:
            blocks[(r, c.facets[1])] = neg_eye
        mm = mult_matrix(c.power, d - c.exponent)
        blocks[(r, p.nfacets + r)] = ExactMatrix(n, aux, {k: -v for k, v in mm.items()})
    row_sizes = [n] * len(p.constraints)
    m = block_matrix(blocks, row_sizes, col_sizes)
    return GradedConstraintMatrix(m, tuple(col_blocks), tuple((r, n) for r in range(len(p.constraints))))


def hf_direct(p: SplineProblem, d: int) -> int:
    """Kernel dimension of the full constraint matrix (exact)."""
    gm = constraint_matrix(p, d)
    m = gm.matrix
    return m.ncols - (exactla.rank(m) if m.nrows else 0)


# ---------------------------------------------------------------------------
# Lyubeznik-Schenck submodules
# ---------------------------------------------------------------------------

def hf_ls(p: SplineProblem, k: int, d: int, mode=None) -> int:
    """Degree-d dimension of LS^k: sums of splines supported on stars.

    ``k = 0`` sums over facets, ``k = 1`` over stars of interior faces.
    """
    _check_degree(d)
    if k == 0:
        supports = [(s,) for s in p.facet_ids]
    elif k == 1:
        supports = [star(p, cid).facets for cid in p.interior_constraints()]
    else:
        raise ValueError("only LS^0 and LS^1 are supported")

    def compute(fld):
        vecs = []
        for sub in supports:
            vecs.extend(spline_basis(p, d, fld, sub))
        return fld.rank(vecs, n_monomials(p.nvars, d) * p.nfacets) if vecs else 0

    return certified(compute, mode)


def ls_subspaces(p: SplineProblem, k: int, d: int) -> list[exactla.SubspaceBasis]:
    """Exact subspaces whose sum is LS^k in degree d."""
    if k == 0:
        supports = [(s,) for s in p.facet_ids]
    elif k == 1:
        supports = [star(p, cid).facets for cid in p.interior_constraints()]
    else:
        raise ValueError("only LS^0 and LS^1 are supported")
    amb = n_monomials(p.nvars, d) * p.nfacets
    return [exactla.SubspaceBasis.from_vectors(amb, spline_basis(p, d, RationalField(), s)) for s in supports]


def lambda_of_facet(p: SplineProblem, k: int) -> int:
    return sum(p.constraints[i].exponent for i in p.facet_constraints(k))


def _binom_clipped(n: int, k: int) -> int:
    return comb(n, k) if n >= k >= 0 else 0


def hf_ls1_euler(p: SplineProblem, d: int, mode=None) -> int:
    """LS^1 dimension from the exact complex of star pieces.

    Splines supported on a single facet are multiples of the product of its
    constraint powers, a free module of rank one.
    """
    _check_degree(d)
    total = sum(hf_supported(p, star(p, cid).facets, d, mode) for cid in p.interior_constraints())
    for s in p.facet_ids:
        m = sum(1 for i in p.facet_constraints(s) if p.constraints[i].interior)
        mult = sum((-1) ** j * comb(m, j) for j in range(2, m + 1))
        total -= mult * _binom_clipped(d - lambda_of_facet(p, s) + 2, 2)
    return total


def hf_tau_syzygy(p: SplineProblem, cid: int, d: int, mode=None) -> int:
    """dim C_tau in degree d via syzygies on (L1, L2, L_tau).

    L_i is the product of the constraint powers of facet i other than tau.
    """
    _check_degree(d)
    info = star(p, cid)
    tau = p.constraints[cid]
    gens = []
    for s in info.facets:
        g = HomogeneousForm.one(p.nvars)
        for i in p.facet_constraints(s):
            if i != cid:
                g = product(g, p.constraints[i].power)
        gens.append(g)
    gens.append(tau.power)

    def compute(fld):
        n = n_monomials(p.nvars, d)
        cols = [n_monomials(p.nvars, d - g.degree) for g in gens]
        ncols = sum(cols)
        rows = [[fld.convert(0)] * ncols for _ in range(n)]
        off = 0
        for g, w in zip(gens, cols):
            if w:
                for (i, j), c in mult_entries(g, d - g.degree).items():
                    rows[i][off + j] = fld.convert(c)
            off += w
        return ncols - fld.rank(rows, ncols)

    return certified(compute, mode)


# ---------------------------------------------------------------------------
# minimal generators
# ---------------------------------------------------------------------------

def generator_degrees(p: SplineProblem, dmax: int, mode=None) -> dict[int, int]:
    """Number of minimal generators in each degree up to ``dmax``.

    The count in degree d is dim C_d minus the dimension of the span of
    x_i * C_{d-1}.  Only degrees with a nonzero count are reported.
    """
    _check_degree(dmax)

    def compute(fld):
        counts = {}
        prev: list[list] = []
        for d in range(dmax + 1):
            cur = spline_basis(p, d, fld)
            n_prev = n_monomials(p.nvars, d - 1)
            n_cur = n_monomials(p.nvars, d)
            images = []
            for v in prev:
                for var in range(p.nvars):
                    img = []
                    for s in p.facet_ids:
                        img.extend(shift_by_variable(v[s * n_prev:(s + 1) * n_prev], p.nvars, d - 1, var))
                    images.append([fld.convert(x) for x in img])
            r = fld.rank(images, n_cur * p.nfacets) if images else 0
            if len(cur) - r:
                counts[d] = len(cur) - r
            prev = cur
        return counts

    return certified(compute, mode)
