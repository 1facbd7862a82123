"""Combinatorial invariants bounding where HF and HP agree.

lambda(sigma) is the total exponent of the constraints of a facet, and
lambda(tau) the total exponent over the closed star of an interior face.
e(P) = max lambda(tau) gives HF = HP for d >= e - 2.  For simplicial
central complexes M(tau) adds the two largest exponents among the other
faces of the star to the exponent of tau, and HF = HP for d >= max M - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import SplineProblem, boundary_degree, star


class NotSimplicialError(ValueError):
    pass


def lambda_facet(p: SplineProblem, k: int) -> int:
    return sum(p.constraints[i].exponent for i in p.facet_constraints(k))


def lambda_tau(p: SplineProblem, cid: int) -> int:
    return sum(p.constraints[i].exponent for i in star(p, cid).constraint_ids)


def f_bound(p: SplineProblem) -> int:
    return max(lambda_facet(p, k) for k in p.facet_ids)


def e_bound(p: SplineProblem) -> int:
    """max lambda(tau) over interior faces.

    A problem without interior faces is a single facet, whose module is free
    of rank one; there the facet bound plays the same role.
    """
    ids = p.interior_constraints()
    if not ids:
        return f_bound(p)
    return max(lambda_tau(p, c) for c in ids)


def m_per_tau(p: SplineProblem) -> dict[int, int]:
    """M(tau) for each interior face of a simplicial problem.

    A facet's walls with smoothness -1 carry no constraint; they count as
    exponent 0 when picking the two largest.
    """
    if not p.simplicial:
        raise NotSimplicialError("M(tau) is defined for simplicial complexes only")
    out = {}
    for cid in p.interior_constraints():
        info = star(p, cid)
        exps = [p.constraints[i].exponent for i in info.constraint_ids if i != cid]
        exps += [0] * sum(p.omitted_walls[k] for k in info.facets)
        exps.sort(reverse=True)
        exps += [0, 0]
        out[cid] = p.constraints[cid].exponent + exps[0] + exps[1]
    return out


def m_bound(p: SplineProblem) -> int | None:
    m = m_per_tau(p)
    return max(m.values()) if m else None


def delta(p: SplineProblem) -> int:
    """Largest number of interior faces of a single facet."""
    return max(boundary_degree(p, k) for k in p.facet_ids)


@dataclass(frozen=True)
class ConjectureStats:
    """Interior-face counts over all facets and over boundary facets."""

    F: int
    F_boundary: int | None
    complete: bool
    boundary_facets: tuple[int, ...]


def conjecture_stats(p: SplineProblem) -> ConjectureStats:
    """A boundary facet has a boundary wall through the origin."""
    bnd = tuple(k for k in p.facet_ids
                if p.omitted_walls[k] or any(not p.constraints[i].interior for i in p.facet_constraints(k)))
    complete = not bnd
    fb = max((boundary_degree(p, k) for k in bnd), default=None)
    return ConjectureStats(delta(p), fb, complete, bnd)


@dataclass(frozen=True)
class BoundReport:
    lambda_facets: tuple[int, ...]
    lambda_taus: dict[int, int]
    e: int
    f: int
    m: int | None
    m_taus: dict[int, int] | None
    delta: int
    conjecture: ConjectureStats

    @property
    def hf_hp_from(self) -> int:
        """Degree from which HF = HP is guaranteed."""
        lo = self.e - 2
        if self.m is not None:
            lo = min(lo, self.m - 1)
        return lo

    def as_dict(self) -> dict:
        return {
            "lambda_facets": list(self.lambda_facets),
            "lambda_tau": {str(k): v for k, v in self.lambda_taus.items()},
            "e": self.e,
            "f": self.f,
            "m": self.m,
            "M_tau": None if self.m_taus is None else {str(k): v for k, v in self.m_taus.items()},
            "delta": self.delta,
            "hf_equals_hp_from": self.hf_hp_from,
            "postulation_at_most": self.hf_hp_from - 1,
            "conjecture": {"F": self.conjecture.F, "F_boundary": self.conjecture.F_boundary,
                           "complete": self.conjecture.complete},
        }


def bound_report(p: SplineProblem) -> BoundReport:
    mt = m_per_tau(p) if p.simplicial else None
    return BoundReport(
        lambda_facets=tuple(lambda_facet(p, k) for k in p.facet_ids),
        lambda_taus={c: lambda_tau(p, c) for c in p.interior_constraints()},
        e=e_bound(p),
        f=f_bound(p),
        m=(max(mt.values()) if mt else None),
        m_taus=mt,
        delta=delta(p),
        conjecture=conjecture_stats(p),
    )
