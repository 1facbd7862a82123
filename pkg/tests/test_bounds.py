import random

import pytest

from conftest import single_triangle, two_triangle_fan
from oracles import DELTA_M_BOUND
from splinelab import builders
from splinelab.bounds import (NotSimplicialError, bound_report, conjecture_stats, delta, e_bound, f_bound,
                              lambda_facet, lambda_tau, m_bound, m_per_tau)
from splinelab.complexes import PlanarComplex, SmoothnessAssignment, cone, star, star_problem


def test_lambda_facet_examples(q_problems):
    assert lambda_facet(cone(single_triangle(), SmoothnessAssignment()), 0) == 0
    assert all(lambda_facet(q_problems[0], k) == 3 for k in range(4))
    assert all(lambda_facet(q_problems[2], k) == 9 for k in range(4))


@pytest.mark.parametrize("r", range(4))
def test_lambda_tau_q(q_problems, r):
    p = q_problems[r]
    for cid in p.interior_constraints():
        assert lambda_tau(p, cid) == 5 * (r + 1)
    assert e_bound(p) == 5 * (r + 1)


def test_two_fan_bounds():
    for r in range(3):
        p = cone(PlanarComplex([(0, 0), (2, 0), (0, 2), (2, 2)], [(0, 1, 3), (0, 3, 2)]), SmoothnessAssignment(r))
        (cid,) = p.interior_constraints()
        assert lambda_tau(p, cid) == e_bound(p) == r + 1
        assert m_per_tau(p) == {cid: r + 1}


def test_delta_bounds(delta_problem):
    assert m_bound(delta_problem) == DELTA_M_BOUND
    spokes = [c for c in delta_problem.interior_constraints() if delta_problem.constraints[c].exponent == 4]
    for cid in spokes:
        exps = [delta_problem.constraints[i].exponent for i in star(delta_problem, cid).constraint_ids]
        assert lambda_tau(delta_problem, cid) == sum(exps)


@pytest.mark.parametrize("r", range(4))
def test_uniform_simplicial_m_bound(r):
    p = star_problem(builders.build_octahedron(), SmoothnessAssignment(r))
    assert m_bound(p) == 3 * (r + 1)
    assert delta(p) == 3


def test_m_bound_requires_simplicial(q_problems):
    with pytest.raises(NotSimplicialError):
        m_bound(q_problems[0])


def test_single_facet_e_bound():
    p = cone(single_triangle(), SmoothnessAssignment(0, 1))
    assert e_bound(p) == f_bound(p) == 6


def test_conjecture_stats_examples(q_problems):
    o = conjecture_stats(star_problem(builders.build_octahedron(), SmoothnessAssignment(1)))
    assert o.F == 3 and o.complete and o.F_boundary is None
    h = star_problem(builders.build_hemisphere(), SmoothnessAssignment(1))
    hs = conjecture_stats(h)
    assert hs.boundary_facets == (0, 1, 2, 3) and hs.F_boundary == 2
    qs = conjecture_stats(q_problems[1])
    assert qs.F == qs.F_boundary == 3 and not qs.complete


def test_star_recount(q_problems, delta_problem):
    for p in (q_problems[1], delta_problem):
        for cid in p.interior_constraints():
            a, b = star(p, cid).facets
            shared = set(p.facet_constraints(a)) & set(p.facet_constraints(b))
            over = sum(p.constraints[i].exponent for i in shared)
            assert lambda_tau(p, cid) == lambda_facet(p, a) + lambda_facet(p, b) - over


@pytest.mark.parametrize("seed", range(30))
def test_m_at_most_e_on_corpus(seed):
    cx, alpha = builders.build_random_fan(seed)
    p = cone(cx, alpha)
    if p.interior_constraints():
        assert m_bound(p) <= e_bound(p)
    assert min(bound_report(p).lambda_facets) >= 0


@pytest.mark.parametrize("seed", range(10))
def test_bounds_invariant_under_relabeling(seed):
    cx, alpha = builders.build_random_fan(seed)
    rng = random.Random(seed)
    nv = len(cx.vertices)
    perm = list(range(nv))
    rng.shuffle(perm)
    inv = {old: new for new, old in enumerate(perm)}
    verts = [cx.vertices[old] for old in perm]
    fperm = list(range(len(cx.facets)))
    rng.shuffle(fperm)
    facets = [tuple(inv[i] for i in cx.facets[k]) for k in fperm]
    ov = {tuple(sorted(inv[i] for i in k)): v for k, v in alpha.overrides.items()}
    p = cone(cx, alpha)
    q = cone(PlanarComplex(verts, facets), SmoothnessAssignment(alpha.interior, alpha.boundary, ov))
    a, b = bound_report(p), bound_report(q)
    assert (a.e, a.f, a.m, a.delta) == (b.e, b.f, b.m, b.delta)
    assert sorted(a.lambda_facets) == sorted(b.lambda_facets)


def test_bound_report_q_r2(q_problems):
    rep = bound_report(q_problems[2]).as_dict()
    assert rep["e"] == 15 and rep["hf_equals_hp_from"] == 13
