from math import comb

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from conftest import single_triangle, three_triangle_fan, two_triangle_fan
from oracles import DELTA_HF_6, Q_HF_FROZEN, Q_R1_HF_8
from splinelab import builders
from splinelab.complexes import SmoothnessAssignment, cone, star, star_problem
from splinelab.exactla import ExactMatrix, block_matrix, rank, subspace_sum_dim
from splinelab.polyring import form_from_vector, n_monomials
from splinelab.splinecore import (EXACT, ArithmeticMode, RationalField, constraint_matrix, generator_degrees, hf,
                                  hf_direct, hf_ls, hf_ls1_euler, hf_supported, hf_tau_syzygy, is_spline,
                                  ls_subspaces, spline_basis)


def two_fan(r=1):
    return cone(two_triangle_fan(), SmoothnessAssignment(r))


def test_single_triangle_is_free():
    for r in range(3):
        assert hf(cone(single_triangle(), SmoothnessAssignment(r)), 4) == 15


def test_delta_hf_6(delta_problem):
    assert hf(delta_problem, 6) == DELTA_HF_6


def test_q_r1_hf_8(q_problems):
    assert hf(q_problems[1], 8) == Q_R1_HF_8


def test_two_fan_degree_2():
    assert hf(two_fan(1), 2) == 7


@pytest.mark.parametrize("key", sorted(Q_HF_FROZEN))
def test_q_frozen_values(q_problems, key):
    r, d = key
    assert hf(q_problems[r], d, EXACT) == Q_HF_FROZEN[key]


def problems_for_routes():
    out = [two_fan(1), cone(three_triangle_fan(), SmoothnessAssignment(1, 0)),
           cone(builders.build_q_example(), SmoothnessAssignment(0)),
           cone(builders.build_q_example(), SmoothnessAssignment(1, 0)),
           star_problem(builders.build_hemisphere(), SmoothnessAssignment(1)),
           star_problem(builders.build_octahedron(), SmoothnessAssignment(0))]
    cx, alpha = builders.build_delta_example()
    out.append(cone(cx, alpha))
    return out


@pytest.mark.parametrize("idx", range(7))
def test_reduced_matches_direct(idx):
    p = problems_for_routes()[idx]
    for d in range(0, 6):
        assert hf(p, d, EXACT) == hf_direct(p, d) == hf(p, d)


def test_constraint_matrix_layout():
    p = two_fan(1)
    gm = constraint_matrix(p, 2)
    assert gm.matrix.shape == (6, 6 + 6 + 1)
    assert [b[0] for b in gm.column_blocks] == ["facet", "facet", "aux"]


def test_omitted_walls_equivalent_to_unit_rows():
    """Carrying an alpha=-1 wall as exponent 0 with a unit block leaves the kernel size unchanged."""
    p = cone(three_triangle_fan(), SmoothnessAssignment(1))
    for d in range(4):
        gm = constraint_matrix(p, d)
        n = n_monomials(3, d)
        m = gm.matrix
        # one extra row block per omitted wall: F_k - g = 0 with a fresh aux block g
        extra = sum(p.omitted_walls)
        blocks = {(0, 0): m}
        row_sizes, col_sizes = [m.nrows], [m.ncols]
        neg = ExactMatrix(n, n, {(i, i): -1 for i in range(n)})
        walls = [k for k in p.facet_ids for _ in range(p.omitted_walls[k])]
        for w, k in enumerate(walls):
            sel = ExactMatrix(n, m.ncols, {(i, k * n + i): 1 for i in range(n)})
            blocks[(1 + w, 0)] = sel
            blocks[(1 + w, 1 + w)] = neg
            row_sizes.append(n)
            col_sizes.append(n)
        big = block_matrix(blocks, row_sizes, col_sizes)
        assert extra == len(walls) > 0
        assert big.ncols - rank(big) == hf_direct(p, d) == hf(p, d, EXACT)


def test_modular_and_exact_agree(delta_problem):
    for d in (4, 6, 7):
        assert hf(delta_problem, d, EXACT) == hf(delta_problem, d, ArithmeticMode.from_seed(11))


def test_hf_supported_all_is_hf(q_problems):
    p = q_problems[1]
    for d in range(6):
        assert hf_supported(p, list(p.facet_ids), d) == hf(p, d)


def test_single_facet_support_starts_at_lambda(q_problems):
    p = q_problems[0]
    for k in p.facet_ids:
        vals = [hf_supported(p, [k], d) for d in range(5)]
        assert vals[:3] == [0, 0, 0] and vals[3] == 1


def test_hf_supported_rejects_unknown():
    with pytest.raises(KeyError):
        hf_supported(two_fan(), [5], 2)


def test_ls_examples(q_problems, delta_problem):
    assert hf_ls(q_problems[0], 0, 2) == 0
    p = two_fan(1)
    for d in range(5):
        assert hf_ls(p, 1, d) == hf(p, d)
        assert hf_ls1_euler(p, d) == hf(p, d)
    for d in (3, 4):
        assert hf_ls1_euler(q_problems[0], d) == hf_ls(q_problems[0], 1, d)
    cx, _ = builders.build_delta_example()
    p1 = cone(cx, SmoothnessAssignment(1))
    assert hf_ls1_euler(p1, 5) == hf_ls(p1, 1, 5)
    with pytest.raises(ValueError):
        hf_ls(p, 2, 1)


@pytest.mark.parametrize("m", range(0, 9))
def test_alternating_binomial_collapse(m):
    assert sum((-1) ** k * comb(m, k) for k in range(2, m + 1)) == max(m - 1, 0)


def test_ls_subspace_sum_matches_direct():
    p = cone(three_triangle_fan(), SmoothnessAssignment(1))
    for d in range(5):
        assert subspace_sum_dim(ls_subspaces(p, 1, d)) == hf_ls(p, 1, d, EXACT)
        assert subspace_sum_dim(ls_subspaces(p, 0, d)) == hf_ls(p, 0, d, EXACT)


def test_tau_syzygy_examples(q_problems, delta_problem):
    p = two_fan(1)
    (cid,) = p.interior_constraints()
    assert hf_tau_syzygy(p, cid, 2) == 7
    q = q_problems[0]
    spokes = [c for c in q.interior_constraints() if 0 not in q.constraints[c].facets]
    for cid in spokes:
        assert hf_tau_syzygy(q, cid, 2) == hf_supported(q, star(q, cid).facets, 2)
    spokes = [c for c in delta_problem.interior_constraints() if delta_problem.constraints[c].exponent == 4]
    assert len(spokes) == 6
    cid = spokes[0]
    assert hf_tau_syzygy(delta_problem, cid, 7) == hf_supported(delta_problem, star(delta_problem, cid).facets, 7)


def test_generator_degree_examples():
    assert generator_degrees(cone(single_triangle(), SmoothnessAssignment(1)), 5) == {0: 1}
    assert generator_degrees(two_fan(1), 5) == {0: 1, 2: 1}


def test_spline_basis_elements_are_splines(q_problems):
    p = q_problems[1]
    d = 4
    n = n_monomials(3, d)
    for v in spline_basis(p, d, RationalField()):
        pieces = [form_from_vector(v[k * n:(k + 1) * n], 3, d) for k in p.facet_ids]
        assert is_spline(p, pieces)


def test_non_spline_detected():
    p = two_fan(1)
    from splinelab.polyring import HomogeneousForm
    x = HomogeneousForm.linear([1, 0, 0])
    y = HomogeneousForm.linear([0, 1, 0])
    assert not is_spline(p, [x, y])
    assert is_spline(p, [x, x])


@settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10_000))
def test_random_fan_hf_properties(seed):
    cx, alpha = builders.build_random_fan(seed, rmax=2)
    p = cone(cx, alpha)
    prev = 0
    for d in range(6):
        v = hf(p, d)
        assert prev <= v <= p.nfacets * comb(d + 2, 2)
        if all(c.interior for c in p.constraints):
            assert v >= comb(d + 2, 2)
        prev = v
    assert hf(p, 3, EXACT) == hf_direct(p, 3)
