"""Multiplicity tables, invariance projectors, and the explicit bases."""

import numpy as np
import pytest

from s3harm import bases
from s3harm import groupcore as gc
from s3harm import su2
from s3harm.deck import build_cyclic8, build_quaternion
from s3harm.wigner import EulerAngles, euler_quadrature


# frozen degree-0 through degree-8 counts
MULT_C8 = [1, 1, 7, 11, 23, 27, 45, 53, 77]
MULT_Q = [1, 0, 10, 7, 27, 22, 52, 45, 85]


def test_frozen_multiplicities():
    assert [bases.multiplicity_c8(j) for j in range(9)] == MULT_C8
    assert [bases.multiplicity_q(j) for j in range(9)] == MULT_Q


def test_multiplicity_closed_forms():
    # quaternion counts split by parity of the degree
    for j in range(0, 21, 2):
        assert bases.multiplicity_q(j) == (2 * j + 1) * (j + 2) // 2
    for j in range(1, 21, 2):
        assert bases.multiplicity_q(j) == (2 * j + 1) * (j - 1) // 2


def test_cyclic_recursion():
    # m(j+4) = m(j) + 8j + 20 + 2(-1)^j
    for j in range(0, 13):
        lhs = bases.multiplicity_c8(j + 4)
        rhs = bases.multiplicity_c8(j) + 8 * j + 20 + 2 * (-1) ** j
        assert lhs == rhs


def test_half_integer_degrees_have_no_periodic_harmonics():
    for jx2 in (1, 3, 5, 9):
        assert bases.multiplicity_c8(jx2 / 2) == 0
        assert bases.multiplicity_q(jx2 / 2) == 0


def test_quaternion_character_sum_route_agrees():
    for j in range(0, 16):
        assert bases.multiplicity_q_character_sum(j) == bases.multiplicity_q(j)


def test_multiplicity_for_dispatch():
    assert bases.multiplicity_for("C2", 3) == MULT_C8[3]
    assert bases.multiplicity_for("c3", 4) == MULT_Q[4]
    with pytest.raises(ValueError):
        bases.multiplicity_for("C9", 2)


# ---------------------------------------------------------------- projectors


@pytest.mark.parametrize("j", range(7))
def test_cyclic_projector_two_routes_agree(j):
    averaged, closed = bases.projector_c8(j)
    assert np.max(np.abs(averaged - closed)) < 1e-12
    assert np.max(np.abs(averaged @ averaged - averaged)) < 1e-12
    assert abs(np.trace(averaged).real - bases.multiplicity_c8(j)) < 1e-9
    assert abs(np.trace(averaged).imag) < 1e-12


@pytest.mark.parametrize("j", range(7))
def test_quaternion_projector_two_routes_agree(j):
    averaged, closed = bases.projector_q(j)
    assert np.max(np.abs(averaged - closed)) < 1e-12
    assert np.max(np.abs(averaged @ averaged - averaged)) < 1e-12
    # one-sided operator: trace times (2j+1) counts the harmonics
    assert abs(np.trace(averaged).real * (2 * j + 1) - bases.multiplicity_q(j)) < 1e-9


def test_projectors_kill_odd_rows():
    for j in (2, 3, 4):
        averaged, _ = bases.projector_c8(j)
        dim = 2 * j + 1
        for r1, m1 in enumerate(range(j, -j - 1, -1)):
            if m1 % 2 == 0:
                continue
            block = averaged[r1 * dim:(r1 + 1) * dim, :]
            assert np.max(np.abs(block)) < 1e-13


def test_degree_zero_projector_is_identity():
    for proj, _ in (bases.projector_c8(0), bases.projector_q(0)):
        assert proj.shape == (1, 1)
        assert abs(proj[0, 0] - 1.0) < 1e-14


def test_degree_one_quaternion_projector_vanishes():
    averaged, closed = bases.projector_q(1)
    assert np.max(np.abs(averaged)) < 1e-13
    assert np.max(np.abs(closed)) < 1e-13


# --------------------------------------------------------------------- bases


def test_basis_counts_match_multiplicities():
    for j in range(7):
        assert len(bases.basis_c2(j)) == MULT_C8[j]
        assert len(bases.basis_c3(j)) == MULT_Q[j]


def test_basis_degree_zero_is_the_constant():
    for build in (bases.basis_c2, bases.basis_c3):
        fns = build(0)
        assert len(fns) == 1
        f = fns[0]
        assert f.kind == "single-term"
        assert f.terms == ((0, 0, 1.0 + 0j),)
        assert abs(f.norm_factor - 1.0 / (np.sqrt(8.0) * np.pi)) < 1e-15


def test_basis_c2_degree_one_structure():
    fns = bases.basis_c2(1)
    assert len(fns) == 1
    f = fns[0]
    assert (f.m1, f.m2, f.kind) == (0, 1, "two-term-sum")
    (t1, t2) = f.terms
    assert t1 == (0, 1, 1.0 + 0j)
    assert t2[0:2] == (0, -1)
    assert abs(t2[2] - 1j) < 1e-15
    assert abs(f.norm_factor - np.sqrt(3.0) / (4.0 * np.pi)) < 1e-15


def test_basis_c3_degree_two_structure():
    fns = bases.basis_c3(2)
    singles = [f for f in fns if f.kind == "single-term"]
    doubles = [f for f in fns if f.kind == "two-term-sum"]
    assert len(singles) == 5 and len(doubles) == 5
    assert all(f.m1 == 0 for f in singles)
    assert sorted(f.m2 for f in singles) == [-2, -1, 0, 1, 2]
    for f in doubles:
        assert f.m1 == 2
        assert f.terms[1] == (-2, f.m2, 1.0 + 0j)


def test_basis_c3_degree_three_structure():
    fns = bases.basis_c3(3)
    assert len(fns) == 7
    for f in fns:
        assert f.kind == "two-term-difference"
        assert f.m1 == 2
        assert f.terms[1] == (-2, f.m2, -1.0 + 0j)
    assert sorted(f.m2 for f in fns) == list(range(-3, 4))


def test_basis_sorted_by_degree_then_indices():
    fns = bases.basis_c3(4)
    keys = [(f.j, f.m1, f.m2) for f in fns]
    assert keys == sorted(keys)


def test_half_integer_degree_rejected():
    with pytest.raises(ValueError):
        bases.basis_c2(1.5)
    with pytest.raises(ValueError):
        bases.basis_c3(0.5)


def test_basis_for_dispatch():
    assert [f.manifold for f in bases.basis_for("c2", 2)] == ["C2"] * MULT_C8[2]
    with pytest.raises(ValueError):
        bases.basis_for("S3", 1)


def test_evaluate_agrees_across_input_forms():
    f = bases.basis_c2(2)[3]
    x = gc.random_sphere_points(1, seed=8)[0]
    u = su2.matrix_from_point(x)
    stacked = np.stack([u, np.eye(2)])
    v_plain = f.evaluate(u)
    v_stack = f.evaluate(stacked)
    assert abs(v_plain - v_stack[0]) < 1e-14
    q1 = build_quaternion().by_label("q1").pair.left
    assert abs(f.evaluate(q1) - f.evaluate(q1.to_complex())) < 1e-14


def test_coefficient_vector_layout():
    f = bases.basis_c2(1)[0]   # terms at (0, 1) and (0, -1), j = 1
    vec = f.coefficient_vector()
    dim = 3
    assert vec.shape == (9,)
    assert abs(vec[(1 - 0) * dim + (1 - 1)] - f.norm_factor) < 1e-15
    assert abs(vec[(1 - 0) * dim + (1 + 1)] - f.norm_factor * 1j) < 1e-15
    assert np.count_nonzero(vec) == 2


def test_json_dict_round_trip_fields():
    f = bases.basis_c3(2)[7]
    blob = f.to_json_dict()
    assert blob["manifold"] == "C3" and blob["j"] == 2
    assert blob["kind"] == f.kind
    rebuilt = tuple((t["m1p"], t["m2p"], complex(t["re"], t["im"])) for t in blob["terms"])
    assert rebuilt == f.terms


def test_gram_is_identity_within_each_degree():
    for manifold, build in (("C2", bases.basis_c2), ("C3", bases.basis_c3)):
        for j in range(5):
            fns = build(j)
            if not fns:
                continue
            gram = bases.gram_matrix(fns)
            assert np.max(np.abs(gram - np.eye(len(fns)))) < 1e-10, (manifold, j)


def test_gram_across_degrees_stays_identity():
    fns = [f for j in range(4) for f in bases.basis_c3(j)]
    gram = bases.gram_matrix(fns, rule=euler_quadrature(6))
    assert np.max(np.abs(gram - np.eye(len(fns)))) < 1e-10


def test_projector_fixes_coefficient_vectors():
    for manifold, build in (("C2", bases.basis_c2), ("C3", bases.basis_c3)):
        for j in range(5):
            proj = bases._full_projector(manifold, j)
            for f in build(j):
                vec = f.coefficient_vector()
                assert np.max(np.abs(proj @ vec - vec)) < 1e-12


def test_verify_basis_passes_for_both_manifolds():
    for manifold, group in (("C2", build_cyclic8()), ("C3", build_quaternion())):
        fns = [f for j in range(4) for f in bases.basis_for(manifold, j)]
        report = bases.verify_basis(fns, group, seed=42, tol=1e-10, n_points=40)
        assert report["passed"] is True
        assert report["manifold"] == manifold
        assert report["gram_max_error"] < 1e-10
        assert report["periodicity_max_error"] < 1e-10
        for j, block in report["projector"].items():
            assert block["rank"] == block["expected_rank"]
            assert block["fix_max_error"] < 1e-10
        assert report["count_by_degree"] == report["multiplicity_by_degree"]


def test_verify_basis_fails_against_wrong_group():
    fns = [f for j in range(3) for f in bases.basis_c2(j)]
    report = bases.verify_basis(fns, build_quaternion(), seed=42, n_points=30)
    assert report["passed"] is False
    assert report["periodicity_max_error"] > 1e-3


def test_verify_basis_empty_list():
    report = bases.verify_basis([], build_cyclic8())
    assert report["passed"] is True and report["count"] == 0


def test_verify_basis_rejects_mixed_manifolds():
    fns = bases.basis_c2(0) + bases.basis_c3(2)
    with pytest.raises(ValueError):
        bases.verify_basis(fns, build_cyclic8())


def test_periodicity_under_every_deck_element():
    # direct pointwise check, independent of verify_basis bookkeeping
    pts = gc.random_sphere_points(25, seed=17)
    for manifold, group in (("C2", build_cyclic8()), ("C3", build_quaternion())):
        fns = [f for j in range(4) for f in bases.basis_for(manifold, j)]
        for el in group.elements:
            for x in pts:
                u = su2.matrix_from_point(x)
                v = su2.matrix_from_point(gc.apply(el.element, x))
                for f in fns[:: max(1, len(fns) // 7)]:
                    assert abs(f.evaluate(u) - f.evaluate(v)) < 1e-10
