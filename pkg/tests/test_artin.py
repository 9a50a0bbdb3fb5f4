import dataclasses
from fractions import Fraction

import pytest

from ncdef.artin import (AlgebraModule, PointedAlgebra, dimension_signature,
                         duality_check, end_algebra, flatness_check,
                         socle_and_gorenstein, spherical_permutation,
                         verify_pointed_artin)
from ncdef.errors import PreconditionError
from ncdef.homext import hom_space
from ncdef.linalg import QQ
from ncdef.tower import TowerResult

TERMINATING = ("fx_loop2", "fx_cyc2", "fx_aba", "fx_fat3")

EXPECTED_ALGEBRA = {
    # name: (dim, commutative, nilpotency, gorenstein, sigma)
    "fx_loop2": (2, True, 2, True, [0]),
    "fx_cyc2": (4, False, 2, True, [1, 0]),
    "fx_aba": (6, False, 3, True, [0, 1]),
    "fx_fat3": (3, True, 2, False, None),
}


@pytest.mark.parametrize("name", sorted(EXPECTED_ALGEBRA))
def test_extracted_algebra_invariants(problems, towers, algebras, name):
    dim, comm, nil, gor, sigma = EXPECTED_ALGEBRA[name]
    a = algebras[name].algebra
    assert a.dim == dim
    assert a.is_commutative() == comm
    report = verify_pointed_artin(a)
    assert report.ok and report.nilpotency == nil
    soc = socle_and_gorenstein(a)
    assert soc.gorenstein == gor
    sph = spherical_permutation(towers[name], problems[name].collection())
    assert sph.permutation == sigma


def test_algebras_are_associative(algebras):
    for ea in algebras.values():
        assert ea.algebra.is_associative()


def test_dim_end_equals_sum_of_r_sequence(algebras, towers):
    for name, ea in algebras.items():
        assert ea.algebra.dim == sum(towers[name].state.r_sequence)


def test_signature_grids(algebras):
    cyc2 = dimension_signature(algebras["fx_cyc2"].algebra)
    assert cyc2.nilpotency == 2
    assert cyc2.grid[0] == [[1, 1], [1, 1]]
    assert cyc2.grid[1] == [[0, 1], [1, 0]]
    assert cyc2.grid[2] == [[0, 0], [0, 0]]
    aba = dimension_signature(algebras["fx_aba"].algebra)
    assert aba.nilpotency == 3
    assert aba.grid[0] == [[2, 1], [1, 2]]
    assert aba.grid[-1] == [[0, 0], [0, 0]]


def test_signature_entries_weakly_decrease(algebras):
    for ea in algebras.values():
        sig = dimension_signature(ea.algebra)
        r = ea.algebra.r
        for m in range(len(sig.grid) - 1):
            for j in range(r):
                for i in range(r):
                    assert sig.grid[m][j][i] >= sig.grid[m + 1][j][i]


def test_block_dims_match_hom_between_summands(algebras, towers):
    # dim(e_j R e_i) must agree with dim Hom(F_i^(N), F_j^(N)), computed
    # independently from the representations
    for name, ea in algebras.items():
        sig = dimension_signature(ea.algebra)
        summands = towers[name].summands
        for j in range(ea.algebra.r):
            for i in range(ea.algebra.r):
                assert sig.grid[0][j][i] == hom_space(summands[i], summands[j]).dim


def _semisimple_counterexample():
    """k (+) k viewed as 1-pointed: the augmentation ideal is idempotent."""
    one = Fraction(1)
    zero = Fraction(0)
    # basis u = (1,0), w = (0,1); unit = u + w; augmentation onto the u factor
    sc = [[[one, zero], [zero, zero]], [[zero, zero], [zero, one]]]
    return PointedAlgebra(QQ, 1, 2, sc, unit=[one, one],
                          idempotents=[[one, one]],
                          augmentation=[[one, zero]])


def test_counterexample_fails_nilpotency():
    a = _semisimple_counterexample()
    assert a.is_associative()
    report = verify_pointed_artin(a)
    assert not report.ok
    assert report.nilpotency is None
    assert report.idempotents_ok and report.augmentation_splits


def test_flatness_passes_on_towers(algebras, towers, problems):
    for name, ea in algebras.items():
        rep = flatness_check(ea.algebra, towers[name],
                             problems[name].collection())
        assert rep.ok and rep.dimension_identity_ok and rep.fiber_identity_ok


def test_flatness_fails_on_corrupted_tower(algebras, towers, problems):
    name = "fx_aba"
    tr = towers[name]
    c = problems[name].collection()
    # drop one extension copy: pretend the level-1 summand is still final
    broken_state = dataclasses.replace(
        tr.state, summands=[tr.state.step_projections[-1][0].target,
                            tr.state.summands[1]])
    broken = TowerResult(broken_state, tr.status, tr.terminated_level)
    rep = flatness_check(algebras[name].algebra, broken, c)
    assert not rep.dimension_identity_ok
    assert rep.mismatches


def test_socle_details(algebras):
    soc = socle_and_gorenstein(algebras["fx_fat3"].algebra)
    assert soc.socle_dim == 2 and soc.color_dims == [2]
    soc2 = socle_and_gorenstein(algebras["fx_loop2"].algebra)
    assert soc2.socle_dim == 1


def test_duality_on_simple_modules(algebras):
    for name in ("fx_loop2", "fx_cyc2", "fx_aba"):
        a = algebras[name].algebra
        for i in range(a.r):
            rep = duality_check(a, AlgebraModule.simple_right(a, i))
            assert rep.ok and rep.hom_to_r_dim == 1


def test_duality_on_regular_module(algebras):
    a = algebras["fx_loop2"].algebra
    rep = duality_check(a, AlgebraModule.regular_right(a))
    assert rep.ok and rep.hom_to_r_dim == a.dim


def test_duality_requires_gorenstein(algebras):
    a = algebras["fx_fat3"].algebra
    with pytest.raises(PreconditionError):
        duality_check(a, AlgebraModule.simple_right(a, 0))


def test_partial_algebra_at_cutoff(problems):
    from ncdef.tower import run_tower
    c = problems["fx_st"].collection()
    tr = run_tower(c, max_steps=3)
    assert tr.status == "cutoff"
    ea = end_algebra(tr, c)
    assert ea.algebra.dim == sum(tr.state.r_sequence)
    sig = dimension_signature(ea.algebra)
    # radical layers stay strictly positive all the way down
    for m in range(sig.nilpotency):
        assert sig.grid[m][0][0] > 0


def test_spherical_grid_failure_reported(problems, towers):
    sph = spherical_permutation(towers["fx_fat3"], problems["fx_fat3"].collection())
    assert not sph.ok
    assert sph.failing_rows == [0]
    assert sph.hom_grid == [[2]]
