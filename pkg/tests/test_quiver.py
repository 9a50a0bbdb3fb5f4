from fractions import Fraction

import pytest

from ncdef.errors import UsageError
from ncdef.linalg import Matrix, QQ
from ncdef.quiver import (Morphism, Quiver, Relation, Representation,
                          direct_sum, is_isomorphic, kernel_of, validate)


def test_quiver_rejects_bad_wiring():
    from ncdef.quiver import Arrow
    with pytest.raises(UsageError):
        Quiver(["v", "v"], [])
    with pytest.raises(UsageError):
        Quiver(["v"], [Arrow("a", "v", "w")])


def test_relation_composability(problems):
    q = problems["fx_aba"].pres.quiver
    with pytest.raises(UsageError):
        Relation(q, [(Fraction(1), ["a", "a"])])  # target 2 then source 1
    with pytest.raises(UsageError):
        Relation(q, [(Fraction(1), ["a"])])


def test_validate_flags_broken_relation(problems):
    pres = problems["fx_loop2"].pres
    bad = Representation(pres, {"v": 2},
                         {"t": Matrix(QQ, 2, 2, [[Fraction(0), Fraction(1)],
                                                 [Fraction(1), Fraction(0)]])})
    report = validate(bad)
    assert not report.ok
    assert report.violations[0]["relation"] == 0
    assert validate(problems["fx_loop2"].module("P")).ok


def test_path_map_applies_first_arrow_first(problems):
    p = problems["fx_cyc2"]
    s1 = p.module("S1")
    # path (a, b) goes 1 -> 2 -> 1, so its matrix is M_b @ M_a
    m = s1.path_map(["a", "b"])
    assert (m.rows, m.cols) == (s1.dims["1"], s1.dims["1"])


def test_direct_sum_blocks_and_canonical_maps(problems):
    p = problems["fx_a2"]
    p1, s2 = p.module("P1"), p.module("S2")
    total, injs, projs = direct_sum([p1, s2])
    assert total.dim_vector() == (1, 2)
    for inj, proj, part in zip(injs, projs, [p1, s2]):
        assert inj.is_valid() and proj.is_valid()
        comp = proj.compose(inj)
        assert comp.components["1"] == Matrix.identity(QQ, part.dims["1"])
        assert comp.components["2"] == Matrix.identity(QQ, part.dims["2"])
    cross = projs[1].compose(injs[0])
    assert cross.is_zero()


def test_kernel_of_projection_recovers_sub(problems):
    p = problems["fx_loop2"]
    s, reg = p.module("S"), p.module("P")
    # P -> S, quotient by the socle: kernel is S again
    proj = Morphism(reg, s, {"v": Matrix(QQ, 1, 2, [[Fraction(0), Fraction(1)]])})
    assert proj.is_valid()
    ker, incl = kernel_of(proj)
    assert ker.dim_vector() == (1,)
    assert incl.is_valid()
    assert (proj.compose(incl)).is_zero()


def test_iso_rejects_hom_asymmetry(problems):
    p = problems["fx_a2"]
    total, _, _ = direct_sum([p.module("S1"), p.module("S2")])
    v = is_isomorphic(total, p.module("P1"))
    assert not v
    assert "dimension mismatch" in v.reason


def test_iso_finds_witness_for_proportional_extensions(problems):
    pres = problems["fx_loop2"].pres
    e1 = Representation(pres, {"v": 2},
                        {"t": Matrix(QQ, 2, 2, [[Fraction(0), Fraction(1)],
                                                [Fraction(0), Fraction(0)]])})
    e2 = Representation(pres, {"v": 2},
                        {"t": Matrix(QQ, 2, 2, [[Fraction(0), Fraction(2)],
                                                [Fraction(0), Fraction(0)]])})
    v = is_isomorphic(e1, e2, trials=20, seed=0)
    assert v.is_iso
    w = v.witness
    assert all(w.components[x].is_invertible() for x in w.components)
    # witness actually intertwines the arrow maps
    assert (w.components["v"] @ e1.arrow_maps["t"]) == \
        (e2.arrow_maps["t"] @ w.components["v"])


def test_iso_verdict_records_seed(problems):
    p = problems["fx_loop2"]
    v = is_isomorphic(p.module("P"), p.module("P"), trials=5, seed=3)
    assert v.is_iso and v.seed == 3 and v.trials_used >= 1
