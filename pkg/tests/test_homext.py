import random
from fractions import Fraction

import pytest

from ncdef.errors import PreconditionError
from ncdef.homext import (common_extension, ext1_space, extension_of,
                          hom_space, pullback_class, universal_extension)
from ncdef.quiver import direct_sum, is_isomorphic, validate


def test_hom_dims_on_a2(problems):
    p = problems["fx_a2"]
    assert hom_space(p.module("P1"), p.module("S1")).dim == 1
    assert hom_space(p.module("S1"), p.module("P1")).dim == 0
    assert hom_space(p.module("S1"), p.module("S2")).dim == 0


def test_hom_basis_morphisms_are_valid(problems):
    p = problems["fx_loop2"]
    sp = hom_space(p.module("P"), p.module("P"))
    assert sp.dim == 2
    for b in sp.basis:
        assert b.is_valid()


def test_hom_coordinates_roundtrip(problems):
    p = problems["fx_loop2"]
    sp = hom_space(p.module("P"), p.module("P"))
    f = sp.basis[0].scale(Fraction(3)) + sp.basis[1].scale(Fraction(-2))
    assert sp.coordinates_of(f) == [Fraction(3), Fraction(-2)]


def test_ext_dims(problems):
    a2, loop2, st = problems["fx_a2"], problems["fx_loop2"], problems["fx_st"]
    assert ext1_space(a2.module("S1"), a2.module("S2")).dim == 1
    assert ext1_space(a2.module("S2"), a2.module("S1")).dim == 0
    assert ext1_space(loop2.module("P"), loop2.module("S")).dim == 0
    assert ext1_space(st.module("S"), st.module("S")).dim == 2


def test_extension_middle_realizes_the_class(problems):
    a2 = problems["fx_a2"]
    sp = ext1_space(a2.module("S1"), a2.module("S2"))
    ext = extension_of(sp.basis_class(0))
    assert ext.middle.dim_vector() == (1, 1)
    assert not ext.middle.arrow_maps["a"].is_zero()   # this is P1, not S1+S2
    assert validate(ext.middle).ok
    assert ext.projection.compose(ext.inclusion).is_zero()


def test_zero_class_gives_split_middle(problems):
    st = problems["fx_st"]
    sp = ext1_space(st.module("S"), st.module("S"))
    split = extension_of(sp.zero_class()).middle
    two, _, _ = direct_sum([st.module("S"), st.module("S")])
    assert is_isomorphic(split, two).is_iso


def test_class_coordinates_roundtrip(problems):
    st = problems["fx_st"]
    sp = ext1_space(st.module("S"), st.module("S"))
    coords = [Fraction(2), Fraction(-5)]
    assert sp.coordinates_of(sp.cls(coords).cocycle()) == coords


def test_pullback_is_nonzero_along_sibling_projection(problems):
    st = problems["fx_st"]
    s = st.module("S")
    sp = ext1_space(s, s)
    # identify which basis class carries the s-arrow and pull the other back
    e_s = extension_of(sp.basis_class(0))
    pulled = pullback_class(sp.basis_class(1), e_s.projection)
    assert not pulled.is_zero()


def test_pullback_is_linear(problems):
    st = problems["fx_st"]
    sp = ext1_space(st.module("S"), st.module("S"))
    e = extension_of(sp.basis_class(0))
    target = ext1_space(e.middle, st.module("S"))
    a = pullback_class(sp.cls([1, 2]), e.projection, target)
    b = pullback_class(sp.cls([3, -1]), e.projection, target)
    ab = pullback_class(sp.cls([4, 1]), e.projection, target)
    summed = [st.field.add(x, y) for x, y in zip(a.coordinates, b.coordinates)]
    assert summed == ab.coordinates


def test_universal_extension_shapes(problems):
    loop2, fat3 = problems["fx_loop2"], problems["fx_fat3"]
    ue = universal_extension(loop2.module("S"), [loop2.module("S")])
    assert ue.middle.total_dim == 2 and ue.ext_dims == [1]
    ue3 = universal_extension(fat3.module("S"), [fat3.module("S")])
    assert ue3.middle.total_dim == 3 and ue3.ext_dims == [2]
    assert validate(ue3.middle).ok


def test_universal_extension_preserves_simplicity(problems):
    # dim Hom(F1_i, F_j) stays the identity table after one step
    p = problems["fx_aba"]
    members = [p.module("S1"), p.module("S2")]
    mids = [universal_extension(g, members).middle for g in members]
    for i, g in enumerate(mids):
        for j, fj in enumerate(members):
            assert hom_space(g, fj).dim == (1 if i == j else 0)


def test_universal_extension_on_rigid_object_is_identity(problems):
    loop2 = problems["fx_loop2"]
    ue = universal_extension(loop2.module("P"), [loop2.module("S")])
    assert ue.ext_dims == [0]
    assert ue.middle is loop2.module("P")


def test_common_extension_on_independent_classes(problems):
    st = problems["fx_st"]
    sp = ext1_space(st.module("S"), st.module("S"))
    ce = common_extension(sp.basis_class(0), sp.basis_class(1))
    assert ce.middle.total_dim == 3
    assert validate(ce.middle).ok
    for pc in ce.pulled_classes:
        assert not pc.is_zero()
    for f in ce.maps_to_sides:
        assert f.is_valid()


def test_common_extension_rejects_proportional_pairs(problems):
    st = problems["fx_st"]
    sp = ext1_space(st.module("S"), st.module("S"))
    with pytest.raises(PreconditionError):
        common_extension(sp.basis_class(0), sp.cls([Fraction(7), Fraction(0)]))
    with pytest.raises(PreconditionError):
        common_extension(sp.basis_class(0), sp.zero_class())


def test_common_extension_across_targets(problems):
    p = problems["fx_aba"]
    g, _, _ = direct_sum([p.module("S1"), p.module("S2")])
    sp1 = ext1_space(g, p.module("S1"))
    sp2 = ext1_space(g, p.module("S2"))
    assert sp1.dim == 1 and sp2.dim == 1
    ce = common_extension(sp1.basis_class(0), sp2.basis_class(0))
    assert ce.middle.total_dim == g.total_dim + 2


def test_common_extension_random_classes_seeded(problems):
    st = problems["fx_st"]
    sp = ext1_space(st.module("S"), st.module("S"))
    rng = random.Random(11)
    for _ in range(10):
        c0 = [Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))]
        c1 = [Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))]
        if c0[0] * c1[1] - c0[1] * c1[0] == 0:
            continue
        ce = common_extension(sp.cls(c0), sp.cls(c1))
        assert ce.middle.total_dim == 3
