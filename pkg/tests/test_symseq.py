import pytest
from hypothesis import given, settings, strategies as st

from src.core.colors import ColorMap, ColorSet, Signature
from src.core.families import all_family, trivial_family
from src.core.groups import named_group
from src.core.symseq import (SymSeqMap, constant, count_symseq_homs, fixed_points, forget_equivariance, from_orbits,
                             identity_map, is_F_equivalence, pullback, pushforward, quotient_by, representable)
from src.utils.helpers import SignatureError, SymSeqError, SymSeqRangeError

from .builders import binary, commutative_binary, free_binary


def swap_subgroup(colors):
    parent = colors.group.gsigma(2)
    return parent.subgroup([parent.index[(colors.group.identity, (1, 0))]])


def free_point_orbit(colors):
    """A free G-orbit of constants at (;*)"""
    return from_orbits(colors, 0, [(Signature((), 0), None, 'x')], name='free')

# ==================== ORBIT PRESENTATIONS ====================

def test_orbit_sizes(one_color):
    assert commutative_binary(one_color, 2).arity_counts() == {2: 1}
    assert free_binary(one_color, 2).arity_counts() == {2: 2}
    seq = free_binary(one_color, 2)
    assert seq.generator_element('a') in seq.value(binary(one_color))


def test_representable_is_a_functor(sign_colors):
    sig = sign_colors.signature('a,-a;b')
    seq = representable(sign_colors, 2, sig)
    assert len(seq.value(sig)) == 2
    assert len(seq.value(sign_colors.signature('-a,a;b'))) == 2
    assert seq.value(sign_colors.signature('a,a;b')) == ()
    ok, reason = seq.check_functoriality()
    assert ok, reason


def test_value_outside_the_range_raises(one_color):
    seq = free_binary(one_color, 2)
    with pytest.raises(SymSeqRangeError):
        seq.value(Signature((0, 0, 0), 0))


def test_stabilizer_must_fix_the_signature(sign_colors):
    parent = sign_colors.group.gsigma(2)
    swap = parent.subgroup([parent.index[(0, (1, 0))]])
    with pytest.raises(SymSeqError):
        from_orbits(sign_colors, 2, [(sign_colors.signature('a,b;b'), swap, 'x')])


def test_fixed_points_of_the_swap(one_color):
    swap = swap_subgroup(one_color)
    assert fixed_points(free_binary(one_color, 2), binary(one_color), swap) == []
    assert len(fixed_points(commutative_binary(one_color, 2), binary(one_color), swap)) == 1


def test_quotient_by_the_swap(one_color):
    quotient = quotient_by(free_binary(one_color, 2), swap_subgroup(one_color), binary(one_color))
    assert quotient.arity_counts() == {2: 1}
    ok, reason = quotient.check_functoriality()
    assert ok, reason

Z2_POINT = ColorSet.trivial(['*'], group=named_group('Z2'))
BINARY_STABILIZERS = Z2_POINT.group.gsigma(2).subgroups()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(range(len(BINARY_STABILIZERS))), min_size=1, max_size=3))
def test_orbit_presentations_are_functors(indices):
    sig = Signature((0, 0), 0)
    orbits = [(sig, BINARY_STABILIZERS[i], f'x{k}') for k, i in enumerate(indices)]
    seq = from_orbits(Z2_POINT, 2, orbits)
    ok, reason = seq.check_functoriality()
    assert ok, reason
    assert len(seq.value(sig)) == sum(4 // BINARY_STABILIZERS[i].order for i in indices)

# ==================== MAPS ====================

def test_hom_counts(z2_point):
    free = free_point_orbit(z2_point)
    two_points = constant(z2_point, 0, Signature((), 0), ['p', 'q'])
    assert count_symseq_homs(free, free) == 2
    assert count_symseq_homs(free, two_points) == 2
    assert count_symseq_homs(two_points, free) == 0


def test_identity_map(one_color):
    seq = free_binary(one_color, 2)
    f = identity_map(seq)
    assert f.is_levelwise_bijective()
    assert f.check_naturality()[0]


def test_maps_need_a_common_base(one_color, z2_point):
    with pytest.raises(SignatureError):
        SymSeqMap(free_binary(one_color, 2), free_point_orbit(z2_point), {})

# ==================== F-EQUIVALENCES ====================

def test_non_natural_map_and_families(z2_point):
    free = free_point_orbit(z2_point)
    two_points = constant(z2_point, 0, Signature((), 0), ['p', 'q'])
    f = SymSeqMap.from_function(free, two_points, lambda sig, x: 'p' if x[1][0] == 0 else 'q')
    assert not f.check_naturality()[0]

    ok, witness = is_F_equivalence(f, trivial_family(z2_point.group, [0]))
    assert ok and witness is None

    ok, witness = is_F_equivalence(f, all_family(z2_point.group, [0]))
    assert not ok
    assert witness.signature == Signature((), 0)
    assert witness.reason == "not surjective on fixed points"


def test_family_must_cover_the_arities(one_color):
    f = identity_map(free_binary(one_color, 2))
    with pytest.raises(SymSeqRangeError):
        is_F_equivalence(f, all_family(one_color.group, [0, 1]))

# ==================== CHANGE OF COLORS ====================

def test_pushforward_and_pullback_along_an_inclusion(sign_colors):
    small = ColorSet(sign_colors.group, ['b'])
    phi = ColorMap.by_names(small, sign_colors)
    seq = representable(small, 1, Signature((0,), 0))
    pushed = pushforward(phi, seq)
    b, a = sign_colors.index('b'), sign_colors.index('a')
    assert len(pushed.value(Signature((b,), b))) == len(seq.value(Signature((0,), 0))) == 2
    assert pushed.value(Signature((a,), b)) == ()
    back = pullback(phi, pushed)
    assert back.value(Signature((0,), 0)) == seq.value(Signature((0,), 0))


def test_forgetting_equivariance_keeps_values(sign_colors):
    sig = sign_colors.signature('a,-a;b')
    plain = forget_equivariance(representable(sign_colors, 2, sig))
    ok, reason = plain.check_functoriality()
    assert ok, reason
    assert len(plain.value(sig)) == 2
