import pytest

from src.core.families import all_family, graph_family, trivial_family
from src.core.groupoids import (GroupoidFamily, SetValuedFunctor, TableGroupoid, all_groupoid_family,
                                check_block_inclusion, check_wreath_pullback, count_natural_transformations,
                                family_as_groupoid_family, group_as_groupoid, group_family,
                                group_homomorphism_functor, hom_set, lan_along, lan_by_induction, meet_family,
                                semidirect_groupoid, trivial_groupoid_family, validate_groupoid_family,
                                wreath_groupoid)
from src.core.groups import named_group, trivial_group
from src.utils.helpers import GroupoidError


def free_orbit(group, base=None):
    """G acting on itself by left multiplication, on the one-object groupoid"""
    base = base or group_as_groupoid(group)
    return SetValuedFunctor(base, {'*': list(range(group.order))}, lambda f, x: group.multiply(f.data, x))


def test_signature_groupoid_axioms(sign_colors):
    groupoid = sign_colors.signature_groupoid(1)
    ok, reason = groupoid.check_axioms()
    assert ok, reason
    # (;a) and (;-a) are swapped by the sign, (;b) is alone
    a, minus_a, b = (sign_colors.signature(text) for text in (';a', ';-a', ';b'))
    assert groupoid.representative(minus_a) == groupoid.representative(a)
    assert groupoid.representative(b) == b


def test_wreath_groupoid_axioms_and_size():
    wreath = wreath_groupoid(group_as_groupoid(named_group('Z2')), 2)
    assert wreath.check_axioms()[0]
    (obj,) = wreath.objects()
    assert len(wreath.hom(obj, obj)) == 8


def test_table_groupoid_requires_inverses():
    with pytest.raises(GroupoidError):
        TableGroupoid(['x', 'y'], [('1x', 'x', 'x'), ('1y', 'y', 'y'), ('f', 'x', 'y')],
                      {('1x', '1x'): '1x', ('1y', '1y'): '1y', ('f', '1x'): 'f', ('1y', 'f'): 'f'},
                      {'x': '1x', 'y': '1y'})


def two_points():
    return TableGroupoid(['x', 'y'], [('1x', 'x', 'x'), ('1y', 'y', 'y')],
                         {('1x', '1x'): '1x', ('1y', '1y'): '1y'}, {'x': '1x', 'y': '1y'})


def test_semidirect_with_swapped_points_is_connected():
    group = named_group('Z2')
    inner = two_points()
    other = {'x': 'y', 'y': 'x'}
    move = lambda g, c: c if g == group.identity else other[c]
    groupoid = semidirect_groupoid(group, inner, move, lambda g, f: inner.identity(move(g, f.source)))
    ok, reason = groupoid.check_axioms()
    assert ok, reason
    assert groupoid.components() == [('x', 'y')]
    assert len(groupoid.hom('x', 'x')) == 1
    assert len(groupoid.hom('x', 'y')) == 1


def test_semidirect_rejects_a_non_action():
    group = named_group('Z2')
    inner = two_points()
    with pytest.raises(GroupoidError):
        semidirect_groupoid(group, inner, lambda g, c: 'x', lambda g, f: inner.identity('x'))


def test_natural_transformations_between_free_orbits():
    orbit = free_orbit(named_group('Z2'))
    assert count_natural_transformations(orbit, orbit) == 2
    maps = list(hom_set(orbit, orbit))
    assert len(maps) == 2
    assert all(m.check_naturality()[0] for m in maps)


def test_free_orbit_to_fixed_point_has_one_map():
    group = named_group('Z3')
    base = group_as_groupoid(group)
    point = SetValuedFunctor(base, {'*': ['p']}, lambda f, x: x)
    orbit = free_orbit(group, base)
    assert count_natural_transformations(orbit, point) == 1
    assert count_natural_transformations(point, orbit) == 0


def test_left_kan_extension_of_a_point_along_the_trivial_inclusion():
    source, target = group_as_groupoid(trivial_group()), group_as_groupoid(named_group('Z2'))
    inclusion = group_homomorphism_functor(source, target, [0])
    point = SetValuedFunctor(source, {'*': ['p']}, lambda f, x: x)
    lan = lan_along(inclusion, point)
    assert len(lan.value('*')) == 2
    assert lan.check_functoriality()[0]
    assert len(lan_by_induction(inclusion, point, '*')) == 2


def test_left_kan_extension_along_the_quotient_collapses_the_orbit():
    group = named_group('Z2')
    quotient = group_homomorphism_functor(group_as_groupoid(group), group_as_groupoid(trivial_group()), [0, 0])
    lan = lan_along(quotient, free_orbit(group))
    assert len(lan.value('*')) == 1


def test_groupoid_families_are_validated():
    base = group_as_groupoid(named_group('S3'))
    assert validate_groupoid_family(all_groupoid_family(base))[0]
    assert validate_groupoid_family(trivial_groupoid_family(base))[0]
    closed = group_family(named_group('S3'), [[0, 1]], close=True)
    assert validate_groupoid_family(closed)[0]


def test_explicit_family_missing_conjugates_fails():
    group = named_group('S3')
    base = group_as_groupoid(group)
    aut = base.aut_group('*')
    order_two = next(s for s in group.subgroups() if s.order == 2)
    family = GroupoidFamily(base, members={'*': [[aut.arrows[group.identity]],
                                                 [aut.arrows[i] for i in order_two.members]]})
    ok, witness = validate_groupoid_family(family)
    assert not ok
    assert witness.reason == "not closed under conjugation"


def test_graph_family_as_groupoid_family():
    family = family_as_groupoid_family(graph_family(named_group('Z2'), range(0, 3)))
    assert validate_groupoid_family(family)[0]


@pytest.mark.parametrize("n, m", [(1, 1), (1, 2), (2, 1)])
def test_block_inclusion_preserves_wreath_families(n, m):
    base = group_as_groupoid(named_group('Z2'))
    assert check_block_inclusion(all_groupoid_family(base), n, m)[0]
    assert check_block_inclusion(trivial_groupoid_family(base), n, m)[0]


def test_wreath_commutes_with_pullback():
    source, target = group_as_groupoid(trivial_group()), group_as_groupoid(named_group('Z2'))
    inclusion = group_homomorphism_functor(source, target, [0])
    ok, reason = check_wreath_pullback(inclusion, trivial_groupoid_family(target), 2)
    assert ok, reason


def test_meet_keeps_subgroups_with_both_projections_in_the_families():
    group = trivial_group()
    meet = meet_family(all_family(group, range(3)), trivial_family(group, range(3)))
    ok, witness = validate_groupoid_family(meet)
    assert ok, witness
    # only at arity pair (2, 2) is the automorphism group Sigma_2 x Sigma_2
    (obj,) = [x for x in meet.base.objects() if len(meet.base.hom(x, x)) == 4]
    assert len(meet.member_arrow_sets(obj)) == 2
