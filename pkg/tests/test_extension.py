import pytest

from src.core.colors import ColorMap, ColorSet, Signature
from src.core.extension import (ExtensionProblem, FiniteMap, check_injective_colorchange_pushout,
                                check_universal_property, compare_with_oracle, extension_colimit, filtration_stage,
                                filtration_summands, iterated_pushout_product, oracle_extension, pushout_product)
from src.core.free import FreeOperad
from src.core.operads import (TableOperad, check_operad_laws, endomorphism_operad, pullback_operad,
                              pushforward_operad_injective)
from src.core.symseq import SymSeqMap, from_orbits, from_table
from src.utils.helpers import ExtensionError, SearchLimitError

from .builders import binary, commutative_binaries, commutative_binary

# ==================== PUSHOUT-PRODUCTS ====================

def test_pushout_product_of_point_inclusions():
    f = FiniteMap.lift([0], [0, 1], lambda a: a)
    product = pushout_product(f, f)
    assert len(product.source) == 3
    assert len(product.target) == 4
    assert product.is_injective()
    assert not product.is_bijective()


def test_pushout_product_with_an_isomorphism_is_an_isomorphism():
    f = FiniteMap.lift([0], [0, 1], lambda a: a)
    iso = FiniteMap.lift(['x', 'y'], ['x', 'y'], lambda a: a)
    assert pushout_product(f, iso).is_bijective()


def test_empty_pushout_product_is_the_unit():
    unit = iterated_pushout_product([])
    assert unit.source == ()
    assert len(unit.target) == 1

# ==================== EXTENSIONS ====================

@pytest.fixture
def adjoin_commutative(one_color):
    """F(a) with a second commutative binary operation b attached along the empty sequence"""
    base = FreeOperad(commutative_binary(one_color, 3, 'a'))
    nothing = from_orbits(one_color, 3, [], name='X')
    target = commutative_binary(one_color, 3, 'b')
    u = SymSeqMap.from_function(nothing, target, lambda sig, x: x, name='u')
    attach = SymSeqMap.from_function(nothing, base.underlying, lambda sig, x: x, name='attach')
    return ExtensionProblem(base, u, attach, bound=3)


def test_adjoining_a_free_operation(adjoin_commutative):
    filtration = adjoin_commutative.filtration
    assert filtration.stabilized_at == 3
    assert filtration.final_stage == 2
    operad = extension_colimit(adjoin_commutative)
    assert operad.underlying.arity_counts() == {1: 1, 2: 2, 3: 12}


def test_stage_maps_are_injective(adjoin_commutative):
    rows = adjoin_commutative.filtration.stage_rows()
    assert [row['stage'] for row in rows] == [0, 1, 2]
    assert all(row['injective'] for row in rows)
    assert rows[0]['counts'] == {1: 1, 2: 1, 3: 3}


def test_filtration_agrees_with_the_oracle(adjoin_commutative):
    ok, witness = compare_with_oracle(adjoin_commutative)
    assert ok, witness


def test_oracle_levels(adjoin_commutative):
    assert oracle_extension(adjoin_commutative).arity_counts() == {1: 1, 2: 2, 3: 12}


def test_summands_with_and_without_the_group(adjoin_commutative):
    rows = filtration_summands(adjoin_commutative, Signature((0, 0, 0), 0))
    assert [row['stage'] for row in rows] == [0, 1, 2, 3]
    assert rows[0]['equivariant_size'] == rows[0]['plain_size'] == 3
    assert rows[-1]['equivariant_size'] == rows[-1]['plain_size'] == 12


def test_generator_class_is_new(adjoin_commutative):
    operad = extension_colimit(adjoin_commutative)
    binary = Signature((0, 0), 0)
    b = adjoin_commutative.target.generator_element('b')
    assert operad.generator_class(binary, b) in operad.value(binary)
    assert operad.generator_class(binary, b)[0] == "T"


def test_stage_beyond_the_bound(adjoin_commutative):
    with pytest.raises(ExtensionError):
        filtration_stage(adjoin_commutative, 4)


def test_problem_options_are_validated(adjoin_commutative):
    with pytest.raises(ExtensionError):
        adjoin_commutative.with_options(order='middle')
    with pytest.raises(ExtensionError):
        adjoin_commutative.with_options(bound=-1)


def test_resolution_order_does_not_change_the_colimit(adjoin_commutative):
    first = extension_colimit(adjoin_commutative)
    last = extension_colimit(adjoin_commutative.with_options(order='last'))
    assert last.underlying.arity_counts() == first.underlying.arity_counts()
    assert compare_with_oracle(adjoin_commutative.with_options(order='last'))[0]


def adjoin_along_nothing(base, target):
    nothing = from_orbits(base.colors, base.max_arity, [], name='X')
    u = SymSeqMap.from_function(nothing, target, lambda sig, x: x, name='u')
    attach = SymSeqMap.from_function(nothing, base.underlying, lambda sig, x: x, name='attach')
    return ExtensionProblem(base, u, attach, bound=2)


def test_universal_property_against_end2(one_color):
    problem = adjoin_along_nothing(FreeOperad(commutative_binary(one_color, 2, 'a')),
                                   commutative_binary(one_color, 2, 'b'))
    ok, rows = check_universal_property(problem, [endomorphism_operad(2, 2, one_color)])
    assert ok
    # a and b each go to one of the 8 commutative binary operations on two elements
    assert rows[0].extension_maps == rows[0].compatible_pairs == 64


def test_universal_property_stops_at_the_search_limit(one_color):
    problem = adjoin_along_nothing(FreeOperad(commutative_binary(one_color, 2, 'a')),
                                   commutative_binary(one_color, 2, 'b'))
    with pytest.raises(SearchLimitError):
        check_universal_property(problem, [endomorphism_operad(2, 2, one_color)], limit=10)

# ==================== GENERATORS ATTACHED ALONG X ====================

def attach_to(base, source, target, u_image, attach_image, bound, order='first'):
    """X = source sent to target by u and to base by attach; both images constant on each level"""
    u = SymSeqMap.from_function(source, target, lambda sig, x: u_image, name='u')
    attach = SymSeqMap.from_function(source, base.underlying, lambda sig, x: attach_image, name='attach')
    return ExtensionProblem(base, u, attach, bound=bound, order=order)


def the_element(operad, sig):
    (element,) = operad.value(sig)
    return element


@pytest.mark.parametrize("order", ['first', 'last'])
def test_identity_u_gives_back_the_base(one_color, order):
    base = FreeOperad(commutative_binary(one_color, 3, 'a'))
    x = commutative_binary(one_color, 3, 'x')
    sig = binary(one_color)
    problem = attach_to(base, x, x, x.generator_element('x'), the_element(base, sig), bound=3, order=order)
    operad = extension_colimit(problem)
    assert operad.underlying.arity_counts() == base.underlying.arity_counts() == {1: 1, 2: 1, 3: 3}
    ok, witness = compare_with_oracle(problem)
    assert ok, witness


@pytest.mark.parametrize("order", ['first', 'last'])
def test_attached_generator_plus_a_new_one(one_color, order):
    base = FreeOperad(commutative_binary(one_color, 3, 'a'))
    x = commutative_binary(one_color, 3, 'x')
    y = commutative_binaries(one_color, 3, ['y', 'b'])
    problem = attach_to(base, x, y, y.generator_element('y'), the_element(base, binary(one_color)), bound=3,
                        order=order)
    # x is glued to a, so only b is new and the result is free on two commutative operations
    assert extension_colimit(problem).underlying.arity_counts() == {1: 1, 2: 2, 3: 12}
    ok, witness = compare_with_oracle(problem)
    assert ok, witness


def test_attached_generator_universal_property(one_color):
    base = FreeOperad(commutative_binary(one_color, 2, 'a'))
    x = commutative_binary(one_color, 2, 'x')
    y = commutative_binaries(one_color, 2, ['y', 'b'])
    problem = attach_to(base, x, y, y.generator_element('y'), the_element(base, binary(one_color)), bound=2)
    ok, rows = check_universal_property(problem, [endomorphism_operad(2, 2, one_color)])
    assert ok
    assert rows[0].extension_maps == 64


def test_stages_over_a_base_with_constants(one_color):
    end = endomorphism_operad(2, 2, one_color)
    x = commutative_binary(one_color, 2, 'x')
    conjunction = (0, 0, 0, 1)
    problem = attach_to(end, x, x, x.generator_element('x'), conjunction, bound=2)
    for k in (0, 1):
        stage = filtration_stage(problem, k)
        assert stage.value.arity_counts() == end.underlying.arity_counts()
        assert k == 0 or stage.map_from_previous.is_levelwise_bijective()
    assert filtration_stage(problem, 1).value.arity_counts() == {0: 2, 1: 4, 2: 16}


def test_relations_above_the_truncation_are_counted(one_color):
    end = endomorphism_operad(1, 2, one_color)
    x = commutative_binary(one_color, 2, 'x')
    problem = attach_to(end, x, x, x.generator_element('x'), the_element(end, binary(one_color)), bound=2)
    rows = problem.filtration.stage_rows()
    assert [row['unresolved'] for row in rows[:2]] == [0, 0]
    # grafting through a constant at stage 2 needs a ternary operation
    assert rows[2]['unresolved'] > 0
    assert not problem.filtration.is_stabilized

# ==================== ONE-POINT OPERADS ====================

def reduced_point_operad(colors, max_arity):
    """One operation in each arity from 1 to max_arity, no constants"""
    sigs = {n: Signature((0,) * n, 0) for n in range(1, max_arity + 1)}
    underlying = from_table(colors, max_arity, {sig: ['*'] for sig in sigs.values()}, {}, name='point')
    compositions = {(sigs[n], '*', i, sigs[k], '*'): '*'
                    for n in sigs for k in sigs if n + k - 1 <= max_arity for i in range(n)}
    return TableOperad(underlying, {0: '*'}, compositions, name='point')


def test_reduced_point_operad_satisfies_the_laws(one_color):
    report = check_operad_laws(reduced_point_operad(one_color, 3))
    assert report.passed, report.witness and report.witness.describe()


def test_point_operad_extended_by_one_binary_generator(one_color):
    point = reduced_point_operad(one_color, 3)
    x = commutative_binary(one_color, 3, 'x')
    y = commutative_binary(one_color, 3, 'y')
    problem = attach_to(point, x, y, y.generator_element('y'), '*', bound=3)
    operad = extension_colimit(problem)
    assert operad.underlying.arity_counts() == {1: 1, 2: 1, 3: 1}
    ok, witness = compare_with_oracle(problem)
    assert ok, witness


def test_endomorphisms_of_a_point_do_not_stabilize_along_nothing(one_color):
    problem = adjoin_along_nothing(endomorphism_operad(1, 2, one_color), commutative_binary(one_color, 2, 'b'))
    assert not problem.filtration.is_stabilized
    with pytest.raises(ExtensionError):
        extension_colimit(problem)

# ==================== CHANGE OF COLORS ====================

def test_injective_color_change_commutes_with_extension(one_color):
    wide = ColorSet(one_color.group, ['*', 'new'])
    phi = ColorMap.by_names(one_color, wide)
    wide_operad = pushforward_operad_injective(phi, FreeOperad(commutative_binary(one_color, 2, 'a')))
    problem = adjoin_along_nothing(pullback_operad(phi, wide_operad), commutative_binary(one_color, 2, 'b'))
    report = check_injective_colorchange_pushout(problem, phi, wide_operad, free_bound=2)
    assert report.levels_agree, report.witness
    assert not report.local_iso_premise
    assert report.passed


def test_color_change_must_be_injective(sign_colors, adjoin_commutative):
    collapse = ColorMap(sign_colors, ColorSet(sign_colors.group, ['x', 'y']), [0, 0, 1])
    with pytest.raises(ExtensionError):
        check_injective_colorchange_pushout(adjoin_commutative, collapse, adjoin_commutative.base)
