import pytest

from src.core.colors import Signature
from src.core.free import FreeOperad, free_map, free_operad, induced_algebra_map, is_reduced, monad_mult, monad_unit
from src.core.operads import check_operad_laws, count_operad_homs, endomorphism_operad
from src.core.symseq import SymSeqMap, from_orbits, identity_map
from src.utils.helpers import SearchLimitError, TreeError

from .builders import commutative_binary, free_binary


@pytest.fixture
def commutative_free(one_color):
    return FreeOperad(commutative_binary(one_color, 4))


@pytest.mark.parametrize("n, size", [(1, 1), (2, 1), (3, 3), (4, 15)])
def test_commutative_binary_level_sizes(commutative_free, n, size):
    sig = Signature((0,) * n, 0)
    assert len(commutative_free.value(sig)) == size
    assert set(commutative_free.value(sig)) == commutative_free.oracle_elements(sig)


def test_plain_free_operad_agrees_for_the_trivial_group(one_color):
    plain = free_operad(commutative_binary(one_color, 4), equivariant=False)
    assert plain.underlying.arity_counts() == {1: 1, 2: 1, 3: 3, 4: 15}


def test_summands_by_tree_class(commutative_free):
    rows = commutative_free.summand_report(Signature((0,) * 4, 0))
    assert sorted(row.aut_order for row in rows) == [2, 8]
    assert sorted(row.elements for row in rows) == [3, 12]


def test_non_commutative_generator_doubles_each_vertex(one_color):
    free = FreeOperad(free_binary(one_color, 3))
    assert len(free.value(Signature((0, 0), 0))) == 2
    assert len(free.value(Signature((0, 0, 0), 0))) == 12


def test_unbounded_free_operad_needs_a_reduced_sequence(one_color):
    unary = from_orbits(one_color, 2, [(Signature((0,), 0), None, 'u')])
    assert not is_reduced(unary)
    with pytest.raises(TreeError):
        FreeOperad(unary)
    assert len(FreeOperad(unary, bound=2).value(Signature((0,), 0))) == 3


def test_monad_unit_and_functoriality(commutative_free):
    eta = monad_unit(commutative_free)
    assert eta.is_levelwise_injective()
    assert eta.check_naturality()[0]
    identity = free_map(identity_map(commutative_free.generators), commutative_free, commutative_free)
    assert identity.is_levelwise_bijective()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_monad_multiplication_flattens_onto_every_element(one_color, n):
    free = FreeOperad(commutative_binary(one_color, 3))
    outer = FreeOperad(free.underlying, bound=1)
    mu = monad_mult(outer, free)
    sig = Signature((0,) * n, 0)
    assert {mu.apply(sig, x) for x in outer.value(sig)} == set(free.value(sig))


def test_monad_multiplication_needs_the_matching_free_operad(commutative_free):
    with pytest.raises(TreeError):
        monad_mult(commutative_free, commutative_free)


def test_free_operad_satisfies_the_laws(one_color):
    report = check_operad_laws(FreeOperad(commutative_binary(one_color, 3)))
    assert report.passed, report.witness and report.witness.describe()


def test_maps_into_end2(one_color):
    free = FreeOperad(commutative_binary(one_color, 2))
    end = endomorphism_operad(2, 2, one_color)
    assert count_operad_homs(free, end) == 8


def test_map_count_past_the_search_limit_raises(one_color):
    free = FreeOperad(commutative_binary(one_color, 2))
    end = endomorphism_operad(2, 2, one_color)
    assert count_operad_homs(free, end, limit=8) == 8
    with pytest.raises(SearchLimitError):
        count_operad_homs(free, end, limit=5)


def test_induced_map_evaluates_trees(one_color):
    generators = commutative_binary(one_color, 3)
    free = FreeOperad(generators)
    end = endomorphism_operad(2, 3, one_color)
    conjunction = (0, 0, 0, 1)
    attach = SymSeqMap.from_function(generators, end.underlying, lambda sig, x: conjunction)
    evaluate = induced_algebra_map(free, end, attach)
    ternary = Signature((0, 0, 0), 0)
    assert {evaluate.apply(ternary, x) for x in free.value(ternary)} == {(0, 0, 0, 0, 0, 0, 0, 1)}
