import pytest

from src.core.families import (GSigmaFamily, all_family, enumerate_graph_subgroups, graph_family,
                               graph_homomorphism, pullback_family, trivial_family, validate_family)
from src.core.groups import named_group, trivial_group
from src.utils.helpers import AlgebraError


def brute_force_graphs(group, n):
    parent = group.gsigma(n)
    return [s for s in parent.subgroups()
            if len({parent.elements[m][0] for m in s.members}) == s.order]


@pytest.mark.parametrize("name, n, expected", [
    ('trivial', 2, 1),
    ('Z2', 2, 3),
    ('Z2', 3, 5),
])
def test_graph_subgroup_counts(name, n, expected):
    group = named_group(name)
    graphs = enumerate_graph_subgroups(group, n)
    assert len(graphs) == expected
    assert {s.members for s in graphs} == {s.members for s in brute_force_graphs(group, n)}


def test_graph_homomorphism_recovers_the_map():
    group = named_group('Z2')
    for gamma in enumerate_graph_subgroups(group, 2):
        domain, phi = graph_homomorphism(gamma)
        assert group.identity in domain
        assert phi[group.identity] == (0, 1)
        assert len(domain) == gamma.order


def test_non_graph_subgroup_is_rejected():
    group = named_group('Z2')
    parent = group.gsigma(2)
    swap_only = parent.subgroup([parent.index[(0, (1, 0))]])
    with pytest.raises(AlgebraError):
        graph_homomorphism(swap_only)


@pytest.mark.parametrize("builder", [all_family, trivial_family, graph_family])
def test_standard_families_are_closed(builder):
    family = builder(named_group('Z2'), range(0, 4))
    ok, witness = validate_family(family)
    assert ok
    assert witness is None


def test_missing_subgroup_is_reported():
    group = named_group('Z2')
    family = GSigmaFamily(group, {1: [[0, 1]]}, name="whole only")
    ok, witness = validate_family(family)
    assert not ok
    assert witness.reason == "not closed under subgroups"
    assert witness.offender == frozenset({0})


def test_closing_a_generating_set():
    group = named_group('Z2')
    family = GSigmaFamily(group, {1: [[0, 1]]}, close=True)
    assert family.counts() == {1: 2}
    assert validate_family(family)[0]


def test_non_subgroup_member_set_is_rejected():
    with pytest.raises(AlgebraError):
        GSigmaFamily(named_group('Z2'), {1: [[1]]})


def test_pullback_of_graph_family_along_trivial_inclusion():
    pulled = pullback_family([0], trivial_group(), graph_family(named_group('Z2'), range(0, 4)))
    # only the trivial subgroup of Sigma_n^op maps to a graph subgroup
    assert pulled.counts() == {0: 1, 1: 1, 2: 1, 3: 1}


def test_with_arity_replaces_one_level():
    family = all_family(named_group('Z2'), range(0, 3))
    smaller = family.with_arity(2, [named_group('Z2').gsigma(2).trivial_subgroup()])
    assert smaller.counts()[2] == 1
    assert smaller.counts()[1] == family.counts()[1]
    assert smaller <= family
