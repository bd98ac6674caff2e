import pytest
from hypothesis import given, settings, strategies as st

from src.core.groups import (FiniteGroup, all_permutations, block_sum, compose, cyclic_group, direct_product,
                             enumerate_subgroups, identity_perm, inverse, named_group, symmetric_group)
from src.utils.helpers import AlgebraError, InputError

permutation_pairs = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.tuples(st.permutations(list(range(n))), st.permutations(list(range(n)))))


@given(permutation_pairs)
def test_inverse_undoes_compose(pair):
    p, q = pair
    n = len(p)
    assert compose(p, inverse(p)) == identity_perm(n)
    assert compose(inverse(q), inverse(p)) == inverse(compose(p, q))


@given(permutation_pairs)
def test_block_sum_keeps_blocks_apart(pair):
    p, q = pair
    combined = block_sum(p, q)
    n = len(p)
    assert list(combined[:n]) == list(p)
    assert [c - n for c in combined[n:]] == list(q)


@pytest.mark.parametrize("name, expected", [
    ('trivial', 1),
    ('Z2', 2),
    ('Z4', 3),
    ('S3', 6),
    ('Z2xZ2', 5),
])
def test_subgroup_counts(name, expected):
    group = named_group(name)
    subgroups = enumerate_subgroups(group)
    assert len(subgroups) == expected
    assert len({s.members for s in subgroups}) == expected
    assert all(group.is_subgroup_set(s.members) for s in subgroups)


def test_subgroups_are_sorted_by_size_then_members():
    subgroups = enumerate_subgroups(symmetric_group(3))
    keys = [s.sort_key for s in subgroups]
    assert keys == sorted(keys)
    assert subgroups[0].is_trivial()
    assert subgroups[-1].order == 6


def test_gsigma_multiplication_reverses_permutations():
    group = cyclic_group(2)
    parent = group.gsigma(3)
    assert parent.order == 12
    for a, (g, s) in enumerate(parent.elements):
        for b, (h, r) in enumerate(parent.elements):
            assert parent.elements[parent.multiply(a, b)] == (group.multiply(g, h), compose(r, s))


def test_direct_product_order_and_identity():
    product = direct_product(cyclic_group(2), cyclic_group(3))
    assert product.order == 6
    assert product.elements[product.identity] == (0, 0)
    # Z2 x Z3 is cyclic: some element has order 6
    assert any(len(product.closure([g])) == 6 for g in range(6))


def test_from_operation_matches_symmetric_group():
    perms = all_permutations(3)
    group = FiniteGroup.from_operation(perms, compose, identity_perm(3))
    assert group.order == 6
    assert len(enumerate_subgroups(group)) == 6


def test_invalid_table_is_rejected():
    with pytest.raises(AlgebraError):
        FiniteGroup(['e', 'x'], [[0, 1], [1, 1]], 0)


def test_unknown_group_name():
    with pytest.raises(InputError):
        named_group('Q8')


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(['Z2', 'Z3', 'Z4', 'S3']), st.data())
def test_conjugates_of_subgroups_are_subgroups(name, data):
    group = named_group(name)
    sub = data.draw(st.sampled_from(enumerate_subgroups(group)))
    x = data.draw(st.integers(min_value=0, max_value=group.order - 1))
    conjugate = sub.conjugate(x)
    assert group.is_subgroup_set(conjugate.members)
    assert conjugate.order == sub.order
