import itertools

import pytest

from src.core.colors import ColorMap, ColorSet, Signature
from src.core.operads import (NewColorUnit, TableOperad, check_operad_laws, endomorphism_operad, eval_tree,
                              pullback_operad, pushforward_operad_injective)
from src.core.trees import ColoredTree, leaf, vertex
from src.utils.helpers import OperadError, TruncationError

AND = (0, 0, 0, 1)
XOR = (0, 1, 1, 0)
UNARY = Signature((0,), 0)
BINARY = Signature((0, 0), 0)


def left_comb():
    return ColoredTree(vertex(0, [vertex(0, [leaf(0), leaf(0)]), leaf(0)]))


def test_end2_satisfies_the_laws(end2):
    report = check_operad_laws(end2, seed=0)
    assert report.passed
    assert report.checked['unit'] > 0
    assert report.checked['equivariance'] > 0


def test_mutated_unit_entry_breaks_the_laws(end2):
    table = TableOperad.from_operad(end2)
    key = (UNARY, end2.unit(0), 0, BINARY, (0, 0, 0, 0))
    assert table.compositions[key] == (0, 0, 0, 0)
    report = check_operad_laws(table.mutated(key, (1, 1, 1, 1)), seed=0)
    assert not report.passed
    assert report.witness.law == 'unit'


def test_mutation_needs_an_existing_entry(end2):
    table = TableOperad.from_operad(end2)
    with pytest.raises(OperadError):
        table.mutated((UNARY, 'nothing', 0, UNARY, 'nothing'), 'x')


def test_eval_tree_composes_functions(one_color):
    end = endomorphism_operad(2, 3, one_color)
    value = eval_tree(end, left_comb(), {(): AND, (0,): XOR})
    expected = tuple(AND[2 * XOR[2 * x + y] + z] for x, y, z in itertools.product((0, 1), repeat=3))
    assert value == expected
    assert end.apply(Signature((0, 0, 0), 0), value, (1, 0, 1)) == 1


def test_eval_tree_on_a_stick(end2):
    assert eval_tree(end2, ColoredTree.stick(0), {}) == end2.unit(0)


def test_eval_tree_outside_the_truncation(end2):
    with pytest.raises(TruncationError):
        eval_tree(end2, left_comb(), {(): AND, (0,): XOR})


def test_eval_tree_rejects_foreign_labels(end2):
    with pytest.raises(OperadError):
        eval_tree(end2, ColoredTree.corolla(BINARY), {(): (0, 1)})


def test_change_of_colors(one_color):
    wide = ColorSet(one_color.group, ['*', 'new'])
    phi = ColorMap.by_names(one_color, wide)
    end = endomorphism_operad(2, 2, one_color)
    pushed = pushforward_operad_injective(phi, end)
    assert pushed.unit(1) == NewColorUnit(1)
    assert pushed.value(Signature((1,), 1)) == (NewColorUnit(1),)
    assert pushed.value(Signature((0, 1), 0)) == ()
    assert check_operad_laws(pushed, seed=0).passed
    back = pullback_operad(phi, pushed)
    assert back.value(BINARY) == end.value(BINARY)
