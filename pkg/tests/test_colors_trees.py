import itertools

import networkx as nx
import pytest

from src.core.colors import (ColorMap, ColorSet, Signature, act_on_signature, projection_functor,
                             signature_automorphisms, stabilizes)
from src.core.families import GSigmaFamily, all_family, enumerate_graph_subgroups, trivial_family
from src.core.groups import trivial_group
from src.core.trees import (AlternatingTree, ColoredTree, check_pseudo_indexing, enumerate_alternating,
                            enumerate_trees, graft, graft_at_leaf, orbit_corolla_forest)
from src.services.worked_examples import example_colors, forest_trees
from src.utils.helpers import SignatureError, TreeError

# ==================== COLORS ====================

def test_signature_parsing(sign_colors):
    assert sign_colors.signature('a, -a ;b') == Signature((0, 1), 2)
    assert sign_colors.signature(';a') == Signature((), 0)
    assert Signature((0, 1), 2).key(sign_colors) == 'a,-a;b'


@pytest.mark.parametrize("text", ['a,b', 'a,z;b'])
def test_bad_signatures_raise(sign_colors, text):
    with pytest.raises(SignatureError):
        sign_colors.signature(text)


def test_action_on_signature(sign_colors):
    sig = sign_colors.signature('a,b;-a')
    assert act_on_signature(sign_colors, 1, (0, 1), sig) == sign_colors.signature('-a,b;a')
    assert act_on_signature(sign_colors, 0, (1, 0), sig) == sign_colors.signature('b,a;-a')


@pytest.mark.parametrize("text, order", [
    ('a,b,b,-a;b', 4),
    ('a,a,-a,-a;b', 8),
])
def test_sign_group_stabilizers(sign_colors, text, order):
    sig = sign_colors.signature(text)
    assert signature_automorphisms(sign_colors, sig).order == order
    graphs = [s for s in enumerate_graph_subgroups(sign_colors.group, 4)
              if not s.is_trivial() and stabilizes(sign_colors, s, sig)]
    assert len(graphs) == 2


def test_stabilizes_checks_arity(sign_colors):
    sub = sign_colors.group.gsigma(2).trivial_subgroup()
    with pytest.raises(SignatureError):
        stabilizes(sign_colors, sub, sign_colors.signature('a;b'))


def test_color_map_must_be_equivariant(sign_colors):
    target = ColorSet(sign_colors.group, ['x', 'y'])
    with pytest.raises(SignatureError):
        ColorMap(sign_colors, target, [0, 1, 0])
    collapse = ColorMap(sign_colors, target, [0, 0, 1])
    assert not collapse.injective
    assert collapse.on_signature(sign_colors.signature('a,-a;b')) == Signature((0, 0), 1)
    assert len(collapse.preimages(Signature((0,), 1))) == 2

def test_projection_to_arities(sign_colors):
    projection = projection_functor(sign_colors, 2)
    ok, reason = projection.check()
    assert ok, reason
    assert projection.obj(sign_colors.signature('a,-a;b')) == 2

# ==================== TREES ====================

def binary_classes(n):
    colors = ColorSet.trivial(['*'])
    return enumerate_trees(colors, Signature((0,) * n, 0), reduced=True, vertex_arities=[2])


@pytest.mark.parametrize("n, aut_orders", [
    (2, [2]),
    (3, [2]),
    (4, [2, 8]),
])
def test_binary_tree_classes(n, aut_orders):
    assert sorted(c.aut_order for c in binary_classes(n)) == aut_orders


def test_binary_classes_are_pairwise_non_isomorphic():
    classes = binary_classes(5)
    assert len(classes) == 3
    same = lambda a, b: a['kind'] == b['kind'] and a['color'] == b['color']
    for first, second in itertools.combinations(classes, 2):
        assert not nx.is_isomorphic(first.tree.to_networkx(), second.tree.to_networkx(), node_match=same)
    for tree_class in classes:
        assert tree_class.tree.leaf_root() == Signature((0,) * 5, 0)
        assert tree_class.tree.vertex_count == 4


@pytest.mark.parametrize("arities", [[0, 2], [1, 2, 3]])
def test_reduced_trees_reject_small_vertex_arities(one_color, arities):
    with pytest.raises(TreeError):
        enumerate_trees(one_color, Signature((0,) * 3, 0), reduced=True, vertex_arities=arities)


def test_reduced_trees_default_to_arities_from_two(one_color):
    classes = enumerate_trees(one_color, Signature((0,) * 3, 0), reduced=True)
    assert len(classes) == 2


def test_stick_is_enumerated(one_color):
    classes = enumerate_trees(one_color, Signature((0,), 0), bound=0)
    assert [c.tree.is_stick for c in classes] == [True]


def test_alternating_without_inert_vertices(one_color):
    classes = enumerate_alternating(one_color, Signature((0, 0), 0), 0)
    assert len(classes) == 1
    assert classes[0].tree.vertex_corollas() == (Signature((0, 0), 0),)


def test_alternating_with_one_inert_vertex(one_color):
    classes = enumerate_alternating(one_color, Signature((0, 0), 0), 1)
    assert classes
    for tree_class in classes:
        assert AlternatingTree(tree_class.tree).inert_count == 1
        assert tree_class.tree.leaf_root() == Signature((0, 0), 0)

# ==================== GRAFTING ====================

def test_graft_at_leaf_builds_a_comb(one_color):
    binary_corolla = ColoredTree.corolla(Signature((0, 0), 0), one_color)
    comb = graft_at_leaf(binary_corolla, 0, binary_corolla)
    assert comb.leaf_root() == Signature((0, 0, 0), 0)
    assert comb.vertex_count == 2


def test_graft_replaces_a_vertex(one_color):
    binary_corolla = ColoredTree.corolla(Signature((0, 0), 0), one_color)
    unary = ColoredTree.corolla(Signature((0,), 0), one_color)
    inner = graft_at_leaf(binary_corolla, 1, unary)
    grafted = graft(binary_corolla, {(): inner})
    assert grafted.leaf_root() == Signature((0, 0), 0)
    assert grafted.vertex_count == 2
    assert graft(binary_corolla, {}).code() == binary_corolla.code()


def test_graft_needs_matching_leaf_root(one_color):
    binary_corolla = ColoredTree.corolla(Signature((0, 0), 0), one_color)
    ternary = ColoredTree.corolla(Signature((0, 0, 0), 0), one_color)
    with pytest.raises(TreeError):
        graft(binary_corolla, {(): ternary})
    with pytest.raises(TreeError):
        graft_at_leaf(binary_corolla, 2, ternary)

# ==================== FORESTS ====================

def test_quartic_orbit_forest():
    colors = example_colors('quartic')
    forest = orbit_corolla_forest(colors, colors.signature('a,ib,ib,-a;b'))
    assert len(forest) == 4
    assert forest.isomorphic_pairs() == [(0, 2), (1, 3)]
    assert forest.act(1, 3) == 0


def test_colored_forest_corollas():
    colors = example_colors('forest')
    tree_t, tree_s = forest_trees(colors)
    assert tree_t.leaf_root().key(colors) == 'b,c;a'
    assert tree_s.leaf_root().key(colors) == ';a'
    assert sorted(s.key(colors) for s in tree_t.vertex_corollas()) == sorted(['a,b;a', 'b,a;a', ';a', 'c;b'])
    assert sorted(s.key(colors) for s in tree_s.vertex_corollas()) == sorted(['b;a', 'c;b', ';c'])
    c = colors.index('c')
    assert ColoredTree.stick(c, colors).leaf_root() == Signature((c,), c)

# ==================== PSEUDO INDEXING ====================

@pytest.mark.parametrize("build", [all_family, trivial_family])
def test_standard_families_are_pseudo_indexing(build):
    ok, witness = check_pseudo_indexing(build(trivial_group(), range(0, 4)), bound=3)
    assert ok and witness is None


def test_missing_transposition_breaks_pseudo_indexing():
    group = trivial_group()
    per_arity = {n: group.gsigma(n).subgroups() for n in range(0, 3)}
    per_arity[3] = [group.gsigma(3).trivial_subgroup()]
    ok, witness = check_pseudo_indexing(GSigmaFamily(group, per_arity), bound=3)
    assert not ok
    assert not witness.tree.is_stick
    assert witness.tree.arity == 3
    assert 'lr image' in witness.describe()
