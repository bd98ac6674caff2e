"""
Labeled Trees for the Equivariant Operad Workbench
Trees whose leaves carry input positions and whose vertices carry elements of a symmetric
sequence. These are the elements of free operads and of operad extensions: named canonically
up to isomorphism, acted on by G x Sigma^op, grafted and flattened.
"""

import itertools
import logging
from functools import lru_cache
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from .colors import ColorSet, Signature
from .groups import identity_perm, inverse
from .trees import ColoredTree, Node, Path, corolla_of, leaf, vertex, walk
from ..utils.helpers import TreeError, handle_error, sort_key

logger = logging.getLogger(__name__)

# (corolla, g, sigma, label) -> label at (g, sigma).corolla
LabelAction = Callable[[Signature, int, Tuple[int, ...], Hashable], Hashable]

# ==================== CODES & SIGNATURES ====================

@lru_cache(maxsize=None)
def labeled_code(node: Node) -> str:
    """Code of a labeled tree in its current planar order"""
    if node.is_leaf:
        return f"l{node.color}:{node.label}"
    return f"v{node.color}[{node.label!r}](" + ','.join(labeled_code(c) for c in node.children) + ")"


def leaf_positions(node: Node) -> List[int]:
    """Positions of the leaves in planar order"""
    return [n.label for _, n in walk(node) if n.is_leaf]


def strip(node: Node) -> Tuple[ColoredTree, Dict[Path, Hashable], Tuple[int, ...]]:
    """Planar tree, vertex labeling and leaf positions (planar leaf p has position positions[p])"""
    def bare(n: Node) -> Node:
        if n.is_leaf:
            return leaf(n.color)
        return vertex(n.color, (bare(c) for c in n.children))

    labeling = {path: n.label for path, n in walk(node) if not n.is_leaf}
    return ColoredTree(bare(node)), labeling, tuple(leaf_positions(node))


def substitute(node: Node, replacements: Mapping[int, Node]) -> Node:
    """Replace each leaf with position p by replacements[p]"""
    if node.is_leaf:
        replacement = replacements[node.label]
        if replacement.color != node.color:
            raise TreeError(handle_error('tree_error', f"color mismatch substituting at position {node.label}"))
        return replacement
    return vertex(node.color, (substitute(c, replacements) for c in node.children), node.label)


def shift_positions(node: Node, mapping: Callable[[int], int]) -> Node:
    if node.is_leaf:
        return leaf(node.color, mapping(node.label))
    return vertex(node.color, (shift_positions(c, mapping) for c in node.children), node.label)

# ==================== CANONICAL NAMING ====================

class LabeledTrees:
    """
    Canonical names for labeled trees over a color G-set.

    Children are sorted by code; among permutations of identical children the one
    moving the vertex label to its least form is used.

    Args:
        colors: the color G-set
        act: the action of G x Sigma^op on vertex labels
    """

    def __init__(self, colors: ColorSet, act: LabelAction, name: str = ""):
        self.colors = colors
        self.act = act
        self.name = name or "labeled trees"
        self._identity = colors.group.identity
        self._cache: Dict[Node, Node] = {}

    def canonical(self, node: Node) -> Node:
        if node.is_leaf:
            return node
        cached = self._cache.get(node)
        if cached is not None:
            return cached
        children = [self.canonical(c) for c in node.children]
        codes = [labeled_code(c) for c in children]
        order = sorted(range(len(children)), key=lambda j: codes[j])
        runs: List[List[int]] = []
        for position, old in enumerate(order):
            if runs and codes[order[runs[-1][0]]] == codes[old]:
                runs[-1].append(position)
            else:
                runs.append([position])
        sig = corolla_of(node)
        best_label = None
        for choice in itertools.product(*(itertools.permutations(run) for run in runs if len(run) > 1)):
            pi = list(order)
            for run, arrangement in zip((run for run in runs if len(run) > 1), choice):
                for slot, source in zip(run, arrangement):
                    pi[slot] = order[source]
            label = node.label if node.label is None else self.act(sig, self._identity, tuple(pi), node.label)
            if best_label is None or sort_key(label) < sort_key(best_label):
                best_label = label
        result = vertex(node.color, (children[j] for j in order), best_label)
        self._cache[node] = result
        self._cache[result] = result
        return result

    def code(self, node: Node) -> str:
        return labeled_code(self.canonical(node))

    # ---------- constructors ----------

    def stick(self, color: int) -> Node:
        return leaf(color, 0)

    def corolla(self, sig: Signature, label: Hashable) -> Node:
        return self.canonical(vertex(sig.output, (leaf(c, i) for i, c in enumerate(sig.inputs)), label))

    def from_planar(self, tree: ColoredTree, labeling: Mapping[Path, Hashable],
                    positions: Optional[Sequence[int]] = None) -> Node:
        """Attach labels and leaf positions (identity order by default) to a planar tree"""
        counter = [0]
        positions = tuple(positions) if positions is not None else tuple(range(tree.arity))

        def build(n: Node, path: Path) -> Node:
            if n.is_leaf:
                position = positions[counter[0]]
                counter[0] += 1
                return leaf(n.color, position)
            return vertex(n.color, (build(c, path + (i,)) for i, c in enumerate(n.children)), labeling[path])

        return self.canonical(build(tree.root, ()))

    # ---------- operations ----------

    def act_on(self, node: Node, g: int, sigma: Sequence[int]) -> Node:
        """(g, sigma): an element over sig becomes an element over g sig sigma"""
        colors = self.colors
        sigma_inv = inverse(sigma)

        def move(n: Node) -> Node:
            if n.is_leaf:
                return leaf(colors.act(g, n.color), sigma_inv[n.label])
            label = n.label
            if label is not None:
                label = self.act(corolla_of(n), g, identity_perm(len(n.children)), label)
            return vertex(colors.act(g, n.color), (move(c) for c in n.children), label)

        return self.canonical(move(node))

    def graft(self, outer: Node, position: int, inner: Node) -> Node:
        """outer o_position inner, renumbering leaf positions"""
        m = len(leaf_positions(inner))
        if position not in leaf_positions(outer):
            raise TreeError(handle_error('tree_error', f"no leaf at position {position}"))
        shifted_inner = shift_positions(inner, lambda p: p + position)

        def build(n: Node) -> Node:
            if n.is_leaf:
                if n.label != position:
                    return leaf(n.color, n.label if n.label < position else n.label + m - 1)
                if n.color != inner.color:
                    raise TreeError(handle_error('tree_error', f"color mismatch grafting at position {position}"))
                return shifted_inner
            return vertex(n.color, (build(c) for c in n.children), n.label)

        return self.canonical(build(outer))

    def relabel(self, node: Node, function: Callable[[Signature, Hashable], Hashable]) -> Node:
        """Apply a map of symmetric sequences vertexwise"""
        def move(n: Node) -> Node:
            if n.is_leaf:
                return n
            return vertex(n.color, (move(c) for c in n.children), function(corolla_of(n), n.label))

        return self.canonical(move(node))

    def flatten(self, node: Node) -> Node:
        """Substitute each vertex label (itself a labeled tree in this family) for its vertex"""
        def build(n: Node) -> Node:
            if n.is_leaf:
                return n
            children = [build(c) for c in n.children]
            return substitute(n.label, dict(enumerate(children)))

        return self.canonical(build(node))


def tagged_action(actions: Mapping[str, LabelAction]) -> LabelAction:
    """Label action on (tag, value) pairs dispatching on the tag"""
    def act(sig: Signature, g: int, sigma: Tuple[int, ...], label):
        tag, value = label
        return (tag, actions[tag](sig, g, sigma, value))

    return act
