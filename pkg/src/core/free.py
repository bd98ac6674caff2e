"""
Free Operads for the Equivariant Operad Workbench
The free G-equivariant colored operad on a symmetric sequence, truncated by a vertex bound:
elements are canonical vertex-labeled trees, composition is grafting. Also the monad unit
and multiplication, the free functor on maps and the algebra map induced by an attaching map.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Hashable, Iterator, List, Optional, Set

from .colors import Signature
from .groups import inverse
from .labeled import LabeledTrees, strip
from .operads import Operad, eval_tree
from .symseq import SymSeq, SymSeqMap
from .trees import Node, corolla_of, enumerate_trees, leaf, vertex, vertex_count
from ..utils.helpers import BoundExceededError, TreeError, handle_error

logger = logging.getLogger(__name__)

# ==================== FREE OPERAD ====================

@dataclass
class SummandRow:
    """One coproduct summand of a free operad level: a tree class and what it contributes"""
    tree: str
    aut_order: int
    elements: int


def is_reduced(seq: SymSeq) -> bool:
    """No values in arity 0 or 1"""
    return all(sig.arity >= 2 for sig in seq.support())


class FreeOperad(Operad):
    """
    F X truncated at X's arity range and at `bound` vertices.

    An element over C is a tree T with leaves numbered by the inputs of C and each vertex v
    labeled by an element of X(T_v), up to isomorphism. Levels are computed from tree classes
    T with lr(T) isomorphic to C: every arrow lr(T) -> C and every vertex labeling gives one
    element, and automorphisms of T identify them.

    Args:
        generators: the symmetric sequence X
        bound: vertex bound; optional when X is reduced (every arity-n tree then has < n vertices)
        equivariant: take tree classes in G x| Omega_C (True) or in Omega_C only
    """

    def __init__(self, generators: SymSeq, bound: Optional[int] = None, equivariant: bool = True, name: str = ""):
        super().__init__(generators.colors, generators.max_arity, name or f"F{generators.name}")
        if bound is None:
            if not is_reduced(generators):
                raise TreeError(handle_error('unbounded_request', f"{generators.name} has arity 0 or 1 values"))
            bound = max(generators.max_arity - 1, 0)
        self.generators = generators
        self.bound = bound
        self.equivariant = equivariant
        self.trees = LabeledTrees(self.colors, generators.act_on, name=self.name)
        self.underlying = SymSeq(self.colors, self.max_arity, self._elements, self._act, name=self.name)

    def _act(self, arrow, node: Node) -> Node:
        g, sigma = arrow.data
        return self.trees.act_on(node, g, sigma)

    def _vertex_filter(self, sig: Signature) -> bool:
        return sig.arity <= self.max_arity and bool(self.generators.value(sig))

    def tree_classes(self, sig: Signature):
        """Tree classes indexing the coproduct summands over sig"""
        return enumerate_trees(self.colors, sig, self.bound, vertex_arities=range(self.max_arity + 1),
                               vertex_filter=self._vertex_filter, equivariant=self.equivariant)

    def _class_elements(self, tree_class, sig: Signature) -> Set[Node]:
        tree = tree_class.tree
        base = self.underlying.base
        identity = self.colors.group.identity
        arrows = [a for a in base.hom(tree.leaf_root(), sig) if self.equivariant or a.data[0] == identity]
        paths = tree.vertex_paths()
        pools = [self.generators.value(tree.vertex_corollas()[k]) for k in range(len(paths))]
        found: Set[Node] = set()
        for labels in itertools.product(*pools):
            planar = self.trees.from_planar(tree, dict(zip(paths, labels)))
            for arrow in arrows:
                g, sigma = arrow.data
                found.add(self.trees.act_on(planar, g, sigma))
        return found

    def _elements(self, sig: Signature) -> Set[Node]:
        found: Set[Node] = set()
        for tree_class in self.tree_classes(sig):
            found |= self._class_elements(tree_class, sig)
        logger.debug(f"{self.name}{sig!r}: {len(found)} elements")
        return found

    def summand_report(self, sig: Signature) -> List[SummandRow]:
        """Per tree class, the number of elements of the level over sig it contributes"""
        return [SummandRow(tree_class.tree.to_text(), tree_class.aut_order,
                           len(self._class_elements(tree_class, sig)))
                for tree_class in self.tree_classes(sig)]

    # ---------- operad structure ----------

    def unit(self, color: int) -> Node:
        return self.trees.stick(color)

    def partial_compose(self, outer, x, i, inner, y):
        if outer.inputs[i] != inner.output:
            raise TreeError(handle_error('signature_mismatch', f"{inner} into slot {i} of {outer}"))
        if outer.arity + inner.arity - 1 > self.max_arity or vertex_count(x) + vertex_count(y) > self.bound:
            return None
        return self.trees.graft(x, i, y)

    # ---------- independent enumeration ----------

    def oracle_elements(self, sig: Signature) -> Set[Node]:
        """The level over sig by direct recursion over vertices and splittings of the leaf positions"""
        colors_of = dict(enumerate(sig.inputs))
        supported = [s for s in self.underlying.base.objects() if self._vertex_filter(s)]

        def grow(color: int, positions: FrozenSet[int], budget: int) -> Iterator[Node]:
            if len(positions) == 1:
                (p,) = positions
                if colors_of[p] == color:
                    yield leaf(color, p)
            if budget < 1:
                return
            for corolla in supported:
                if corolla.output != color:
                    continue
                for parts in _ordered_splits(sorted(positions), corolla.arity):
                    for children in _children(corolla.inputs, parts, budget - 1):
                        for label in self.generators.value(corolla):
                            yield vertex(color, children, label)

        def _children(inputs, parts, budget) -> Iterator[List[Node]]:
            if not inputs:
                yield []
                return
            for first in grow(inputs[0], parts[0], budget):
                for rest in _children(inputs[1:], parts[1:], budget - vertex_count(first)):
                    yield [first] + rest

        return {self.trees.canonical(node) for node in grow(sig.output, frozenset(range(sig.arity)), self.bound)}


def _ordered_splits(positions: List[int], parts: int) -> Iterator[List[FrozenSet[int]]]:
    """Every assignment of the positions to `parts` ordered, possibly empty, blocks"""
    if parts == 0:
        if not positions:
            yield []
        return
    for assignment in itertools.product(range(parts), repeat=len(positions)):
        yield [frozenset(p for p, a in zip(positions, assignment) if a == k) for k in range(parts)]


def free_operad(generators: SymSeq, bound: Optional[int] = None, equivariant: bool = True) -> FreeOperad:
    return FreeOperad(generators, bound, equivariant)

# ==================== MONAD STRUCTURE ====================

def monad_unit(free: FreeOperad) -> SymSeqMap:
    """X -> F X, each element as its one-vertex corolla"""
    return SymSeqMap.from_function(free.generators, free.underlying,
                                   lambda sig, x: free.trees.corolla(sig, x), name="eta")


def flatten_element(free: FreeOperad, node: Node) -> Node:
    """Substitute the F X labels of an element of F F X into one tree of F X"""
    result = free.trees.flatten(node)
    if vertex_count(result) > free.bound:
        raise BoundExceededError(handle_error('bound_exceeded',
                                              f"flattening gives {vertex_count(result)} vertices, bound {free.bound}"))
    return result


def monad_mult(outer: FreeOperad, free: FreeOperad) -> SymSeqMap:
    """F F X -> F X by flattening; `outer` must be free on free.underlying"""
    if outer.generators is not free.underlying:
        raise TreeError(handle_error('signature_mismatch', f"{outer.name} is not free on {free.name}"))
    return SymSeqMap.from_function(outer.underlying, free.underlying,
                                   lambda sig, node: flatten_element(free, node), name="mu")


def free_map(f: SymSeqMap, source: FreeOperad, target: FreeOperad) -> SymSeqMap:
    """F(f): F X -> F Y, relabeling vertices"""
    if source.generators is not f.source or target.generators is not f.target:
        raise TreeError(handle_error('signature_mismatch', f"F({f.name}) between the wrong free operads"))
    return SymSeqMap.from_function(source.underlying, target.underlying,
                                   lambda sig, node: target.trees.relabel(node, f.apply), name=f"F({f.name})")


def induced_algebra_map(free: FreeOperad, operad: Operad, attach: SymSeqMap) -> SymSeqMap:
    """The operad map F X -> O extending X -> O: evaluate each tree and renumber its inputs"""
    identity = operad.colors.group.identity

    def evaluate(sig: Signature, node: Node) -> Hashable:
        tree, labeling, positions = strip(node)
        labels = {path: attach.apply(corolla_of(tree.node(path)), label)
                  for path, label in labeling.items()}
        value = eval_tree(operad, tree, labels, check=False)
        if tree.is_stick:
            return value
        return operad.act_on(tree.leaf_root(), identity, inverse(positions), value)

    return SymSeqMap.from_function(free.underlying, operad.underlying, evaluate, name=f"{free.name} -> {operad.name}")

