"""
Operad Extensions for the Equivariant Operad Workbench
Free operad extensions O[u] attaching generators Y along u: X -> Y and X -> O.

The extension is computed stage by stage: stage k glues in the alternating trees with k inert
vertices (active vertices labeled by O, inert ones by X or Y) along the pushout-product of
the inert generators. An independent computation over all {O, X, Y}-labeled trees serves as
the oracle. Class names are ("O", element) for elements of O and ("T", tree) for canonical
alternating trees whose inert vertices all carry Y labels.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Set, Tuple

from networkx.utils import UnionFind

from .colors import ColorMap, Signature
from .free import FreeOperad, induced_algebra_map
from .groups import inverse
from .labeled import LabeledTrees, leaf_positions, tagged_action
from .operads import (Operad, PullbackOperad, compose_children, composite_signature, count_operad_homs, operad_homs,
                      pullback_operad)
from .symseq import SymSeq, SymSeqMap, pushforward, symseq_homs
from .trees import Node, TreeClass, corolla_of, enumerate_alternating, leaf, node_at, replace_at, vertex, walk
from ..utils.config import ENGINE_CONFIG
from ..utils.helpers import ExtensionError, TruncationError, canonical_classes, handle_error, show_success, sort_key

logger = logging.getLogger(__name__)

Name = Tuple[str, Hashable]

# ==================== PUSHOUT-PRODUCTS ====================

@dataclass
class FiniteMap:
    """
    A map of finite sets whose elements are tuples of tagged factors: ('s', a) for a
    source-side factor and ('t', b) for a target-side one.
    """
    source: Tuple[Hashable, ...]
    target: Tuple[Hashable, ...]
    mapping: Dict[Hashable, Hashable]

    @classmethod
    def lift(cls, source: Iterable[Hashable], target: Iterable[Hashable], function: Callable) -> "FiniteMap":
        """A single map A -> B as a one-factor FiniteMap"""
        source = tuple(source)
        return cls(tuple((('s', a),) for a in source), tuple((('t', b),) for b in target),
                   {(('s', a),): (('t', function(a)),) for a in source})

    def __call__(self, element: Hashable) -> Hashable:
        return self.mapping[element]

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.source)

    def is_bijective(self) -> bool:
        return self.is_injective() and set(self.mapping.values()) == set(self.target)


def pushout_product(f: FiniteMap, g: FiniteMap) -> FiniteMap:
    """
    f box g: (A x D) +_{A x C} (B x C) -> B x D for f: A -> B and g: C -> D.

    Source elements are named by the least member of their pushout class.
    """
    left = [a + d for a in f.source for d in g.target]
    right = [b + c for b in f.target for c in g.source]
    union_find = UnionFind()
    for element in left + right:
        union_find[element]
    for a in f.source:
        for c in g.source:
            union_find.union(a + g(c), f(a) + c)
    width = len(f.source[0]) if f.source else (len(f.target[0]) if f.target else 0)
    classes = canonical_classes(union_find, left + right)

    def image(element):
        head, tail = element[:width], element[width:]
        return (f(head) if head in f.mapping else head) + (g(tail) if tail in g.mapping else tail)

    source = tuple(sorted(set(classes.values()), key=sort_key))
    target = tuple(b + d for b in f.target for d in g.target)
    return FiniteMap(source, target, {s: image(s) for s in source})


def iterated_pushout_product(maps: Iterable[FiniteMap]) -> FiniteMap:
    """f_1 box ... box f_n folded left; the empty product is the unit (empty -> point)"""
    result = FiniteMap((), ((),), {})
    for f in maps:
        result = pushout_product(result, f)
    return result

# ==================== EXTENSION PROBLEMS ====================

@dataclass
class ExtensionProblem:
    """
    O[u] for u: X -> Y and an attaching map X -> O.

    Args:
        bound: the last filtration stage computed (number of inert vertices)
        equivariant: index stages by tree classes in G x| Omega_C rather than Omega_C
        order: which X vertex a resolution contracts first, 'first' or 'last' in preorder
    """
    base: Operad
    generators: SymSeqMap
    attach: SymSeqMap
    bound: int = field(default_factory=lambda: ENGINE_CONFIG['default_tree_bound'])
    equivariant: bool = True
    order: str = 'first'
    name: str = "O[u]"

    def __post_init__(self):
        if self.attach.source is not self.generators.source:
            raise ExtensionError(handle_error('signature_mismatch', 'attaching map and u have different sources'))
        if self.attach.target is not self.base.underlying:
            raise ExtensionError(handle_error('signature_mismatch', 'attaching map does not land in the base operad'))
        if self.base.colors is not self.generators.source.colors or self.base.max_arity != self.generators.source.max_arity:
            raise ExtensionError(handle_error('signature_mismatch', 'base operad and generators live over different bases'))
        if self.order not in ('first', 'last'):
            raise ExtensionError(handle_error('input_error', f"resolution order {self.order!r}"))
        if self.bound < 0:
            raise ExtensionError(handle_error('input_error', f"negative bound {self.bound}"))

    @property
    def source(self) -> SymSeq:
        return self.generators.source

    @property
    def target(self) -> SymSeq:
        return self.generators.target

    @property
    def colors(self):
        return self.base.colors

    @property
    def max_arity(self) -> int:
        return self.base.max_arity

    @cached_property
    def filtration(self) -> "ExtensionFiltration":
        return ExtensionFiltration(self)

    def with_options(self, **changes) -> "ExtensionProblem":
        options = dict(base=self.base, generators=self.generators, attach=self.attach, bound=self.bound,
                       equivariant=self.equivariant, order=self.order, name=self.name)
        options.update(changes)
        return ExtensionProblem(**options)

# ==================== TREE SURGERY ====================

def contract_active_edges(node: Node, operad: Operad, drop_units: bool = False) -> Node:
    """Compose away every edge between two 'O'-labeled vertices; optionally remove unit vertices"""
    if node.is_leaf:
        return node
    children = [contract_active_edges(c, operad, drop_units) for c in node.children]
    if node.label[0] != 'O':
        return vertex(node.color, children, node.label)
    grafts = {j: (corolla_of(c), c.label[1]) for j, c in enumerate(children) if not c.is_leaf and c.label[0] == 'O'}
    sig, value = compose_children(operad, corolla_of(node), node.label[1], grafts)
    spliced = []
    for j, child in enumerate(children):
        spliced.extend(child.children if j in grafts else [child])
    if drop_units and sig.arity == 1 and sig.inputs[0] == node.color and value == operad.unit(node.color):
        return spliced[0]
    return vertex(node.color, spliced, ('O', value))


def _relabel_at(node: Node, path, label) -> Node:
    target = node_at(node, path)
    return replace_at(node, path, vertex(target.color, target.children, label))


def tagged_paths(node: Node, tag: str) -> List[Tuple[int, ...]]:
    return [path for path, n in walk(node) if not n.is_leaf and n.label[0] == tag]

# ==================== FILTRATION ====================

@dataclass
class FiltrationStage:
    k: int
    value: SymSeq
    map_from_previous: Optional[SymSeqMap]


@dataclass
class _LevelState:
    union_find: UnionFind
    names: List[Name]
    snapshots: List[Dict[Name, Name]]
    shapes: List[int]
    unresolved: List[int]


class ExtensionFiltration:
    """The stages O = O_0 -> O_1 -> ... of an extension problem, computed per signature on demand"""

    def __init__(self, problem: ExtensionProblem):
        self.problem = problem
        base, source, target = problem.base, problem.source, problem.target
        self.colors = problem.colors
        self.trees = LabeledTrees(self.colors, tagged_action({'O': base.act_on, 'X': source.act_on, 'Y': target.act_on}),
                                  name=problem.name)
        self.base_groupoid = base.underlying.base
        self._levels: Dict[Signature, _LevelState] = {}
        self._shape_cache: Dict[Tuple[Signature, int], List[TreeClass]] = {}
        self._stages: Dict[int, FiltrationStage] = {}

    # ---------- shapes ----------

    def shapes(self, sig: Signature, k: int) -> List[TreeClass]:
        """Classes of alternating trees over sig with k inert vertices whose corollas all carry labels"""
        key = (sig, k)
        if key not in self._shape_cache:
            problem = self.problem
            self._shape_cache[key] = enumerate_alternating(
                self.colors, sig, k, max_vertex_arity=problem.max_arity,
                active_filter=lambda s: bool(problem.base.value(s)),
                inert_filter=lambda s: bool(problem.source.value(s)) or bool(problem.target.value(s)),
                equivariant=problem.equivariant)
        return self._shape_cache[key]

    def _arrows(self, tree_root: Signature, sig: Signature):
        identity = self.colors.group.identity
        return [a for a in self.base_groupoid.hom(tree_root, sig)
                if self.problem.equivariant or a.data[0] == identity]

    @cached_property
    def stabilized_at(self) -> Optional[int]:
        """The first k <= bound + 1 with no alternating trees in range, or None"""
        for k in range(1, self.problem.bound + 2):
            if all(not self.shapes(sig, k) for sig in self.base_groupoid.objects()):
                logger.info(show_success('stabilized', f"{self.problem.name}: no trees with {k} inert vertices"))
                return k
        logger.warning(f"{self.problem.name}: filtration not stabilized within {self.problem.bound} stages")
        return None

    @property
    def is_stabilized(self) -> bool:
        return self.stabilized_at is not None

    @property
    def final_stage(self) -> int:
        stable = self.stabilized_at
        return self.problem.bound if stable is None else min(stable - 1, self.problem.bound)

    @property
    def unresolved(self) -> int:
        """Relations through the final stage whose resolved side needs an operation above the truncation"""
        k = self.final_stage
        return sum(sum(self.level(sig, k).unresolved[:k + 1]) for sig in self.base_groupoid.objects())

    # ---------- naming ----------

    def as_base_element(self, node: Node, sig: Signature) -> Hashable:
        """An inert-free tree (one active vertex) as the element of O over sig"""
        planar = corolla_of(node)
        positions = leaf_positions(node)
        return self.problem.base.act_on(planar, self.colors.group.identity, inverse(positions), node.label[1])

    def name_of(self, node: Node, sig: Signature) -> Name:
        if any(not n.is_leaf and n.label[0] != 'O' for _, n in walk(node)):
            return ("T", self.trees.canonical(node))
        return ("O", self.as_base_element(node, sig))

    def as_tree(self, sig: Signature, name: Name) -> Node:
        kind, value = name
        if kind == "T":
            return value
        return vertex(sig.output, (leaf(c, j) for j, c in enumerate(sig.inputs)), ('O', value))

    def act_on_name(self, sig: Signature, g: int, sigma, name: Name) -> Name:
        kind, value = name
        if kind == "O":
            return ("O", self.problem.base.act_on(sig, g, sigma, value))
        return ("T", self.trees.act_on(value, g, sigma))

    def _to_y(self, node: Node) -> Node:
        u = self.problem.generators
        return self.trees.relabel(node, lambda s, label: ('Y', u.apply(s, label[1])) if label[0] == 'X' else label)

    def resolve(self, node: Node, sig: Signature) -> Name:
        """Contract one X vertex into O through the attaching map and send the others along u"""
        problem = self.problem
        paths = tagged_paths(node, 'X')
        if not paths:
            raise ExtensionError(handle_error('check_failed', 'resolving a tree without X vertices'))
        path = paths[0] if problem.order == 'first' else paths[-1]
        target = node_at(node, path)
        attached = problem.attach.apply(corolla_of(target), target.label[1])
        contracted = contract_active_edges(_relabel_at(node, path, ('O', attached)), problem.base)
        return self.name_of(self._to_y(contracted), sig)

    # ---------- stages ----------

    def _planar(self, tree, labeling: Dict) -> Node:
        return self.trees.from_planar(tree, labeling)

    def _stage_step(self, sig: Signature, k: int) -> Tuple[Set[Name], List[Tuple[Name, Name]], int, int]:
        """New names, relations, shape count and the number of relations lost to the truncation"""
        problem = self.problem
        base, source, target, u = problem.base, problem.source, problem.target, problem.generators
        names: Set[Name] = set()
        relations: List[Tuple[Name, Name]] = []
        unresolved = 0
        shapes = self.shapes(sig, k)
        for shape in shapes:
            tree = shape.tree
            paths = tree.vertex_paths()
            active = [p for p in paths if len(p) % 2 == 0]
            inert = [p for p in paths if len(p) % 2 == 1]
            corollas = {p: corolla_of(tree.node(p)) for p in paths}
            box = iterated_pushout_product(
                FiniteMap.lift(source.value(corollas[p]), target.value(corollas[p]),
                               lambda x, s=corollas[p]: u.apply(s, x))
                for p in inert)
            arrows = self._arrows(tree.leaf_root(), sig)
            for actives in itertools.product(*(base.value(corollas[p]) for p in active)):
                labeling = {p: ('O', o) for p, o in zip(active, actives)}

                def planar(choice):
                    full = dict(labeling)
                    full.update({p: ('X' if tag == 's' else 'Y', value) for p, (tag, value) in zip(inert, choice)})
                    return self._planar(tree, full)

                for choice in box.target:
                    node = planar(choice)
                    for a in arrows:
                        names.add(("T", self.trees.act_on(node, *a.data)))
                for choice in box.source:
                    node, image = planar(choice), planar(box(choice))
                    for a in arrows:
                        try:
                            resolved = self.resolve(self.trees.act_on(node, *a.data), sig)
                        except TruncationError:
                            unresolved += 1
                            continue
                        relations.append((resolved, ("T", self.trees.act_on(image, *a.data))))
        if unresolved:
            logger.warning(f"{problem.name}{sig!r} stage {k}: {unresolved} relations need operations above arity "
                           f"{problem.max_arity}")
        return names, relations, len(shapes), unresolved

    def level(self, sig: Signature, k: int) -> _LevelState:
        """Union-find state of sig through stage k"""
        state = self._levels.get(sig)
        if state is None:
            union_find = UnionFind()
            names = [("O", o) for o in self.problem.base.value(sig)]
            for name in names:
                union_find[name]
            state = _LevelState(union_find, names, [canonical_classes(union_find, names)], [0], [0])
            self._levels[sig] = state
        while len(state.snapshots) <= k:
            stage = len(state.snapshots)
            new_names, relations, shape_count, unresolved = self._stage_step(sig, stage)
            for name in sorted(new_names, key=sort_key):
                state.union_find[name]
                state.names.append(name)
            for left, right in relations:
                state.union_find.union(left, right)
            state.snapshots.append(canonical_classes(state.union_find, state.names))
            state.shapes.append(shape_count)
            state.unresolved.append(unresolved)
            logger.debug(f"{self.problem.name}{sig!r} stage {stage}: {len(new_names)} new names, "
                         f"{len(relations)} relations")
        return state

    def classes(self, sig: Signature, k: int) -> Dict[Name, Name]:
        return self.level(sig, k).snapshots[k]

    def stage(self, k: int) -> FiltrationStage:
        if k < 0:
            raise ExtensionError(handle_error('input_error', f"negative stage {k}"))
        if k not in self._stages:
            problem = self.problem

            def action(arrow, name):
                g, sigma = arrow.data
                return self.classes(arrow.target, k)[self.act_on_name(arrow.source, g, sigma, name)]

            value = SymSeq(self.colors, problem.max_arity, lambda sig: set(self.classes(sig, k).values()), action,
                           name=f"{problem.name}_{k}")
            previous = None
            if k > 0:
                before = self.stage(k - 1).value
                previous = SymSeqMap.from_function(before, value, lambda sig, name: self.classes(sig, k)[name],
                                                   name=f"stage {k - 1} -> {k}")
            self._stages[k] = FiltrationStage(k, value, previous)
        return self._stages[k]

    def stage_rows(self) -> List[Dict[str, object]]:
        """Per stage: arity row of level sizes over orbit representatives, injectivity of the stage map"""
        rows = []
        for k in range(self.final_stage + 1):
            stage = self.stage(k)
            levels = [self.level(comp[0], k) for comp in self.base_groupoid.components()]
            rows.append({'stage': k, 'counts': stage.value.arity_counts(),
                         'shape_classes': sum(level.shapes[k] for level in levels),
                         'unresolved': sum(level.unresolved[k] for level in levels),
                         'injective': True if stage.map_from_previous is None
                         else stage.map_from_previous.is_levelwise_injective()})
        return rows


def filtration_stage(problem: ExtensionProblem, k: int) -> FiltrationStage:
    if k > problem.bound:
        raise ExtensionError(handle_error('bound_exceeded', f"stage {k} beyond bound {problem.bound}"))
    return problem.filtration.stage(k)

# ==================== COLIMIT ====================

class ExtensionOperad(Operad):
    """O[u] as the last filtration stage, composing by grafting and contracting the new active edge"""

    def __init__(self, filtration: ExtensionFiltration):
        problem = filtration.problem
        super().__init__(problem.colors, problem.max_arity, problem.name)
        self.filtration = filtration
        self.stage_index = filtration.final_stage
        self.underlying = filtration.stage(self.stage_index).value

    def _lookup(self, sig: Signature, name: Name) -> Name:
        classes = self.filtration.classes(sig, self.stage_index)
        if name not in classes:
            raise ExtensionError(handle_error('not_stabilized', f"{name[0]}-name over {sig} lies beyond stage {self.stage_index}"))
        return classes[name]

    def unit(self, color: int) -> Name:
        return self._lookup(Signature((color,), color), ("O", self.filtration.problem.base.unit(color)))

    def partial_compose(self, outer, x, i, inner, y):
        result_sig = composite_signature(outer, i, inner)
        if result_sig.arity > self.max_arity:
            return None
        filtration = self.filtration
        grafted = filtration.trees.graft(filtration.as_tree(outer, x), i, filtration.as_tree(inner, y))
        contracted = contract_active_edges(grafted, filtration.problem.base)
        return self._lookup(result_sig, filtration.name_of(contracted, result_sig))

    def generator_class(self, sig: Signature, y: Hashable) -> Name:
        """The class of the generator y in Y(sig)"""
        base = self.filtration.problem.base
        children = (vertex(c, [leaf(c, j)], ('O', base.unit(c))) for j, c in enumerate(sig.inputs))
        tree = vertex(sig.output, [vertex(sig.output, children, ('Y', y))], ('O', base.unit(sig.output)))
        return self._lookup(sig, self.filtration.name_of(tree, sig))

    def base_class(self, sig: Signature, o: Hashable) -> Name:
        return self._lookup(sig, ("O", o))


def extension_colimit(problem: ExtensionProblem) -> ExtensionOperad:
    """O[u]; raises ExtensionError when the filtration does not stabilize within the bound, TruncationError when
    some relation needs an operation above the truncation"""
    filtration = problem.filtration
    if not filtration.is_stabilized:
        raise ExtensionError(handle_error('not_stabilized', f"{problem.name} with bound {problem.bound}"))
    if filtration.unresolved:
        raise TruncationError(handle_error('truncation', f"{problem.name}: {filtration.unresolved} relations need operations "
                                                          f"above arity {problem.max_arity}"))
    return ExtensionOperad(filtration)

# ==================== ORACLE ====================

class ExtensionOracle:
    """
    O[u] as the quotient of all reduced {O, X, Y}-labeled trees (no unit O vertices, no two
    adjacent O vertices, at most `bound` X/Y vertices) by the relations x ~ u(x) and
    x ~ attach(x) at every X vertex.
    """

    def __init__(self, problem: ExtensionProblem, bound: Optional[int] = None):
        self.problem = problem
        self.bound = problem.bound if bound is None else bound
        self.trees = problem.filtration.trees
        self._classes: Dict[Signature, Dict[Node, Node]] = {}

    def _grow(self, sig: Signature):
        problem = self.problem
        base, source, target = problem.base, problem.source, problem.target
        corollas = [s for s in base.underlying.base.objects()]
        colors_of = dict(enumerate(sig.inputs))

        def labels_at(corolla: Signature, is_o: bool):
            if is_o:
                unit = base.unit(corolla.output) if corolla.inputs == (corolla.output,) else None
                return [('O', o) for o in base.value(corolla) if unit is None or o != unit]
            return [('X', x) for x in source.value(corolla)] + [('Y', y) for y in target.value(corolla)]

        def grow(color: int, positions: frozenset, budget: int, under_o: bool):
            if len(positions) == 1:
                (p,) = positions
                if colors_of[p] == color:
                    yield leaf(color, p)
            for is_o in ((False,) if under_o else (True, False)):
                if not is_o and budget < 1:
                    continue
                remaining = budget if is_o else budget - 1
                for corolla in corollas:
                    if corolla.output != color:
                        continue
                    labels = labels_at(corolla, is_o)
                    if not labels:
                        continue
                    for parts in _splits(sorted(positions), corolla.arity):
                        for children in children_of(corolla.inputs, parts, remaining, is_o):
                            for label in labels:
                                yield vertex(color, children, label)

        def children_of(inputs, parts, budget, under_o):
            if not inputs:
                yield []
                return
            for first in grow(inputs[0], parts[0], budget, under_o):
                used = sum(1 for _, n in walk(first) if not n.is_leaf and n.label[0] != 'O')
                for rest in children_of(inputs[1:], parts[1:], budget - used, under_o):
                    yield [first] + rest

        return {self.trees.canonical(node) for node in grow(sig.output, frozenset(range(sig.arity)), self.bound, False)}

    def classes(self, sig: Signature) -> Dict[Node, Node]:
        """Every reduced tree over sig mapped to its class representative"""
        if sig not in self._classes:
            problem = self.problem
            trees = sorted(self._grow(sig), key=sort_key)
            union_find = UnionFind()
            for tree in trees:
                union_find[tree]
            for tree in trees:
                for path in tagged_paths(tree, 'X'):
                    x_node = node_at(tree, path)
                    corolla = corolla_of(x_node)
                    x = x_node.label[1]
                    moved = self.trees.canonical(_relabel_at(tree, path, ('Y', problem.generators.apply(corolla, x))))
                    attached = contract_active_edges(_relabel_at(tree, path, ('O', problem.attach.apply(corolla, x))),
                                                     problem.base, drop_units=True)
                    union_find.union(tree, moved)
                    union_find.union(tree, self.trees.canonical(attached))
            self._classes[sig] = canonical_classes(union_find, trees)
            logger.debug(f"oracle {sig!r}: {len(trees)} trees, {len(set(self._classes[sig].values()))} classes")
        return self._classes[sig]

    def as_symseq(self) -> SymSeq:
        def action(arrow, tree):
            g, sigma = arrow.data
            return self.classes(arrow.target)[self.trees.act_on(tree, g, sigma)]

        return SymSeq(self.problem.colors, self.problem.max_arity,
                      lambda sig: set(self.classes(sig).values()), action, name=f"oracle {self.problem.name}")


def _splits(positions, parts):
    if parts == 0:
        if not positions:
            yield []
        return
    for assignment in itertools.product(range(parts), repeat=len(positions)):
        yield [frozenset(p for p, a in zip(positions, assignment) if a == k) for k in range(parts)]


def oracle_extension(problem: ExtensionProblem, bound: Optional[int] = None) -> SymSeq:
    return ExtensionOracle(problem, bound).as_symseq()


def reduced_form(filtration: ExtensionFiltration, sig: Signature, name: Name) -> Node:
    """The reduced tree of a filtration name: drop unit vertices"""
    tree = filtration.as_tree(sig, name)
    return filtration.trees.canonical(contract_active_edges(tree, filtration.problem.base, drop_units=True))


def compare_with_oracle(problem: ExtensionProblem, oracle: Optional[ExtensionOracle] = None) -> Tuple[bool, Optional[str]]:
    """
    Levelwise canonical bijection between the last filtration stage and the oracle: the
    same O/Y trees occur on both sides, grouped into the same classes, and every oracle
    class contains one.
    """
    filtration = problem.filtration
    oracle = oracle or ExtensionOracle(problem)
    k = filtration.final_stage
    for sig in filtration.base_groupoid.objects():
        ours = filtration.classes(sig, k)
        theirs = oracle.classes(sig)
        reduced = {name: reduced_form(filtration, sig, name) for name in ours}
        plain = {tree for tree in theirs if not tagged_paths(tree, 'X')}
        if set(reduced.values()) != plain:
            extra = sorted(set(reduced.values()) ^ plain, key=sort_key)[0]
            return False, f"{sig!r}: tree {extra!r} occurs on one side only"
        pairing: Dict[Name, Node] = {}
        back: Dict[Node, Name] = {}
        for name, rep in ours.items():
            oracle_rep = theirs[reduced[name]]
            if pairing.setdefault(rep, oracle_rep) != oracle_rep or back.setdefault(oracle_rep, rep) != rep:
                return False, f"{sig!r}: classes of {name!r} differ"
        if set(back) != set(theirs.values()):
            return False, f"{sig!r}: an oracle class contains no O/Y tree"
    return True, None

# ==================== PROPERTY CHECKS ====================

@dataclass
class UniversalPropertyRow:
    target: str
    extension_maps: int
    compatible_pairs: int

    @property
    def passed(self) -> bool:
        return self.extension_maps == self.compatible_pairs


def compatible_pairs(problem: ExtensionProblem, target: Operad, limit: Optional[int] = None) -> int:
    """Pairs (f: O -> P, h: Y -> P) with f o attach = h o u"""
    source, attach, u = problem.source, problem.attach, problem.generators
    support = [(sig, x) for sig in source.signatures() for x in source.value(sig)]
    count = 0
    maps = list(operad_homs(problem.base, target, limit))
    for h in symseq_homs(problem.target, target.underlying):
        for f in maps:
            if all(f.apply(sig, attach.apply(sig, x)) == h.apply(sig, u.apply(sig, x)) for sig, x in support):
                count += 1
    return count


def check_universal_property(problem: ExtensionProblem, candidates: Iterable[Operad],
                             limit: Optional[int] = None) -> Tuple[bool, List[UniversalPropertyRow]]:
    """|Hom(O[u], P)| against the compatible pairs, for every candidate P; SearchLimitError past `limit` maps"""
    extension = extension_colimit(problem)
    rows = [UniversalPropertyRow(target.name, count_operad_homs(extension, target, limit),
                                 compatible_pairs(problem, target, limit))
            for target in candidates]
    return all(row.passed for row in rows), rows


@dataclass
class ColorChangeReport:
    levels_agree: bool
    witness: Optional[str]
    local_iso_premise: bool
    local_iso_conclusion: bool

    @property
    def passed(self) -> bool:
        return self.levels_agree and (not self.local_iso_premise or self.local_iso_conclusion)


def _recolor_labeled(node: Node, phi: ColorMap) -> Node:
    if node.is_leaf:
        return leaf(phi(node.color), node.label)
    return vertex(phi(node.color), (_recolor_labeled(c, phi) for c in node.children), node.label)


def pushforward_problem(problem: ExtensionProblem, phi: ColorMap, target_operad: Operad) -> ExtensionProblem:
    """The extension of O' along phi_! u, attached through phi_! of the attaching map"""
    source_d, target_d = pushforward(phi, problem.source), pushforward(phi, problem.target)

    def pre(sig):
        return phi.preimages(sig)[0]

    u_d = SymSeqMap.from_function(source_d, target_d, lambda sig, x: problem.generators.apply(pre(sig), x), name="phi_!u")
    attach_d = SymSeqMap.from_function(source_d, target_operad.underlying,
                                       lambda sig, x: problem.attach.apply(pre(sig), x), name="phi_!attach")
    return ExtensionProblem(target_operad, u_d, attach_d, bound=problem.bound, equivariant=problem.equivariant,
                            order=problem.order, name=f"{target_operad.name}[phi_!u]")


def check_injective_colorchange_pushout(problem: ExtensionProblem, phi: ColorMap, target_operad: Operad,
                                        free_bound: Optional[int] = None) -> ColorChangeReport:
    """
    For injective phi and a problem over phi* O': compare (phi* O')[u] with phi*(O'[phi_! u])
    levelwise, and check that a local isomorphism F X -> phi* O' yields one F Y -> phi* O'[phi_! u].
    """
    if not phi.injective:
        raise ExtensionError(handle_error('not_injective', f"{list(phi.mapping)}"))
    base = problem.base
    if not (isinstance(base, PullbackOperad) and base.operad is target_operad and base.phi.mapping == phi.mapping):
        for sig in base.signatures():
            if set(base.value(sig)) != set(target_operad.value(phi.on_signature(sig))):
                raise ExtensionError(handle_error('signature_mismatch', f"base operad is not phi* O' at {sig!r}"))
    wide = pushforward_problem(problem, phi, target_operad)
    ours, theirs = problem.filtration, wide.filtration
    k_ours, k_theirs = ours.final_stage, theirs.final_stage
    levels_agree, witness = True, None
    for sig in ours.base_groupoid.objects():
        image_sig = phi.on_signature(sig)
        local = ours.classes(sig, k_ours)
        wide_classes = theirs.classes(image_sig, k_theirs)
        pairing: Dict[Name, Name] = {}
        back: Dict[Name, Name] = {}
        for name, rep in local.items():
            moved = name if name[0] == "O" else ("T", theirs.trees.canonical(_recolor_labeled(name[1], phi)))
            if moved not in wide_classes:
                levels_agree, witness = False, f"{sig!r}: {name!r} has no counterpart"
                break
            wide_rep = wide_classes[moved]
            if pairing.setdefault(rep, wide_rep) != wide_rep or back.setdefault(wide_rep, rep) != rep:
                levels_agree, witness = False, f"{sig!r}: classes of {name!r} differ"
                break
        if levels_agree and set(back) != set(wide_classes.values()):
            levels_agree, witness = False, f"{sig!r}: extra classes after changing colors"
        if not levels_agree:
            break

    free_bound = free_bound if free_bound is not None else ENGINE_CONFIG['default_tree_bound']
    free_source = FreeOperad(problem.source, free_bound)
    premise = induced_algebra_map(free_source, base, problem.attach).is_levelwise_bijective()
    conclusion = False
    if premise:
        extension = extension_colimit(wide)
        restricted = pullback_operad(phi, extension)
        generators = SymSeqMap.from_function(problem.target, restricted.underlying,
                                             lambda sig, y: extension.generator_class(phi.on_signature(sig), y),
                                             name="Y -> phi*P")
        conclusion = induced_algebra_map(FreeOperad(problem.target, free_bound), restricted,
                                         generators).is_levelwise_bijective()
    return ColorChangeReport(levels_agree, witness, premise, conclusion)

# ==================== SUMMAND REPORT ====================

def filtration_summands(problem: ExtensionProblem, sig: Signature) -> List[Dict[str, int]]:
    """Per stage: shape classes in the equivariant and plain indexing, and the resulting level sizes"""
    equivariant = problem if problem.equivariant else problem.with_options(equivariant=True)
    plain = problem.with_options(equivariant=False) if problem.equivariant else problem
    rows = []
    for k in range(problem.bound + 1):
        rows.append({
            'stage': k,
            'equivariant_summands': len(equivariant.filtration.shapes(sig, k)) if k else 1,
            'plain_summands': len(plain.filtration.shapes(sig, k)) if k else 1,
            'equivariant_size': len(set(equivariant.filtration.classes(sig, k).values())),
            'plain_size': len(set(plain.filtration.classes(sig, k).values())),
        })
    return rows
