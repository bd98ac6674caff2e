"""
Colored Trees for the Equivariant Operad Workbench
Rooted C-colored trees as immutable nodes, leaf-root and vertex corollas, canonical codes,
automorphism groups in G x| Omega_C, enumeration up to isomorphism, alternating trees,
grafting, orbit forests and the pseudo indexing system checker.

Nodes are addressed by paths (tuples of child positions from the root); preorder
(root first, depth first, children in planar order) is the vertex order.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from .colors import ColorSet, Signature
from .families import GSigmaFamily
from .groups import FiniteGroup, inverse
from ..utils.helpers import TreeError, handle_error

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]

# ==================== NODES ====================

@dataclass(frozen=True)
class Node:
    """An edge of a tree together with everything above it"""
    color: int
    children: Tuple["Node", ...] = ()
    is_leaf: bool = False
    label: Hashable = None
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_hash', hash((self.color, self.children, self.is_leaf, self.label)))

    def __hash__(self) -> int:
        return self._hash


def leaf(color: int, position: Hashable = None) -> Node:
    return Node(color, (), True, position)


def vertex(color: int, children: Iterable[Node] = (), label: Hashable = None) -> Node:
    return Node(color, tuple(children), False, label)


def corolla_node(sig: Signature, label: Hashable = None, positions: bool = False) -> Node:
    return vertex(sig.output, (leaf(c, i if positions else None) for i, c in enumerate(sig.inputs)), label)


def corolla_of(node: Node) -> Signature:
    return Signature(tuple(child.color for child in node.children), node.color)


def walk(node: Node, path: Path = ()) -> Iterator[Tuple[Path, Node]]:
    """Preorder traversal"""
    yield path, node
    for i, child in enumerate(node.children):
        yield from walk(child, path + (i,))


def node_at(root: Node, path: Path) -> Node:
    node = root
    for i in path:
        node = node.children[i]
    return node


def replace_at(root: Node, path: Path, new: Node) -> Node:
    if not path:
        return new
    i = path[0]
    children = list(root.children)
    children[i] = replace_at(children[i], path[1:], new)
    return Node(root.color, tuple(children), root.is_leaf, root.label)


@lru_cache(maxsize=None)
def vertex_count(node: Node) -> int:
    if node.is_leaf:
        return 0
    return 1 + sum(vertex_count(child) for child in node.children)


def leaves_of(node: Node) -> List[Node]:
    return [n for _, n in walk(node) if n.is_leaf]


@lru_cache(maxsize=None)
def tree_code(node: Node) -> str:
    """Canonical code: equal iff the trees are isomorphic respecting colors and vertex labels"""
    if node.is_leaf:
        return f"l{node.color}"
    label = '' if node.label is None else f"[{node.label!r}]"
    return f"v{node.color}{label}(" + ','.join(sorted(tree_code(c) for c in node.children)) + ")"


@lru_cache(maxsize=None)
def canonical_form(node: Node) -> Node:
    """Representative with children sorted by code"""
    if node.is_leaf:
        return node
    children = sorted((canonical_form(c) for c in node.children), key=tree_code)
    return Node(node.color, tuple(children), False, node.label)


@lru_cache(maxsize=None)
def recolor(node: Node, action: Tuple[int, ...]) -> Node:
    """Apply a color permutation (action[c] = g.c), keeping labels"""
    return Node(action[node.color], tuple(recolor(c, action) for c in node.children), node.is_leaf, node.label)


def isomorphisms(a: Node, b: Node, action: Optional[Tuple[int, ...]] = None,
                 pa: Path = (), pb: Path = ()) -> Iterator[List[Tuple[Path, Path]]]:
    """
    All isomorphisms from a to b as lists of (path in a, path in b), where colors
    satisfy color_b(image) = action[color_a]. Vertex labels must agree.
    """
    act = action if action is not None else None
    color_a = act[a.color] if act is not None else a.color
    if a.is_leaf != b.is_leaf or color_a != b.color or len(a.children) != len(b.children):
        return
    if a.is_leaf:
        yield [(pa, pb)]
        return
    if a.label != b.label:
        return
    target_codes = [tree_code(c) for c in b.children]
    k = len(a.children)

    def extend(i: int, used: FrozenSet[int]) -> Iterator[List[Tuple[Path, Path]]]:
        if i == k:
            yield []
            return
        child = a.children[i]
        code = tree_code(recolor(child, act) if act is not None else child)
        for j in range(k):
            if j in used or target_codes[j] != code:
                continue
            for sub in isomorphisms(child, b.children[j], act, pa + (i,), pb + (j,)):
                for rest in extend(i + 1, used | {j}):
                    yield sub + rest

    for matching in extend(0, frozenset()):
        yield [(pa, pb)] + matching

# ==================== COLORED TREES ====================

class ColoredTree:
    """A C-colored tree; the stick tree is a root that is itself a leaf"""

    def __init__(self, root: Node, colors: Optional[ColorSet] = None):
        self.root = root
        self.colors = colors

    @classmethod
    def corolla(cls, sig: Signature, colors: Optional[ColorSet] = None) -> "ColoredTree":
        return cls(corolla_node(sig), colors)

    @classmethod
    def stick(cls, color: int, colors: Optional[ColorSet] = None) -> "ColoredTree":
        return cls(leaf(color), colors)

    def __eq__(self, other) -> bool:
        return isinstance(other, ColoredTree) and self.root == other.root

    def __hash__(self) -> int:
        return hash(self.root)

    def __repr__(self) -> str:
        return f"ColoredTree({self.to_text()})"

    @property
    def is_stick(self) -> bool:
        return self.root.is_leaf

    def vertex_paths(self) -> List[Path]:
        return [p for p, n in walk(self.root) if not n.is_leaf]

    def leaf_paths(self) -> List[Path]:
        return [p for p, n in walk(self.root) if n.is_leaf]

    def node(self, path: Path) -> Node:
        return node_at(self.root, path)

    @property
    def vertex_count(self) -> int:
        return vertex_count(self.root)

    @property
    def arity(self) -> int:
        return len(self.leaf_paths())

    def leaf_root(self) -> Signature:
        return Signature(tuple(n.color for n in leaves_of(self.root)), self.root.color)

    def vertex_corollas(self) -> Tuple[Signature, ...]:
        return tuple(corolla_of(self.node(p)) for p in self.vertex_paths())

    def code(self) -> str:
        return tree_code(self.root)

    def canonical(self) -> "ColoredTree":
        return ColoredTree(canonical_form(self.root), self.colors)

    def act(self, g: int) -> "ColoredTree":
        if self.colors is None:
            return self
        return ColoredTree(recolor(self.root, color_action(self.colors, g)), self.colors)

    def to_text(self) -> str:
        return node_text(self.root, self.colors)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for path, node in walk(self.root):
            graph.add_node(path, kind='leaf' if node.is_leaf else 'vertex', color=node.color, label=node.label)
            if path:
                graph.add_edge(path[:-1], path)
        return graph


def color_action(colors: ColorSet, g: int) -> Tuple[int, ...]:
    return tuple(colors.act(g, c) for c in colors)


def node_text(node: Node, colors: Optional[ColorSet] = None) -> str:
    name = colors.name(node.color) if colors is not None else str(node.color)
    if node.is_leaf:
        return name if node.label is None else f"{name}#{node.label}"
    label = '' if node.label is None else f"{{{node.label}}}"
    return f"{name}{label}(" + ', '.join(node_text(c, colors) for c in node.children) + ")"


def leaf_root(tree: ColoredTree) -> Signature:
    return tree.leaf_root()


def vertex_corollas(tree: ColoredTree) -> Tuple[Signature, ...]:
    return tree.vertex_corollas()

# ==================== AUTOMORPHISMS ====================

class TreeAutomorphismGroup:
    """
    Aut(T) in G x| Omega_C: pairs (g, phi) with phi: gT -> T, stored as path maps.

    The group law is (h, psi) o (g, phi) = (hg, psi o phi).
    """

    def __init__(self, tree: ColoredTree, group: Optional[FiniteGroup] = None, equivariant: bool = True):
        self.tree = tree
        colors = tree.colors
        self.base_group = group if group is not None else (colors.group if colors is not None else None)
        root = tree.root
        elements = []
        group_elements = [0]
        identity = 0
        if self.base_group is not None:
            identity = self.base_group.identity
            group_elements = list(range(self.base_group.order)) if equivariant else [identity]
        for g in group_elements:
            action = color_action(colors, g) if colors is not None else None
            if action is not None and tree_code(recolor(root, action)) != tree_code(root):
                continue
            for pairs in isomorphisms(root, root, action):
                elements.append((g, tuple(sorted(pairs))))
        self.elements = elements
        ident = (identity, tuple((p, p) for p, _ in sorted(walk(root), key=lambda item: item[0])))
        self.group = FiniteGroup.from_operation(elements, self._multiply, ident, name="Aut(T)", check=False)
        self._leaf_index = {p: i for i, p in enumerate(tree.leaf_paths())}

    def _multiply(self, second, first):
        h, psi = second
        g, phi = first
        psi_map = dict(psi)
        g_h = self.base_group.multiply(h, g) if self.base_group is not None else 0
        return (g_h, tuple(sorted((p, psi_map[q]) for p, q in phi)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def path_map(self, element) -> Dict[Path, Path]:
        return dict(element[1])

    def leaf_permutation(self, element) -> Tuple[int, ...]:
        """p with p[i] = j when leaf i is sent to leaf j"""
        mapping = self.path_map(element)
        return tuple(self._leaf_index[mapping[path]] for path in self.tree.leaf_paths())

    def lr_data(self, element) -> Tuple[int, Tuple[int, ...]]:
        """The arrow lr(T) -> lr(T) induced by the automorphism, as (g, sigma)"""
        return (element[0], inverse(self.leaf_permutation(element)))

    def vertex_permutation(self, element, path: Path) -> Tuple[int, ...]:
        mapping = self.path_map(element)
        node = self.tree.node(path)
        return tuple(mapping[path + (i,)][-1] for i in range(len(node.children)))

    def vertex_data(self, element, path: Path) -> Tuple[int, Tuple[int, ...]]:
        """The arrow T_v -> T_phi(v) as (g, sigma)"""
        return (element[0], inverse(self.vertex_permutation(element, path)))

    def image(self, element, path: Path) -> Path:
        return self.path_map(element)[path]


@dataclass
class TreeClass:
    """An isomorphism class representative with its automorphism group"""
    tree: ColoredTree
    automorphisms: TreeAutomorphismGroup

    @property
    def aut_order(self) -> int:
        return self.automorphisms.order

# ==================== ENUMERATION ====================

def _submultisets(items: Tuple[int, ...]) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """All (part, rest) splits of a sorted multiset"""
    counts = sorted(Counter(items).items())
    result = []
    for choice in itertools.product(*(range(count + 1) for _, count in counts)):
        part = tuple(c for (c, _), k in zip(counts, choice) for _ in range(k))
        rest = tuple(c for (c, count), k in zip(counts, choice) for _ in range(count - k))
        result.append((part, rest))
    return result


def _remove_one(items: Tuple[int, ...], color: int) -> Optional[Tuple[int, ...]]:
    if color not in items:
        return None
    position = items.index(color)
    return items[:position] + items[position + 1:]


def _make_vertex(color: int, children: Iterable[Node], label: Hashable = None) -> Node:
    return Node(color, tuple(sorted(children, key=tree_code)), False, label)


class _ShapeEnumerator:
    """Canonical trees rooted at an edge of a given color with a given leaf multiset"""

    def __init__(self, ncolors: int, arities: Sequence[int], vertex_filter: Optional[Callable[[Signature], bool]]):
        self.ncolors = ncolors
        self.arities = sorted(set(arities))
        self.vertex_filter = vertex_filter
        self._memo: Dict[Tuple[int, Tuple[int, ...], int], FrozenSet[Node]] = {}

    def shapes(self, color: int, leaves: Tuple[int, ...], budget: int) -> FrozenSet[Node]:
        key = (color, leaves, budget)
        if key in self._memo:
            return self._memo[key]
        result: Set[Node] = set()
        if leaves == (color,):
            result.add(leaf(color))
        if budget >= 1:
            for k in self.arities:
                for inputs in itertools.combinations_with_replacement(range(self.ncolors), k):
                    sig = Signature(inputs, color)
                    if self.vertex_filter is not None and not self.vertex_filter(sig):
                        continue
                    for children in self._children(inputs, 0, leaves, budget - 1):
                        result.add(_make_vertex(color, children))
        self._memo[key] = frozenset(result)
        return self._memo[key]

    def _children(self, inputs: Tuple[int, ...], i: int, leaves: Tuple[int, ...], budget: int) -> Iterator[List[Node]]:
        if i == len(inputs):
            if not leaves:
                yield []
            return
        for part, rest in _submultisets(leaves):
            for child in self.shapes(inputs[i], part, budget):
                used = vertex_count(child)
                if used > budget:
                    continue
                for others in self._children(inputs, i + 1, rest, budget - used):
                    yield [child] + others


def _g_canonical_code(node: Node, colors: ColorSet) -> str:
    return min(tree_code(recolor(node, color_action(colors, g))) for g in range(colors.group.order))


def enumerate_trees(colors: ColorSet, target: Signature, bound: Optional[int] = None, reduced: bool = False,
                    vertex_arities: Optional[Iterable[int]] = None,
                    vertex_filter: Optional[Callable[[Signature], bool]] = None,
                    equivariant: bool = False) -> List[TreeClass]:
    """
    Isomorphism classes of trees T with lr(T) isomorphic to target and at most `bound` vertices.

    Reduced trees take vertex arities of 2 or more only; asking for smaller ones raises TreeError.
    With equivariant=True, classes are taken in G x| Omega_C (lr(T) isomorphic to some g.target)
    and automorphism groups include the G part.
    """
    if vertex_arities is None:
        vertex_arities = range(2 if reduced else 0, max(target.arity, 2) + 1)
    vertex_arities = sorted(set(vertex_arities))
    if reduced:
        if vertex_arities and vertex_arities[0] < 2:
            raise TreeError(handle_error('tree_error', f"reduced trees have no vertices of arity {vertex_arities[0]}"))
        if bound is None:
            bound = max(target.arity - 1, 0)
    elif bound is None:
        raise TreeError(handle_error('unbounded_request', f"target {target}"))
    enumerator = _ShapeEnumerator(len(colors), vertex_arities, vertex_filter)
    targets = [target]
    if equivariant:
        for g in range(colors.group.order):
            moved = Signature(tuple(sorted(colors.act(g, c) for c in target.inputs)), colors.act(g, target.output))
            if all(sorted(t.inputs) != list(moved.inputs) or t.output != moved.output for t in targets):
                targets.append(moved)
    found: Dict[str, Node] = {}
    for sig in targets:
        for node in sorted(enumerator.shapes(sig.output, tuple(sorted(sig.inputs)), bound), key=tree_code):
            key = _g_canonical_code(node, colors) if equivariant else tree_code(node)
            found.setdefault(key, node)
    classes = [TreeClass(ColoredTree(node, colors), TreeAutomorphismGroup(ColoredTree(node, colors),
                                                                          equivariant=equivariant))
               for _, node in sorted(found.items())]
    logger.debug(f"{len(classes)} tree classes over {target} with bound {bound}")
    return classes

# ==================== ALTERNATING TREES ====================

ACTIVE = 'active'
INERT = 'inert'


class AlternatingTree:
    """A tree whose vertices alternate active/inert by depth, with leaves under active vertices"""

    def __init__(self, tree: ColoredTree):
        self.tree = tree
        self.partition: Dict[Path, str] = {}
        for path, node in walk(tree.root):
            if node.is_leaf:
                if path and len(path) % 2 == 0:
                    raise TreeError(handle_error('tree_error', f"leaf {path} sits under an inert vertex"))
                continue
            self.partition[path] = ACTIVE if len(path) % 2 == 0 else INERT

    @property
    def inert_paths(self) -> List[Path]:
        return [p for p in sorted(self.partition) if self.partition[p] == INERT]

    @property
    def active_paths(self) -> List[Path]:
        return [p for p in sorted(self.partition) if self.partition[p] == ACTIVE]

    @property
    def inert_count(self) -> int:
        return len(self.inert_paths)


class _AlternatingEnumerator:
    def __init__(self, ncolors: int, max_arity: int,
                 active_filter: Optional[Callable[[Signature], bool]],
                 inert_filter: Optional[Callable[[Signature], bool]]):
        self.ncolors = ncolors
        self.max_arity = max_arity
        self.active_filter = active_filter
        self.inert_filter = inert_filter
        self._active: Dict[Tuple, FrozenSet[Node]] = {}
        self._inert: Dict[Tuple, FrozenSet[Node]] = {}

    def active(self, color: int, leaves: Tuple[int, ...], k: int) -> FrozenSet[Node]:
        key = (color, leaves, k)
        if key not in self._active:
            result: Set[Node] = set()
            for m in range(0, min(self.max_arity, len(leaves) + k) + 1):
                for inputs in itertools.combinations_with_replacement(range(self.ncolors), m):
                    sig = Signature(inputs, color)
                    if self.active_filter is not None and not self.active_filter(sig):
                        continue
                    for children in self._active_children(inputs, 0, leaves, k):
                        result.add(_make_vertex(color, children))
            self._active[key] = frozenset(result)
        return self._active[key]

    def _active_children(self, inputs, i, leaves, k) -> Iterator[List[Node]]:
        if i == len(inputs):
            if not leaves and k == 0:
                yield []
            return
        rest = _remove_one(leaves, inputs[i])
        if rest is not None:
            for others in self._active_children(inputs, i + 1, rest, k):
                yield [leaf(inputs[i])] + others
        for part, rest in _submultisets(leaves):
            for k_i in range(1, k + 1):
                for child in self.inert(inputs[i], part, k_i):
                    for others in self._active_children(inputs, i + 1, rest, k - k_i):
                        yield [child] + others

    def inert(self, color: int, leaves: Tuple[int, ...], k: int) -> FrozenSet[Node]:
        key = (color, leaves, k)
        if key not in self._inert:
            result: Set[Node] = set()
            if k >= 1:
                for m in range(0, self.max_arity + 1):
                    for inputs in itertools.combinations_with_replacement(range(self.ncolors), m):
                        sig = Signature(inputs, color)
                        if self.inert_filter is not None and not self.inert_filter(sig):
                            continue
                        for children in self._inert_children(inputs, 0, leaves, k - 1):
                            result.add(_make_vertex(color, children))
            self._inert[key] = frozenset(result)
        return self._inert[key]

    def _inert_children(self, inputs, i, leaves, k) -> Iterator[List[Node]]:
        if i == len(inputs):
            if not leaves and k == 0:
                yield []
            return
        for part, rest in _submultisets(leaves):
            for k_i in range(0, k + 1):
                for child in self.active(inputs[i], part, k_i):
                    for others in self._inert_children(inputs, i + 1, rest, k - k_i):
                        yield [child] + others


def _tag_labelings(node: Node, depth: int = 0) -> Iterator[Node]:
    """Every O/X/Y tagging: active vertices 'O', inert vertices 'X' or 'Y'"""
    if node.is_leaf:
        yield node
        return
    tags = ('O',) if depth % 2 == 0 else ('X', 'Y')
    for tag in tags:
        for children in itertools.product(*(list(_tag_labelings(c, depth + 1)) for c in node.children)):
            yield Node(node.color, tuple(children), False, tag)


def enumerate_alternating(colors: ColorSet, target: Signature, k: int, max_vertex_arity: Optional[int] = None,
                          active_filter: Optional[Callable[[Signature], bool]] = None,
                          inert_filter: Optional[Callable[[Signature], bool]] = None,
                          labels: bool = False, equivariant: bool = False) -> List[TreeClass]:
    """
    Isomorphism classes of alternating trees over target with exactly k inert vertices.

    With labels=True the classes are of O/X/Y-tagged trees (active 'O', inert 'X' or 'Y').
    """
    if k < 0:
        raise TreeError(handle_error('tree_error', f"negative inert count {k}"))
    if max_vertex_arity is None:
        max_vertex_arity = max(target.arity, 2) + k
    enumerator = _AlternatingEnumerator(len(colors), max_vertex_arity, active_filter, inert_filter)
    targets = [target]
    if equivariant:
        for g in range(colors.group.order):
            moved = Signature(tuple(sorted(colors.act(g, c) for c in target.inputs)), colors.act(g, target.output))
            if all(sorted(t.inputs) != list(moved.inputs) or t.output != moved.output for t in targets):
                targets.append(moved)
    found: Dict[str, Node] = {}
    for sig in targets:
        leaves = tuple(sorted(sig.inputs))
        nodes = set(enumerator.active(sig.output, leaves, k))
        if k == 0 and leaves == (sig.output,):
            nodes.add(leaf(sig.output))
        if labels:
            nodes = {canonical_form(tagged) for node in nodes for tagged in _tag_labelings(node)}
        for node in sorted(nodes, key=tree_code):
            key = _g_canonical_code(node, colors) if equivariant else tree_code(node)
            found.setdefault(key, node)
    classes = []
    for _, node in sorted(found.items()):
        tree = ColoredTree(node, colors)
        classes.append(TreeClass(tree, TreeAutomorphismGroup(tree, equivariant=equivariant)))
    return classes

# ==================== GRAFTING ====================

def _substitute_leaves(node: Node, replacements: Sequence[Node], counter: List[int]) -> Node:
    if node.is_leaf:
        replacement = replacements[counter[0]]
        counter[0] += 1
        if replacement.color != node.color:
            raise TreeError(handle_error('tree_error', f"color mismatch at leaf {counter[0] - 1}"))
        return replacement
    return Node(node.color, tuple(_substitute_leaves(c, replacements, counter) for c in node.children),
                False, node.label)


def graft(outer: ColoredTree, assignment: Mapping[Path, ColoredTree]) -> ColoredTree:
    """Substitute assignment[v] (with lr equal to the corolla at v) for each listed vertex v"""
    for path in assignment:
        node = outer.node(path)
        if node.is_leaf:
            raise TreeError(handle_error('tree_error', f"{path} is a leaf"))

    def build(node: Node, path: Path) -> Node:
        if node.is_leaf:
            return node
        children = [build(c, path + (i,)) for i, c in enumerate(node.children)]
        inner = assignment.get(path)
        if inner is None:
            return Node(node.color, tuple(children), False, node.label)
        if inner.leaf_root() != corolla_of(node):
            raise TreeError(handle_error('tree_error', f"leaf-root mismatch at {path}: {inner.leaf_root()} vs {corolla_of(node)}"))
        return _substitute_leaves(inner.root, children, [0])

    return ColoredTree(build(outer.root, ()), outer.colors)


def graft_at_leaf(outer: ColoredTree, position: int, inner: ColoredTree) -> ColoredTree:
    """Replace the position-th leaf (planar order) of outer by inner"""
    leaf_paths = outer.leaf_paths()
    if not 0 <= position < len(leaf_paths):
        raise TreeError(handle_error('tree_error', f"no leaf {position}"))
    path = leaf_paths[position]
    if outer.node(path).color != inner.root.color:
        raise TreeError(handle_error('tree_error', f"color mismatch grafting at leaf {position}"))
    return ColoredTree(replace_at(outer.root, path, inner.root), outer.colors)

# ==================== FORESTS ====================

class ColoredForest:
    """A finite list of trees, compared up to canonical sort"""

    def __init__(self, components: Sequence[ColoredTree]):
        self.components = tuple(components)

    def __len__(self) -> int:
        return len(self.components)

    def code(self) -> Tuple[str, ...]:
        return tuple(sorted(t.code() for t in self.components))

    def leaf_roots(self) -> List[Signature]:
        return [t.leaf_root() for t in self.components]


class OrbitForest(ColoredForest):
    """The forest of corollas g.C for g in G with G permuting components"""

    def __init__(self, colors: ColorSet, sig: Signature):
        self.colors = colors
        self.signature = sig
        group = colors.group
        super().__init__([ColoredTree.corolla(Signature(tuple(colors.act(g, c) for c in sig.inputs),
                                                        colors.act(g, sig.output)), colors)
                          for g in range(group.order)])

    def act(self, g: int, component: int) -> int:
        return self.colors.group.multiply(g, component)

    def isomorphic_pairs(self) -> List[Tuple[int, int]]:
        """Pairs of distinct components isomorphic in Sigma_C (no G part)"""
        pairs = []
        for i, j in itertools.combinations(range(len(self.components)), 2):
            if self.components[i].code() == self.components[j].code():
                pairs.append((i, j))
        return pairs


def orbit_corolla_forest(colors: ColorSet, sig: Signature) -> OrbitForest:
    return OrbitForest(colors, sig)

# ==================== PSEUDO INDEXING SYSTEMS ====================

@dataclass
class PseudoIndexingWitness:
    tree: ColoredTree
    subgroup: List[Tuple]
    reason: str

    def describe(self) -> str:
        shape = 'stick' if self.tree.is_stick else self.tree.to_text()
        return f"tree {shape}: {self.reason}; subgroup {self.subgroup}"


def check_pseudo_indexing(family: GSigmaFamily, bound: int) -> Tuple[bool, Optional[PseudoIndexingWitness]]:
    """
    Verify V* F^x <= lr* F on uncolored trees with at most `bound` vertices whose
    vertex and leaf arities lie in the family's arity range.
    """
    group = family.group
    colors = ColorSet.trivial(['*'], group=group)
    arities = family.arities
    checked = 0
    for n in arities:
        for tree_class in enumerate_trees(colors, Signature((0,) * n, 0), bound, vertex_arities=arities):
            tree = tree_class.tree
            autos = TreeAutomorphismGroup(tree, group, equivariant=True)
            vertices = tree.vertex_paths()
            for sub in autos.group.subgroups():
                elements = [autos.elements[m] for m in sub.sorted_members]
                if not _vertex_condition(family, autos, vertices, elements):
                    continue
                checked += 1
                image = frozenset(group.gsigma(n).index[autos.lr_data(e)] for e in elements)
                if not family.contains(n, image):
                    return False, PseudoIndexingWitness(
                        tree, [autos.lr_data(e) for e in elements],
                        f"lr image not in F_{n} although every vertex condition holds")
    logger.debug(f"pseudo indexing: {checked} subgroups satisfied the vertex conditions")
    return True, None


def _vertex_condition(family: GSigmaFamily, autos: TreeAutomorphismGroup, vertices: Sequence[Path], elements) -> bool:
    group = family.group
    for path in vertices:
        arity = len(autos.tree.node(path).children)
        fixing = [e for e in elements if autos.image(e, path) == path]
        image = frozenset(group.gsigma(arity).index[autos.vertex_data(e, path)] for e in fixing)
        if not family.contains(arity, image):
            return False
    return True
