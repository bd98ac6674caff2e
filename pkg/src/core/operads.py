"""
Operads for the Equivariant Operad Workbench
Truncated equivariant colored operads given by units and partial compositions: endomorphism
operads, table operads, change of colors, tree evaluation, law checking and the enumeration
of operad maps.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .colors import ColorMap, ColorSet, Signature
from .groupoids import Arrow, orbit_plan
from .groups import identity_perm
from .symseq import SymSeq, SymSeqMap, pullback, pushforward
from .trees import ColoredTree, Node, Path, corolla_of, corolla_node, leaf, vertex
from ..utils.config import ENGINE_CONFIG
from ..utils.helpers import OperadError, SearchLimitError, SignatureError, TruncationError, handle_error

logger = logging.getLogger(__name__)

# ==================== OPERAD INTERFACE ====================

def composite_signature(outer: Signature, i: int, inner: Signature) -> Signature:
    """Signature of x o_i y for x over outer and y over inner"""
    if not 0 <= i < outer.arity:
        raise SignatureError(handle_error('signature_mismatch', f"slot {i} of {outer}"))
    if outer.inputs[i] != inner.output:
        raise SignatureError(handle_error('signature_mismatch', f"{inner} cannot be grafted into slot {i} of {outer}"))
    return Signature(outer.inputs[:i] + inner.inputs + outer.inputs[i + 1:], outer.output)


class Operad:
    """
    A G-equivariant C-colored operad truncated at max_arity.

    Subclasses set `underlying` and provide unit and partial_compose; partial_compose
    returns None when the composite lies outside the truncation.
    """

    def __init__(self, colors: ColorSet, max_arity: int, name: str = ""):
        self.colors = colors
        self.max_arity = max_arity
        self.name = name or "O"
        self.underlying: Optional[SymSeq] = None

    def unit(self, color: int) -> Hashable:
        raise NotImplementedError

    def partial_compose(self, outer: Signature, x: Hashable, i: int, inner: Signature, y: Hashable) -> Optional[Hashable]:
        raise NotImplementedError

    def value(self, sig: Signature) -> Tuple[Hashable, ...]:
        return self.underlying.value(sig)

    def act_on(self, sig: Signature, g: int, sigma: Sequence[int], x: Hashable) -> Hashable:
        return self.underlying.act_on(sig, g, sigma, x)

    def signatures(self) -> Tuple[Signature, ...]:
        return self.underlying.signatures()

    def in_range(self, sig: Signature) -> bool:
        return sig.arity <= self.max_arity

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, max_arity={self.max_arity})"

# ==================== ENDOMORPHISM OPERADS ====================

def _input_index(sizes: Sequence[int], values: Sequence[int]) -> int:
    index = 0
    for size, value in zip(sizes, values):
        index = index * size + value
    return index


class EndomorphismOperad(Operad):
    """
    End(S) for a C-graded carrier S: an element over (c_1..c_n; c_0) is a function
    S_c1 x ... x S_cn -> S_c0 stored as its output tuple in product order.

    Args:
        carriers: carrier names per color index
        carrier_action: (g, c, index in S_c) -> index in S_gc; defaults to index-preserving
    """

    def __init__(self, colors: ColorSet, carriers: Sequence[Sequence[str]], max_arity: int,
                 carrier_action: Optional[Callable[[int, int, int], int]] = None, name: str = ""):
        super().__init__(colors, max_arity, name or "End")
        self.carriers = [tuple(str(s) for s in carrier) for carrier in carriers]
        if len(self.carriers) != len(colors):
            raise OperadError(handle_error('input_error', 'one carrier per color required'))
        self._carrier_action = carrier_action
        if carrier_action is None:
            for g in range(colors.group.order):
                for c in colors:
                    if len(self.carriers[colors.act(g, c)]) != len(self.carriers[c]):
                        raise OperadError(handle_error('invalid_action', 'carrier sizes differ along a color orbit'))
        self.underlying = SymSeq(colors, max_arity, self._functions, self._act, name=self.name)

    def _size(self, c: int) -> int:
        return len(self.carriers[c])

    def _move(self, g: int, c: int, index: int) -> int:
        return index if self._carrier_action is None else self._carrier_action(g, c, index)

    def _functions(self, sig: Signature):
        inputs = int(np.prod([self._size(c) for c in sig.inputs], dtype=np.int64))
        count = self._size(sig.output) ** inputs
        if count > ENGINE_CONFIG['exhaustive_limit']:
            raise TruncationError(handle_error('truncation', f"End level {sig.key(self.colors)} has {count} elements"))
        return itertools.product(range(self._size(sig.output)), repeat=inputs)

    def _act(self, arrow: Arrow, f: Tuple[int, ...]) -> Tuple[int, ...]:
        source, target = arrow.source, arrow.target
        g, sigma = arrow.data
        g_inv = self.colors.group.inverse(g)
        sizes = [self._size(c) for c in source.inputs]
        result = []
        for moved in itertools.product(*(range(self._size(d)) for d in target.inputs)):
            y = [0] * len(moved)
            for j, value in enumerate(moved):
                y[sigma[j]] = self._move(g_inv, target.inputs[j], value)
            result.append(self._move(g, source.output, f[_input_index(sizes, y)]))
        return tuple(result)

    def unit(self, color: int) -> Tuple[int, ...]:
        return tuple(range(self._size(color)))

    def partial_compose(self, outer, x, i, inner, y):
        result_sig = composite_signature(outer, i, inner)
        if result_sig.arity > self.max_arity:
            return None
        m = inner.arity
        outer_sizes = [self._size(c) for c in outer.inputs]
        inner_sizes = [self._size(c) for c in inner.inputs]
        result = []
        for z in itertools.product(*(range(self._size(c)) for c in result_sig.inputs)):
            value = y[_input_index(inner_sizes, z[i:i + m])]
            result.append(x[_input_index(outer_sizes, z[:i] + (value,) + z[i + m:])])
        return tuple(result)

    def apply(self, sig: Signature, f: Tuple[int, ...], arguments: Sequence[int]) -> int:
        return f[_input_index([self._size(c) for c in sig.inputs], arguments)]


def endomorphism_operad(size: int, max_arity: int, colors: Optional[ColorSet] = None) -> EndomorphismOperad:
    """End of an n-element set over a single color"""
    colors = colors or ColorSet.trivial(['*'])
    return EndomorphismOperad(colors, [[str(k) for k in range(size)]] * len(colors), max_arity,
                              name=f"End({size})")

# ==================== TABLE OPERADS ====================

CompositionKey = Tuple[Signature, Hashable, int, Signature, Hashable]


class TableOperad(Operad):
    """An operad given by explicit units and a partial composition table"""

    def __init__(self, underlying: SymSeq, units: Mapping[int, Hashable],
                 compositions: Mapping[CompositionKey, Hashable], name: str = ""):
        super().__init__(underlying.colors, underlying.max_arity, name or "table")
        self.underlying = underlying
        self.units = dict(units)
        self.compositions = dict(compositions)

    @classmethod
    def from_operad(cls, operad: Operad, rename: bool = False, name: str = "") -> "TableOperad":
        """Materialize every composite within the truncation, optionally renaming elements to level indices"""
        seq = operad.underlying
        names: Dict[Tuple[Signature, Hashable], Hashable] = {}
        for sig in seq.signatures():
            for k, x in enumerate(seq.value(sig)):
                names[(sig, x)] = str(k) if rename else x
        if rename:
            back = {(sig, n): x for (sig, x), n in names.items()}
            renamed = SymSeq(seq.colors, seq.max_arity,
                             lambda sig: [names[(sig, x)] for x in seq.value(sig)],
                             lambda f, n: names[(f.target, seq.act(f, back[(f.source, n)]))], name=seq.name)
        else:
            renamed = seq
        compositions = {}
        for outer, x, i, inner, y, result_sig, z in composition_facts(operad):
            compositions[(outer, names[(outer, x)], i, inner, names[(inner, y)])] = names[(result_sig, z)]
        units = {c: names[(Signature((c,), c), operad.unit(c))] for c in operad.colors}
        return cls(renamed, units, compositions, name=name or operad.name)

    def unit(self, color):
        return self.units[color]

    def partial_compose(self, outer, x, i, inner, y):
        result_sig = composite_signature(outer, i, inner)
        if result_sig.arity > self.max_arity:
            return None
        try:
            return self.compositions[(outer, x, i, inner, y)]
        except KeyError:
            raise OperadError(handle_error('check_failed', f"composition table lacks {outer} o_{i} {inner} on {x!r}, {y!r}"))

    def mutated(self, key: CompositionKey, value: Hashable) -> "TableOperad":
        """Copy with one composition entry replaced"""
        if key not in self.compositions:
            raise OperadError(handle_error('check_failed', f"no composition entry {key}"))
        compositions = dict(self.compositions)
        compositions[key] = value
        return TableOperad(self.underlying, self.units, compositions, name=f"{self.name} (mutated)")

# ==================== CHANGE OF COLORS ====================

class PullbackOperad(Operad):
    """phi* O: reindexing along a color map"""

    def __init__(self, phi: ColorMap, operad: Operad):
        super().__init__(phi.source, operad.max_arity, f"phi*{operad.name}")
        self.phi = phi
        self.operad = operad
        self.underlying = pullback(phi, operad.underlying)

    def unit(self, color):
        return self.operad.unit(self.phi(color))

    def partial_compose(self, outer, x, i, inner, y):
        phi = self.phi
        return self.operad.partial_compose(phi.on_signature(outer), x, i, phi.on_signature(inner), y)


def pullback_operad(phi: ColorMap, operad: Operad) -> PullbackOperad:
    return PullbackOperad(phi, operad)


@dataclass(frozen=True)
class NewColorUnit:
    """The unit at a color outside the image of an injective color map"""
    color: int


class InjectivePushforwardOperad(Operad):
    """
    phi_! O for injective phi: extension by the empty set, plus the units at the colors
    outside the image.
    """

    def __init__(self, phi: ColorMap, operad: Operad):
        if not phi.injective:
            raise OperadError(handle_error('not_injective', f"{list(phi.mapping)}"))
        super().__init__(phi.target, operad.max_arity, f"phi_!{operad.name}")
        self.phi = phi
        self.operad = operad
        self._image = set(phi.mapping)
        extended = pushforward(phi, operad.underlying)

        def values(sig: Signature):
            found = list(extended.value(sig))
            if sig.arity == 1 and sig.inputs[0] == sig.output and sig.output not in self._image:
                found.append(NewColorUnit(sig.output))
            return found

        def action(f: Arrow, x):
            if isinstance(x, NewColorUnit):
                return NewColorUnit(f.target.output)
            return extended.act(f, x)

        self.underlying = SymSeq(phi.target, operad.max_arity, values, action, name=self.name)

    def _preimage(self, sig: Signature) -> Signature:
        return self.phi.preimages(sig)[0]

    def unit(self, color):
        if color not in self._image:
            return NewColorUnit(color)
        return self.operad.unit(self.phi.mapping.index(color))

    def partial_compose(self, outer, x, i, inner, y):
        composite_signature(outer, i, inner)
        if isinstance(x, NewColorUnit):
            return y
        if isinstance(y, NewColorUnit):
            return x
        return self.operad.partial_compose(self._preimage(outer), x, i, self._preimage(inner), y)


def pushforward_operad_injective(phi: ColorMap, operad: Operad) -> InjectivePushforwardOperad:
    return InjectivePushforwardOperad(phi, operad)

# ==================== TREE EVALUATION ====================

def compose_children(operad: Operad, sig: Signature, value: Hashable,
                     grafts: Mapping[int, Tuple[Signature, Hashable]]) -> Tuple[Signature, Hashable]:
    """
    Graft grafts[j] = (child_sig, child_value) into input j of value over sig, for every listed j.

    Children go in smallest arity first, so with nullary children the running arity falls and
    then climbs to the final arity without passing it. Raises TruncationError only when the
    final composite lies outside the truncation.
    """
    final_arity = sig.arity + sum(child_sig.arity - 1 for child_sig, _ in grafts.values())
    if final_arity > operad.max_arity:
        raise TruncationError(handle_error('truncation', f"composite of arity {final_arity} at {sig!r}"))
    widths = [1] * sig.arity
    for j in sorted(grafts, key=lambda j: (grafts[j][0].arity, j)):
        child_sig, child_value = grafts[j]
        position = sum(widths[:j])
        value = operad.partial_compose(sig, value, position, child_sig, child_value)
        if value is None:
            raise TruncationError(handle_error('truncation', f"grafting into input {j} of {sig!r}"))
        sig = composite_signature(sig, position, child_sig)
        widths[j] = child_sig.arity
    return sig, value


def _evaluate_bottom_up(operad: Operad, node: Node, path: Path, labeling: Mapping[Path, Hashable]):
    grafts = {i: _evaluate_bottom_up(operad, child, path + (i,), labeling)
              for i, child in enumerate(node.children) if not child.is_leaf}
    return compose_children(operad, corolla_of(node), labeling[path], grafts)


def _evaluate_top_down(operad: Operad, tree: ColoredTree, labeling: Mapping[Path, Hashable]):
    root = tree.root
    sig = corolla_of(root)
    value = labeling[()]
    slots: List[Tuple[Path, Node]] = [((i,), c) for i, c in enumerate(root.children)]
    while True:
        pending = next((j for j, (_, n) in enumerate(slots) if not n.is_leaf), None)
        if pending is None:
            return sig, value
        path, node = slots[pending]
        child_sig = corolla_of(node)
        value = operad.partial_compose(sig, value, pending, child_sig, labeling[path])
        if value is None:
            raise TruncationError(handle_error('truncation', f"grafting at {path}"))
        sig = composite_signature(sig, pending, child_sig)
        slots = slots[:pending] + [(path + (i,), c) for i, c in enumerate(node.children)] + slots[pending + 1:]


def eval_tree(operad: Operad, tree: ColoredTree, labeling: Mapping[Path, Hashable], check: bool = True) -> Hashable:
    """
    Evaluate a vertex-labeled tree to an element over its planar leaf-root.

    Evaluates bottom-up (smallest child arity first at each vertex); with check=True also
    top-down (left to right) and raises OperadError if the two disagree. The top-down pass is
    skipped when one of its intermediate composites leaves the truncation.
    """
    if tree.is_stick:
        return operad.unit(tree.root.color)
    for path in tree.vertex_paths():
        expected = corolla_of(tree.node(path))
        if path not in labeling:
            raise OperadError(handle_error('check_failed', f"vertex {path} is unlabeled"))
        if labeling[path] not in operad.value(expected):
            raise OperadError(handle_error('signature_mismatch', f"label at {path} is not an element over {expected}"))
    _, value = _evaluate_bottom_up(operad, tree.root, (), labeling)
    if check:
        try:
            _, other = _evaluate_top_down(operad, tree, labeling)
        except TruncationError:
            logger.debug(f"top-down check of {tree.to_text()} leaves the truncation, skipped")
            return value
        if other != value:
            raise OperadError(handle_error('check_failed', f"evaluation depends on grafting order for {tree.to_text()}"))
    return value

# ==================== LAW CHECKING ====================

@dataclass
class LawWitness:
    law: str
    tree: ColoredTree
    labels: Dict[Path, Hashable]
    detail: str

    def describe(self) -> str:
        return f"{self.law} fails on {self.tree.to_text()}: {self.detail}"


@dataclass
class LawReport:
    passed: bool
    checked: Dict[str, int] = field(default_factory=dict)
    witness: Optional[LawWitness] = None
    sampled: bool = False


def _graft_tree(outer: Signature, attachments: Mapping[int, Node]) -> Node:
    return vertex(outer.output, (attachments.get(i, leaf(c)) for i, c in enumerate(outer.inputs)))


def _instances(pools: Sequence[Sequence[Hashable]], limit: int, rng: np.random.Generator) -> Tuple[Iterable[Tuple], bool]:
    total = int(np.prod([len(p) for p in pools], dtype=np.float64)) if pools else 1
    if total <= limit:
        return itertools.product(*pools), False
    picks = [tuple(pool[int(rng.integers(len(pool)))] for pool in pools) for _ in range(limit)]
    return picks, True


def _adjacent_arrows(group_order: int, identity: int, n: int, m: int):
    """(g, sigma, tau) generating G x Sigma_n x Sigma_m"""
    id_n, id_m = identity_perm(n), identity_perm(m)
    moves = [(g, id_n, id_m) for g in range(group_order)]
    for k in range(n - 1):
        swap = list(id_n)
        swap[k], swap[k + 1] = swap[k + 1], swap[k]
        moves.append((identity, tuple(swap), id_m))
    for k in range(m - 1):
        swap = list(id_m)
        swap[k], swap[k + 1] = swap[k + 1], swap[k]
        moves.append((identity, id_n, tuple(swap)))
    return moves


def equivariance_permutation(sigma: Sequence[int], tau: Sequence[int], i: int, m: int) -> Tuple[int, ...]:
    """
    rho with (g, sigma)x o_j (g, tau)y = (g, rho)(x o_i y), where j = sigma^-1(i) and m
    is the arity of y.
    """
    n = len(sigma)
    j = list(sigma).index(i)

    def old(q: int) -> int:
        return q if q < i else q + m - 1

    rho = []
    for p in range(n + m - 1):
        if p < j:
            rho.append(old(sigma[p]))
        elif p < j + m:
            rho.append(i + tau[p - j])
        else:
            rho.append(old(sigma[p - m + 1]))
    return tuple(rho)


def check_operad_laws(operad: Operad, seed: Optional[int] = None, limit: Optional[int] = None) -> LawReport:
    """
    Unit, sequential and parallel associativity, and equivariance, wherever both sides
    lie inside the truncation. Signature combinations with more instances than `limit`
    are sampled with a seeded generator.
    """
    limit = limit or ENGINE_CONFIG['exhaustive_limit']
    rng = np.random.default_rng(seed)
    group = operad.colors.group
    pools = {sig: operad.value(sig) for sig in operad.signatures() if operad.value(sig)}
    report = LawReport(passed=True, checked={'unit': 0, 'associativity': 0, 'parallel': 0, 'equivariance': 0})
    compose = operad.partial_compose

    def fail(law, tree_root, labels, detail):
        report.passed = False
        report.witness = LawWitness(law, ColoredTree(tree_root, operad.colors), labels, detail)
        return report

    # 1. units
    for sig, values in pools.items():
        top = Signature((sig.output,), sig.output)
        for x in values:
            report.checked['unit'] += 1
            if compose(top, operad.unit(sig.output), 0, sig, x) != x:
                root = vertex(sig.output, [corolla_node(sig)])
                return fail('unit', root, {(): operad.unit(sig.output), (0,): x}, "left unit")
            for i, c in enumerate(sig.inputs):
                if compose(sig, x, i, Signature((c,), c), operad.unit(c)) != x:
                    root = _graft_tree(sig, {i: vertex(c, [leaf(c)])})
                    return fail('unit', root, {(): x, (i,): operad.unit(c)}, f"right unit at slot {i}")

    # 2. sequential and parallel associativity
    for outer in pools:
        for i, c in enumerate(outer.inputs):
            for middle in pools:
                if middle.output != c:
                    continue
                first = composite_signature(outer, i, middle)
                if first.arity > operad.max_arity:
                    continue
                for inner in pools:
                    for j, d in enumerate(middle.inputs):
                        if inner.output != d or composite_signature(first, i + j, inner).arity > operad.max_arity:
                            continue
                        instances, sampled = _instances([pools[outer], pools[middle], pools[inner]], limit, rng)
                        report.sampled |= sampled
                        inner_first = composite_signature(middle, j, inner)
                        for x, y, z in instances:
                            xy = compose(outer, x, i, middle, y)
                            yz = compose(middle, y, j, inner, z)
                            if xy is None or yz is None:
                                continue
                            lhs = compose(first, xy, i + j, inner, z)
                            rhs = compose(outer, x, i, inner_first, yz)
                            if lhs is None or rhs is None:
                                continue
                            report.checked['associativity'] += 1
                            if lhs != rhs:
                                middle_node = _graft_tree(middle, {j: corolla_node(inner)})
                                return fail('associativity', _graft_tree(outer, {i: middle_node}),
                                            {(): x, (i,): y, (i, j): z}, f"slots {i}, {j}")
                    for k in range(i + 1, outer.arity):
                        if inner.output != outer.inputs[k]:
                            continue
                        shifted = k + middle.arity - 1
                        if composite_signature(first, shifted, inner).arity > operad.max_arity:
                            continue
                        other = composite_signature(outer, k, inner)
                        instances, sampled = _instances([pools[outer], pools[middle], pools[inner]], limit, rng)
                        report.sampled |= sampled
                        for x, y, z in instances:
                            xy = compose(outer, x, i, middle, y)
                            xz = compose(outer, x, k, inner, z)
                            if xy is None or xz is None:
                                continue
                            lhs = compose(first, xy, shifted, inner, z)
                            rhs = compose(other, xz, i, middle, y)
                            if lhs is None or rhs is None:
                                continue
                            report.checked['parallel'] += 1
                            if lhs != rhs:
                                root = _graft_tree(outer, {i: corolla_node(middle), k: corolla_node(inner)})
                                return fail('associativity', root, {(): x, (i,): y, (k,): z},
                                            f"parallel slots {i}, {k}")

    # 3. equivariance on two-vertex trees, generators only
    for outer in pools:
        for i, c in enumerate(outer.inputs):
            for inner in pools:
                if inner.output != c:
                    continue
                result_sig = composite_signature(outer, i, inner)
                if result_sig.arity > operad.max_arity:
                    continue
                instances, sampled = _instances([pools[outer], pools[inner]], limit, rng)
                report.sampled |= sampled
                moves = _adjacent_arrows(group.order, group.identity, outer.arity, inner.arity)
                for x, y in instances:
                    xy = compose(outer, x, i, inner, y)
                    if xy is None:
                        continue
                    for g, sigma, tau in moves:
                        x_moved = operad.act_on(outer, g, sigma, x)
                        y_moved = operad.act_on(inner, g, tau, y)
                        moved_outer = operad.underlying.base.arrow(outer, g, sigma).target
                        moved_inner = operad.underlying.base.arrow(inner, g, tau).target
                        j = list(sigma).index(i)
                        lhs = compose(moved_outer, x_moved, j, moved_inner, y_moved)
                        rho = equivariance_permutation(sigma, tau, i, inner.arity)
                        rhs = operad.act_on(result_sig, g, rho, xy)
                        report.checked['equivariance'] += 1
                        if lhs != rhs:
                            root = _graft_tree(outer, {i: corolla_node(inner)})
                            return fail('equivariance', root, {(): x, (i,): y},
                                        f"g={g}, sigma={list(sigma)}, tau={list(tau)}")
    logger.debug(f"{operad.name}: law instances {report.checked}")
    return report

# ==================== OPERAD MAPS ====================

def composition_facts(operad: Operad) -> Iterator[Tuple[Signature, Hashable, int, Signature, Hashable, Signature, Hashable]]:
    """Every defined composite (outer, x, i, inner, y, result signature, x o_i y)"""
    pools = {sig: operad.value(sig) for sig in operad.signatures() if operad.value(sig)}
    for outer, xs in pools.items():
        for i, c in enumerate(outer.inputs):
            for inner, ys in pools.items():
                if inner.output != c:
                    continue
                result_sig = composite_signature(outer, i, inner)
                if result_sig.arity > operad.max_arity:
                    continue
                for x in xs:
                    for y in ys:
                        z = operad.partial_compose(outer, x, i, inner, y)
                        if z is not None:
                            yield outer, x, i, inner, y, result_sig, z


class OperadMap(SymSeqMap):
    """A map of operads: a map of underlying sequences preserving units and composition"""


def operad_homs(source: Operad, target: Operad, limit: Optional[int] = None) -> Iterator[OperadMap]:
    """
    All operad maps source -> target, by backtracking over orbit representatives of the
    source in order of arity; each composition fact is checked as soon as its three
    elements have images. Raises SearchLimitError when a map beyond the first `limit` exists.
    """
    if source.colors is not target.colors or source.max_arity != target.max_arity:
        raise SignatureError(handle_error('signature_mismatch', f"{source} and {target} have different bases"))
    limit = limit or ENGINE_CONFIG['hom_search_limit']
    seq_s, seq_t = source.underlying, target.underlying
    base = seq_s.base
    plan = sorted(orbit_plan(seq_s, seq_t), key=lambda entry: (entry[0][0].arity, entry[0][0]))
    orbit_of: Dict[Tuple[Signature, Hashable], int] = {}
    for index, (comp, members, _) in enumerate(plan):
        for z in comp:
            transport = base.transport(z)
            for m in members:
                orbit_of[(z, seq_s.act(transport, m))] = index
    checks: List[List[Tuple]] = [[] for _ in plan]
    for c in source.colors:
        key = (Signature((c,), c), source.unit(c))
        checks[orbit_of[key]].append(('unit', c, key))
    for outer, x, i, inner, y, result_sig, z in composition_facts(source):
        index = max(orbit_of[(outer, x)], orbit_of[(inner, y)], orbit_of[(result_sig, z)])
        checks[index].append(('compose', outer, x, i, inner, y, result_sig, z))

    images: Dict[Tuple[Signature, Hashable], Hashable] = {}

    def assign(index: int, choice: Hashable) -> Dict[Tuple[Signature, Hashable], Hashable]:
        comp, members, _ = plan[index]
        assigned = {}
        for z in comp:
            transport = base.transport(z)
            for m, h in members.items():
                assigned[(z, seq_s.act(transport, m))] = seq_t.act(transport, seq_t.act(h, choice))
        return assigned

    def consistent(index: int) -> bool:
        for check in checks[index]:
            if check[0] == 'unit':
                _, c, key = check
                if images[key] != target.unit(c):
                    return False
                continue
            _, outer, x, i, inner, y, result_sig, z = check
            composite = target.partial_compose(outer, images[(outer, x)], i, inner, images[(inner, y)])
            if composite is not None and composite != images[(result_sig, z)]:
                return False
        return True

    found = [0]

    def search(index: int) -> Iterator[Dict]:
        if index == len(plan):
            yield dict(images)
            return
        for choice in plan[index][2]:
            assigned = assign(index, choice)
            images.update(assigned)
            if consistent(index):
                yield from search(index + 1)
            for key in assigned:
                del images[key]

    for mapping in search(0):
        if found[0] >= limit:
            raise SearchLimitError(handle_error('search_limit', f"more than {limit} maps {source.name} -> {target.name}"))
        components: Dict[Signature, Dict[Hashable, Hashable]] = {}
        for (sig, x), image in mapping.items():
            components.setdefault(sig, {})[x] = image
        yield OperadMap(seq_s, seq_t, components, name=f"{source.name} -> {target.name}")
        found[0] += 1


def count_operad_homs(source: Operad, target: Operad, limit: Optional[int] = None) -> int:
    return sum(1 for _ in operad_homs(source, target, limit))
