"""
Symmetric Sequences for the Equivariant Operad Workbench
Finite-set-valued functors on the signature groupoid G x| Sigma_C^op truncated to a declared
arity range: orbit presentations, representables, quotients by stabilizing subgroups,
change of colors, fixed points and F-equivalences.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from networkx.utils import UnionFind

from .colors import ColorMap, ColorSet, Signature, act_on_signature, stabilizes
from .families import GSigmaFamily
from .groupoids import Arrow, NaturalTransformation, SetValuedFunctor, count_natural_transformations, hom_set, lan_along
from .groups import Subgroup, identity_perm, trivial_group
from ..utils.helpers import SignatureError, SymSeqError, SymSeqRangeError, canonical_classes, handle_error

logger = logging.getLogger(__name__)

# ==================== SYMMETRIC SEQUENCE ====================

class SymSeq(SetValuedFunctor):
    """
    A symmetric sequence X: G x| Sigma_C^op -> FinSet on signatures of arity <= max_arity.

    Args:
        colors: the color G-set C
        max_arity: declared truncation; values outside it raise SymSeqRangeError
        values: mapping or callable signature -> iterable of elements
        action: callable (arrow, element) -> element
    """

    def __init__(self, colors: ColorSet, max_arity: int,
                 values: Union[Mapping[Signature, Iterable[Hashable]], Callable],
                 action: Callable[[Arrow, Hashable], Hashable], name: str = ""):
        self.colors = colors
        self.max_arity = max_arity
        super().__init__(colors.signature_groupoid(max_arity), values, action, name=name or "X")

    def _require_in_range(self, sig: Signature):
        if sig.arity > self.max_arity or sig not in self.base:
            raise SymSeqRangeError(handle_error('arity_out_of_range',
                                                f"{sig.key(self.colors)} outside arity 0..{self.max_arity}"))

    def value(self, sig: Signature) -> Tuple[Hashable, ...]:
        self._require_in_range(sig)
        return super().value(sig)

    def act_on(self, sig: Signature, g: int, sigma: Sequence[int], element: Hashable) -> Hashable:
        """X(g, sigma): X(sig) -> X(g sig sigma)"""
        return self.act(self.base.arrow(sig, g, sigma), element)

    def signatures(self) -> Tuple[Signature, ...]:
        return self.base.objects()

    def support(self) -> List[Signature]:
        return [sig for sig in self.signatures() if self.value(sig)]

    def is_empty(self) -> bool:
        return not self.support()

    def level_counts(self) -> Dict[Signature, int]:
        """|X(sig)| for one signature per orbit, nonempty levels only"""
        return {comp[0]: len(self.value(comp[0])) for comp in self.base.components() if self.value(comp[0])}

    def arity_counts(self) -> Dict[int, int]:
        """Level sizes summed over orbit representatives, per arity"""
        counts: Dict[int, int] = {}
        for sig, size in self.level_counts().items():
            counts[sig.arity] = counts.get(sig.arity, 0) + size
        return counts

    def __repr__(self) -> str:
        return f"SymSeq({self.name}, max_arity={self.max_arity})"

# ==================== ORBIT PRESENTATIONS ====================

@dataclass(frozen=True)
class OrbitGenerator:
    """One summand G x| Sigma_C^op(sig, -)/Lambda, named `name`"""
    signature: Signature
    stabilizer: Tuple[Tuple[int, Tuple[int, ...]], ...]
    name: Hashable


class OrbitSymSeq(SymSeq):
    """
    A coproduct of quotients of representables.

    Elements are (name, least arrow data of the coset a o Lambda), so a: sig -> D
    names the element of the summand `name` at D.
    """

    def __init__(self, colors: ColorSet, max_arity: int, generators: Sequence[OrbitGenerator], name: str = ""):
        self.generators = tuple(generators)
        self._by_name: Dict[Hashable, OrbitGenerator] = {}
        for gen in self.generators:
            if gen.name in self._by_name:
                raise SymSeqError(handle_error('input_error', f"duplicate generator name {gen.name!r}"))
            if gen.signature.arity > max_arity:
                raise SymSeqRangeError(handle_error('arity_out_of_range', f"generator {gen.name!r} has arity {gen.signature.arity}"))
            self._by_name[gen.name] = gen
        super().__init__(colors, max_arity, self._orbit_values, self._orbit_action, name=name)

    def _coset(self, gen: OrbitGenerator, arrow: Arrow) -> Tuple[Hashable, Tuple]:
        base = self.base
        return (gen.name, min(base.compose(arrow, Arrow(gen.signature, gen.signature, lam)).data
                              for lam in gen.stabilizer))

    def _orbit_values(self, sig: Signature):
        return {self._coset(gen, a) for gen in self.generators for a in self.base.hom(gen.signature, sig)}

    def _orbit_action(self, arrow: Arrow, element):
        gen = self._by_name[element[0]]
        return self._coset(gen, self.base.compose(arrow, Arrow(gen.signature, arrow.source, element[1])))

    def generator_element(self, name: Hashable) -> Tuple[Hashable, Tuple]:
        """The element of the summand `name` named by the identity arrow"""
        gen = self._by_name[name]
        return self._coset(gen, self.base.identity(gen.signature))


def _stabilizer_data(colors: ColorSet, sig: Signature, subgroup: Optional[Subgroup]) -> Tuple:
    if subgroup is None:
        return ((colors.group.identity, identity_perm(sig.arity)),)
    if not stabilizes(colors, subgroup, sig):
        raise SymSeqError(handle_error('not_stabilizer', f"{subgroup} on {sig.key(colors)}"))
    return tuple(subgroup.parent.elements[m] for m in subgroup.sorted_members)


def from_orbits(colors: ColorSet, max_arity: int,
                generators: Iterable[Tuple[Signature, Optional[Subgroup], Hashable]], name: str = "") -> OrbitSymSeq:
    """Build X = coproduct of Sigma_C[G . sig]/Lambda over (sig, Lambda, name) triples"""
    gens = [OrbitGenerator(sig, _stabilizer_data(colors, sig, sub), gen_name) for sig, sub, gen_name in generators]
    return OrbitSymSeq(colors, max_arity, gens, name=name)


def representable(colors: ColorSet, max_arity: int, sig: Signature, name: Hashable = 'y') -> OrbitSymSeq:
    """(G x| Sigma_C^op)(sig, -)"""
    return from_orbits(colors, max_arity, [(sig, None, name)], name=f"rep{sig.key(colors)}")


def constant(colors: ColorSet, max_arity: int, sig: Signature, elements: Iterable[Hashable]) -> SymSeq:
    """elements at every signature in the orbit of sig, every arrow acting trivially"""
    elements = tuple(elements)
    base = colors.signature_groupoid(max_arity)
    rep = base.representative(sig)
    orbit = set(next(comp for comp in base.components() if comp[0] == rep))
    return SymSeq(colors, max_arity, lambda s: elements if s in orbit else (), lambda f, x: x, name="const")


def empty(colors: ColorSet, max_arity: int) -> SymSeq:
    return SymSeq(colors, max_arity, lambda sig: (), lambda f, x: x, name="empty")


def from_table(colors: ColorSet, max_arity: int, values: Mapping[Signature, Iterable[Hashable]],
               generating_actions: Mapping[Tuple[Signature, Tuple[int, Tuple[int, ...]]], Mapping[Hashable, Hashable]],
               name: str = "") -> SymSeq:
    """
    A symmetric sequence from explicit values and the action of a generating set of arrows.

    Arrows not listed act by the composite of listed ones (or their inverses); when nothing
    is listed for an arrow out of a signature the identity on element names is assumed.
    The result is checked for functoriality.
    """
    base = colors.signature_groupoid(max_arity)
    given: Dict[Arrow, Dict[Hashable, Hashable]] = {}
    for (sig, data), mapping in generating_actions.items():
        given[Arrow(sig, act_on_signature(colors, data[0], data[1], sig), (data[0], tuple(data[1])))] = dict(mapping)
    table: Dict[Arrow, Dict[Hashable, Hashable]] = {}
    for comp in base.components():
        for x in comp:
            table[base.identity(x)] = {a: a for a in values.get(x, ())}
    frontier = list(table)
    moves = list(given.items()) + [(base.inverse(f), {v: k for k, v in m.items()}) for f, m in given.items()]
    while frontier:
        f = frontier.pop()
        for g, mapping in moves:
            if g.source != f.target:
                continue
            gf = base.compose(g, f)
            composite = {a: mapping.get(b, b) for a, b in table[f].items()}
            if gf not in table:
                table[gf] = composite
                frontier.append(gf)
            elif table[gf] != composite:
                raise SymSeqError(handle_error('invalid_action', f"generating actions disagree on {gf}"))

    def action(arrow: Arrow, element):
        mapping = table.get(arrow)
        return mapping[element] if mapping is not None else element

    seq = SymSeq(colors, max_arity, {sig: tuple(v) for sig, v in values.items()}, action, name=name or "table")
    ok, witness = seq.check_functoriality()
    if not ok:
        raise SymSeqError(handle_error('invalid_action', witness))
    return seq

# ==================== QUOTIENTS ====================

class QuotientSymSeq(SymSeq):
    """X modulo x ~ Lambda.x for the designated elements x of X(sig), transported along all arrows"""

    def __init__(self, inner: SymSeq, sig: Signature, subgroup: Subgroup,
                 elements: Optional[Iterable[Hashable]] = None, name: str = ""):
        self.inner = inner
        self.signature = sig
        self._lambda = [Arrow(sig, sig, d) for d in _stabilizer_data(inner.colors, sig, subgroup)]
        self._designated = tuple(elements) if elements is not None else inner.value(sig)
        self._tables: Dict[Signature, Dict[Hashable, Hashable]] = {}
        super().__init__(inner.colors, inner.max_arity, lambda s: set(self._table(s).values()),
                         lambda f, x: self._table(f.target)[inner.act(f, x)], name=name or f"{inner.name}/Lambda")

    def _table(self, target: Signature) -> Dict[Hashable, Hashable]:
        if target not in self._tables:
            inner, base = self.inner, self.inner.base
            union_find = UnionFind()
            elements = inner.value(target)
            for x in elements:
                union_find[x]
            for a in base.hom(self.signature, target):
                for x in self._designated:
                    for lam in self._lambda:
                        union_find.union(inner.act(a, x), inner.act(base.compose(a, lam), x))
            self._tables[target] = canonical_classes(union_find, elements)
        return self._tables[target]


def quotient_by(seq: SymSeq, subgroup: Subgroup, sig: Signature,
                elements: Optional[Iterable[Hashable]] = None) -> QuotientSymSeq:
    """
    Quotient the summand generated by `elements` of X(sig) by the stabilizer Lambda.

    Without `elements` every element of X(sig) is designated.
    """
    return QuotientSymSeq(seq, sig, subgroup, elements)

# ==================== CHANGE OF COLORS ====================

def _require_colors(seq: SymSeq, colors: ColorSet, role: str):
    if seq.colors is not colors:
        raise SignatureError(handle_error('signature_mismatch', f"{role} lives over {seq.colors}, expected {colors}"))


def pullback(phi: ColorMap, seq: SymSeq) -> SymSeq:
    """phi* Y(sig) = Y(phi sig)"""
    _require_colors(seq, phi.target, 'pulled back sequence')
    return SymSeq(phi.source, seq.max_arity,
                  lambda sig: seq.value(phi.on_signature(sig)),
                  lambda f, y: seq.act(Arrow(phi.on_signature(f.source), phi.on_signature(f.target), f.data), y),
                  name=f"phi*{seq.name}")


def pushforward(phi: ColorMap, seq: SymSeq, via_kan: bool = False) -> SymSeq:
    """
    phi_! X, the left adjoint of phi*.

    Injective phi extends by the empty set and keeps element names; otherwise (or with
    via_kan) the value is the left Kan extension along the induced signature functor.
    """
    _require_colors(seq, phi.source, 'pushed forward sequence')
    if phi.injective and not via_kan:
        def preimage(sig: Signature) -> Optional[Signature]:
            found = phi.preimages(sig)
            return found[0] if found else None

        def values(sig: Signature):
            pre = preimage(sig)
            return seq.value(pre) if pre is not None else ()

        def action(f: Arrow, x):
            return seq.act(Arrow(preimage(f.source), preimage(f.target), f.data), x)

        return SymSeq(phi.target, seq.max_arity, values, action, name=f"phi_!{seq.name}")
    kan = lan_along(phi.functor(seq.max_arity), seq)
    return SymSeq(phi.target, seq.max_arity, kan.value, kan.act, name=f"Lan {seq.name}")


def forget_equivariance(seq: SymSeq, plain: Optional[ColorSet] = None) -> SymSeq:
    """Restrict along Sigma_C^op -> G x| Sigma_C^op"""
    plain = plain or ColorSet(trivial_group(), seq.colors.names)
    identity = seq.colors.group.identity
    return SymSeq(plain, seq.max_arity, seq.value,
                  lambda f, x: seq.act_on(f.source, identity, f.data[1], x), name=f"{seq.name} (no G)")

# ==================== MAPS ====================

class SymSeqMap(NaturalTransformation):
    """
    A map of symmetric sequences over one color G-set.

    Naturality is not enforced on construction; check_naturality() verifies it.
    """

    def __init__(self, source: SymSeq, target: SymSeq,
                 components: Union[Mapping[Signature, Mapping[Hashable, Hashable]], Callable], name: str = ""):
        if source.colors is not target.colors or source.max_arity != target.max_arity:
            raise SignatureError(handle_error('signature_mismatch', f"{source} and {target} have different bases"))
        super().__init__(source, target, components, name=name or "f")

    @classmethod
    def from_function(cls, source: SymSeq, target: SymSeq,
                      function: Callable[[Signature, Hashable], Hashable], name: str = "") -> "SymSeqMap":
        return cls(source, target, lambda sig: {x: function(sig, x) for x in source.value(sig)}, name=name)

    def is_levelwise_bijective(self) -> bool:
        for sig in self.source.signatures():
            image = [self.apply(sig, x) for x in self.source.value(sig)]
            if len(set(image)) != len(image) or set(image) != set(self.target.value(sig)):
                return False
        return True

    def is_levelwise_injective(self) -> bool:
        for sig in self.source.signatures():
            image = [self.apply(sig, x) for x in self.source.value(sig)]
            if len(set(image)) != len(image):
                return False
        return True


def identity_map(seq: SymSeq) -> SymSeqMap:
    return SymSeqMap.from_function(seq, seq, lambda sig, x: x, name="id")


def symseq_homs(source: SymSeq, target: SymSeq) -> Iterator[SymSeqMap]:
    for transformation in hom_set(source, target):
        yield SymSeqMap(source, target, transformation.component)


def count_symseq_homs(source: SymSeq, target: SymSeq) -> int:
    return count_natural_transformations(source, target)

# ==================== FIXED POINTS & F-EQUIVALENCES ====================

def fixed_points(seq: SymSeq, sig: Signature, subgroup: Subgroup) -> List[Hashable]:
    """X(sig)^Lambda for a stabilizer Lambda of sig"""
    data = _stabilizer_data(seq.colors, sig, subgroup)
    return [x for x in seq.value(sig) if all(seq.act(Arrow(sig, sig, d), x) == x for d in data)]


@dataclass
class FEquivalenceWitness:
    signature: Signature
    subgroup: Subgroup
    reason: str

    def describe(self, colors: Optional[ColorSet] = None) -> str:
        return f"at {self.signature.key(colors)} with Lambda={self.subgroup.labels()}: {self.reason}"


def is_F_equivalence(f: SymSeqMap, family: GSigmaFamily) -> Tuple[bool, Optional[FEquivalenceWitness]]:
    """
    Every Lambda in F stabilizing sig induces a bijection X(sig)^Lambda -> Y(sig)^Lambda.

    Naturality of f is not checked: a non-natural f is judged on its raw levelwise values,
    so call f.check_naturality() first when that matters.
    """
    source, target = f.source, f.target
    if family.group is not source.colors.group:
        raise SymSeqError(handle_error('signature_mismatch', 'family over a different group'))
    missing = [n for n in range(source.max_arity + 1) if n not in family.arities]
    if missing:
        raise SymSeqRangeError(handle_error('arity_out_of_range', f"family does not cover arities {missing}"))
    for sig in source.signatures():
        for sub in family.subgroups(sig.arity):
            if not stabilizes(source.colors, sub, sig):
                continue
            fixed_source = fixed_points(source, sig, sub)
            fixed_target = set(fixed_points(target, sig, sub))
            image = [f.apply(sig, x) for x in fixed_source]
            if not set(image) <= fixed_target:
                return False, FEquivalenceWitness(sig, sub, "a fixed point maps outside the fixed points")
            if len(set(image)) != len(image):
                return False, FEquivalenceWitness(sig, sub, "not injective on fixed points")
            if len(image) != len(fixed_target):
                return False, FEquivalenceWitness(sig, sub, "not surjective on fixed points")
    return True, None
