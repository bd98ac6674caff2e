"""
Groupoid Engine for the Equivariant Operad Workbench
Finite groupoids (groups, semidirect and wreath groupoids, products), functors between them,
set-valued functors with their natural transformations, families of subgroups of groupoids,
and left Kan extension along groupoid functors.

Arrows are immutable values carrying source, target and an opaque data payload;
compose(g, f) means "g after f".
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from networkx.utils import UnionFind

from .families import FamilyWitness, GSigmaFamily
from .groups import FiniteGroup, Subgroup, all_permutations, block_sum, compose as compose_perm, identity_perm, inverse as inverse_perm
from ..utils.helpers import GroupoidError, canonical_classes, handle_error, sort_key

logger = logging.getLogger(__name__)

# ==================== ARROWS & AUTOMORPHISM GROUPS ====================

@dataclass(frozen=True)
class Arrow:
    source: Hashable
    target: Hashable
    data: Hashable


@dataclass
class AutomorphismGroup:
    """Aut(x) materialized as a FiniteGroup whose element i is arrows[i]"""
    obj: Hashable
    arrows: Tuple[Arrow, ...]
    group: FiniteGroup

    def __post_init__(self):
        self._index = {a: i for i, a in enumerate(self.arrows)}

    def index(self, arrow: Arrow) -> int:
        return self._index[arrow]

    def subgroup(self, arrows: Iterable[Arrow]) -> Subgroup:
        return Subgroup(self.group, frozenset(self._index[a] for a in arrows))

    def arrows_of(self, subgroup: Subgroup) -> FrozenSet[Arrow]:
        return frozenset(self.arrows[i] for i in subgroup.members)

# ==================== FINITE GROUPOID ====================

class FiniteGroupoid:
    """Base class: subclasses provide objects, hom, compose, identity and inverse"""

    name = "groupoid"

    def __init__(self, name: str = ""):
        if name:
            self.name = name
        self._aut_cache: Dict[Hashable, AutomorphismGroup] = {}
        self._components: Optional[List[Tuple[Hashable, ...]]] = None
        self._rep_of: Dict[Hashable, Hashable] = {}
        self._transport_cache: Dict[Hashable, Arrow] = {}

    # ---------- interface ----------

    def objects(self) -> Tuple[Hashable, ...]:
        raise NotImplementedError

    def hom(self, x: Hashable, y: Hashable) -> Tuple[Arrow, ...]:
        raise NotImplementedError

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        raise NotImplementedError

    def identity(self, x: Hashable) -> Arrow:
        raise NotImplementedError

    def inverse(self, f: Arrow) -> Arrow:
        raise NotImplementedError

    # ---------- derived structure ----------

    def arrows(self) -> Iterator[Arrow]:
        for x in self.objects():
            for y in self.objects():
                yield from self.hom(x, y)

    def arrows_from(self, x: Hashable) -> Iterator[Arrow]:
        for y in self.objects():
            yield from self.hom(x, y)

    def _require_composable(self, g: Arrow, f: Arrow):
        if f.target != g.source:
            raise GroupoidError(handle_error('invalid_groupoid', f"cannot compose {g} after {f}"))

    def components(self) -> List[Tuple[Hashable, ...]]:
        """Connected components (iso classes), each sorted, listed by least object"""
        if self._components is None:
            union_find = UnionFind()
            objects = list(self.objects())
            for x in objects:
                union_find[x]
            for x in objects:
                for y in objects:
                    if union_find[x] != union_find[y] and self.hom(x, y):
                        union_find.union(x, y)
            classes = canonical_classes(union_find, objects)
            grouped: Dict[Hashable, List[Hashable]] = {}
            for x in objects:
                grouped.setdefault(classes[x], []).append(x)
            self._components = sorted((tuple(sorted(c, key=sort_key)) for c in grouped.values()),
                                      key=lambda c: sort_key(c[0]))
            for comp in self._components:
                for x in comp:
                    self._rep_of[x] = comp[0]
        return self._components

    def representative(self, x: Hashable) -> Hashable:
        if x not in self._rep_of:
            self.components()
        return self._rep_of[x]

    def transport(self, x: Hashable) -> Arrow:
        """A fixed arrow from the representative of x's component to x"""
        if x not in self._transport_cache:
            rep = self.representative(x)
            self._transport_cache[x] = self.identity(x) if rep == x else self.hom(rep, x)[0]
        return self._transport_cache[x]

    def aut_group(self, x: Hashable) -> AutomorphismGroup:
        if x not in self._aut_cache:
            arrows = self.hom(x, x)
            group = FiniteGroup.from_operation(arrows, self.compose, self.identity(x),
                                               name=f"Aut({x})", check=False)
            self._aut_cache[x] = AutomorphismGroup(x, tuple(arrows), group)
        return self._aut_cache[x]

    def is_isomorphic(self, x: Hashable, y: Hashable) -> bool:
        return bool(self.hom(x, y))

    def arrow_count(self) -> int:
        return sum(1 for _ in self.arrows())

    def check_axioms(self) -> Tuple[bool, Optional[str]]:
        """Exhaustive category axioms plus invertibility"""
        objects = list(self.objects())
        for x in objects:
            ident = self.identity(x)
            if ident.source != x or ident.target != x or ident not in self.hom(x, x):
                return False, f"identity at {x} malformed"
        for x in objects:
            for y in objects:
                for f in self.hom(x, y):
                    if f.source != x or f.target != y:
                        return False, f"{f} listed in hom({x}, {y})"
                    if self.compose(f, self.identity(x)) != f or self.compose(self.identity(y), f) != f:
                        return False, f"unit law fails for {f}"
                    f_inv = self.inverse(f)
                    if self.compose(f_inv, f) != self.identity(x) or self.compose(f, f_inv) != self.identity(y):
                        return False, f"{f} has no inverse"
                    for z in objects:
                        for g in self.hom(y, z):
                            gf = self.compose(g, f)
                            if gf not in self.hom(x, z):
                                return False, f"composite {gf} escapes hom({x}, {z})"
                            for w in objects:
                                for h in self.hom(z, w):
                                    if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                                        return False, f"associativity fails on {h}, {g}, {f}"
        return True, None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"

# ==================== CONCRETE GROUPOIDS ====================

class GroupGroupoid(FiniteGroupoid):
    """Disjoint union of one-object groupoids; arrow data is the element index"""

    def __init__(self, groups: Mapping[Hashable, FiniteGroup], name: str = ""):
        super().__init__(name or "groups")
        self.groups = dict(groups)
        self._objects = tuple(sorted(self.groups, key=sort_key))
        for x, group in self.groups.items():
            arrows = tuple(Arrow(x, x, i) for i in range(group.order))
            self._aut_cache[x] = AutomorphismGroup(x, arrows, group)

    def objects(self):
        return self._objects

    def hom(self, x, y):
        if x != y or x not in self.groups:
            return ()
        return self._aut_cache[x].arrows

    def compose(self, g, f):
        self._require_composable(g, f)
        return Arrow(f.source, g.target, self.groups[f.source].multiply(g.data, f.data))

    def identity(self, x):
        return Arrow(x, x, self.groups[x].identity)

    def inverse(self, f):
        return Arrow(f.target, f.source, self.groups[f.source].inverse(f.data))

    def components(self):
        if self._components is None:
            self._components = [(x,) for x in self._objects]
            self._rep_of = {x: x for x in self._objects}
        return self._components


def group_as_groupoid(group: FiniteGroup, obj: Hashable = '*') -> GroupGroupoid:
    return GroupGroupoid({obj: group}, name=group.name)


class TableGroupoid(FiniteGroupoid):
    """
    A groupoid given by explicit tables.

    Args:
        objects: object labels
        arrows: (label, source, target) triples
        composition: (g_label, f_label) -> label of g o f
        identities: object -> identity label
    """

    def __init__(self, objects: Sequence[Hashable], arrows: Sequence[Tuple[Hashable, Hashable, Hashable]],
                 composition: Mapping[Tuple[Hashable, Hashable], Hashable], identities: Mapping[Hashable, Hashable],
                 name: str = ""):
        super().__init__(name or "table")
        self._objects = tuple(objects)
        self._arrows = {label: Arrow(src, dst, label) for label, src, dst in arrows}
        self._hom: Dict[Tuple[Hashable, Hashable], List[Arrow]] = {}
        for arrow in self._arrows.values():
            self._hom.setdefault((arrow.source, arrow.target), []).append(arrow)
        self._composition = dict(composition)
        self._identities = dict(identities)
        self._inverses: Dict[Hashable, Hashable] = {}
        for arrow in self._arrows.values():
            for candidate in self._hom.get((arrow.target, arrow.source), []):
                if self._composition.get((candidate.data, arrow.data)) == self._identities[arrow.source]:
                    self._inverses[arrow.data] = candidate.data
                    break
            else:
                raise GroupoidError(handle_error('invalid_groupoid', f"arrow {arrow.data} is not invertible"))

    def objects(self):
        return self._objects

    def hom(self, x, y):
        return tuple(self._hom.get((x, y), ()))

    def compose(self, g, f):
        self._require_composable(g, f)
        try:
            return self._arrows[self._composition[(g.data, f.data)]]
        except KeyError:
            raise GroupoidError(handle_error('invalid_groupoid', f"composition of {g.data} and {f.data} missing"))

    def identity(self, x):
        return self._arrows[self._identities[x]]

    def inverse(self, f):
        return self._arrows[self._inverses[f.data]]


class SemidirectGroupoid(FiniteGroupoid):
    """
    G semidirect C: arrows c -> c' are pairs (g, f) with f: g.c -> c' in C.

    Composition (h, f') o (g, f) = (hg, f' o h(f)).
    """

    def __init__(self, group: FiniteGroup, inner: FiniteGroupoid,
                 act_object: Callable[[int, Hashable], Hashable],
                 act_arrow: Callable[[int, Arrow], Arrow], check: bool = True, name: str = ""):
        super().__init__(name or f"{group.name} x| {inner.name}")
        self.group = group
        self.inner = inner
        self.act_object = act_object
        self.act_arrow = act_arrow
        if check:
            ok, witness = self.check_action()
            if not ok:
                raise GroupoidError(handle_error('invalid_action', witness))

    def check_action(self) -> Tuple[bool, Optional[str]]:
        group, inner = self.group, self.inner
        objects = inner.objects()
        for c in objects:
            if self.act_object(group.identity, c) != c:
                return False, f"identity moves {c}"
            for g in range(group.order):
                gc = self.act_object(g, c)
                if gc not in objects:
                    return False, f"{g}.{c} is not an object"
                if self.act_arrow(g, inner.identity(c)) != inner.identity(gc):
                    return False, f"{g} does not preserve the identity of {c}"
                for h in range(group.order):
                    if self.act_object(group.multiply(g, h), c) != self.act_object(g, self.act_object(h, c)):
                        return False, f"group law fails at {g}, {h} on {c}"
        for f in inner.arrows():
            for g in range(group.order):
                gf = self.act_arrow(g, f)
                if gf.source != self.act_object(g, f.source) or gf.target != self.act_object(g, f.target):
                    return False, f"{g}.{f} has wrong endpoints"
                for h in range(group.order):
                    if self.act_arrow(group.multiply(g, h), f) != self.act_arrow(g, self.act_arrow(h, f)):
                        return False, f"group law fails at {g}, {h} on {f}"
                for k in inner.arrows_from(f.target):
                    if self.act_arrow(g, inner.compose(k, f)) != inner.compose(self.act_arrow(g, k), gf):
                        return False, f"{g} is not functorial on {k} o {f}"
        return True, None

    def objects(self):
        return self.inner.objects()

    def hom(self, x, y):
        return tuple(Arrow(x, y, (g, f))
                     for g in range(self.group.order)
                     for f in self.inner.hom(self.act_object(g, x), y))

    def compose(self, second, first):
        self._require_composable(second, first)
        h, f_after = second.data
        g, f = first.data
        return Arrow(first.source, second.target,
                     (self.group.multiply(h, g), self.inner.compose(f_after, self.act_arrow(h, f))))

    def identity(self, x):
        return Arrow(x, x, (self.group.identity, self.inner.identity(x)))

    def inverse(self, f):
        g, inner_arrow = f.data
        g_inv = self.group.inverse(g)
        return Arrow(f.target, f.source, (g_inv, self.inner.inverse(self.act_arrow(g_inv, inner_arrow))))


def semidirect_groupoid(group: FiniteGroup, inner: FiniteGroupoid,
                        act_object: Callable[[int, Hashable], Hashable],
                        act_arrow: Callable[[int, Arrow], Arrow]) -> SemidirectGroupoid:
    return SemidirectGroupoid(group, inner, act_object, act_arrow)


class WreathGroupoid(FiniteGroupoid):
    """Sigma_n wreath C: an arrow (c_i) -> (d_i) is (sigma, (f_i)) with f_i: c_i -> d_sigma(i)"""

    def __init__(self, inner: FiniteGroupoid, n: int, name: str = ""):
        super().__init__(name or f"S{n} wr {inner.name}")
        if n < 0:
            raise GroupoidError(handle_error('invalid_groupoid', f"negative wreath power {n}"))
        self.inner = inner
        self.n = n
        self._objects = tuple(itertools.product(inner.objects(), repeat=n))

    def objects(self):
        return self._objects

    def hom(self, x, y):
        result = []
        for sigma in all_permutations(self.n):
            choices = [self.inner.hom(x[i], y[sigma[i]]) for i in range(self.n)]
            for combo in itertools.product(*choices):
                result.append(Arrow(x, y, (sigma, tuple(combo))))
        return tuple(result)

    def compose(self, second, first):
        self._require_composable(second, first)
        tau, gs = second.data
        sigma, fs = first.data
        return Arrow(first.source, second.target,
                     (compose_perm(tau, sigma),
                      tuple(self.inner.compose(gs[sigma[i]], fs[i]) for i in range(self.n))))

    def identity(self, x):
        return Arrow(x, x, (identity_perm(self.n), tuple(self.inner.identity(c) for c in x)))

    def inverse(self, f):
        sigma, fs = f.data
        sigma_inv = inverse_perm(sigma)
        return Arrow(f.target, f.source,
                     (sigma_inv, tuple(self.inner.inverse(fs[sigma_inv[j]]) for j in range(self.n))))


def wreath_groupoid(inner: FiniteGroupoid, n: int) -> WreathGroupoid:
    return WreathGroupoid(inner, n)


class ProductGroupoid(FiniteGroupoid):
    def __init__(self, first: FiniteGroupoid, second: FiniteGroupoid, name: str = ""):
        super().__init__(name or f"{first.name} x {second.name}")
        self.first = first
        self.second = second
        self._objects = tuple(itertools.product(first.objects(), second.objects()))

    def objects(self):
        return self._objects

    def hom(self, x, y):
        return tuple(Arrow(x, y, (f, g))
                     for f in self.first.hom(x[0], y[0])
                     for g in self.second.hom(x[1], y[1]))

    def compose(self, second, first):
        self._require_composable(second, first)
        return Arrow(first.source, second.target,
                     (self.first.compose(second.data[0], first.data[0]),
                      self.second.compose(second.data[1], first.data[1])))

    def identity(self, x):
        return Arrow(x, x, (self.first.identity(x[0]), self.second.identity(x[1])))

    def inverse(self, f):
        return Arrow(f.target, f.source, (self.first.inverse(f.data[0]), self.second.inverse(f.data[1])))

# ==================== FUNCTORS ====================

class GroupoidFunctor:
    """A functor given by an object map and an arrow map"""

    def __init__(self, source: FiniteGroupoid, target: FiniteGroupoid,
                 object_map: Callable[[Hashable], Hashable], arrow_map: Callable[[Arrow], Arrow], name: str = ""):
        self.source = source
        self.target = target
        self.object_map = object_map
        self.arrow_map = arrow_map
        self.name = name or "functor"

    def obj(self, x: Hashable) -> Hashable:
        return self.object_map(x)

    def arrow(self, f: Arrow) -> Arrow:
        return self.arrow_map(f)

    def check(self) -> Tuple[bool, Optional[str]]:
        """Identities, endpoints and composition, exhaustively"""
        src, dst = self.source, self.target
        for x in src.objects():
            if self.arrow(src.identity(x)) != dst.identity(self.obj(x)):
                return False, f"identity at {x} not preserved"
        for f in src.arrows():
            image = self.arrow(f)
            if image.source != self.obj(f.source) or image.target != self.obj(f.target):
                return False, f"{f} mapped to {image} with wrong endpoints"
            for g in src.arrows_from(f.target):
                if self.arrow(src.compose(g, f)) != dst.compose(self.arrow(g), image):
                    return False, f"composition {g} o {f} not preserved"
        return True, None


def group_homomorphism_functor(source: GroupGroupoid, target: GroupGroupoid, phi: Sequence[int],
                               obj_source: Hashable = '*', obj_target: Hashable = '*') -> GroupoidFunctor:
    """One-object functor induced by a homomorphism given as an index map"""
    return GroupoidFunctor(source, target, lambda x: obj_target,
                           lambda f: Arrow(obj_target, obj_target, int(phi[f.data])), name="hom")

# ==================== SET-VALUED FUNCTORS ====================

class SetValuedFunctor:
    """
    A functor from a finite groupoid to finite sets.

    Args:
        base: the groupoid
        values: mapping or callable object -> iterable of hashable elements
        action: callable (arrow, element) -> element
    """

    def __init__(self, base: FiniteGroupoid, values: Union[Mapping[Hashable, Iterable[Hashable]], Callable],
                 action: Callable[[Arrow, Hashable], Hashable], name: str = ""):
        self.base = base
        self._values_source = values
        self._action = action
        self._values: Dict[Hashable, Tuple[Hashable, ...]] = {}
        self.name = name or "functor"

    def value(self, x: Hashable) -> Tuple[Hashable, ...]:
        if x not in self._values:
            if callable(self._values_source):
                raw = self._values_source(x)
            else:
                raw = self._values_source.get(x, ())
            self._values[x] = tuple(sorted(set(raw), key=sort_key))
        return self._values[x]

    def act(self, f: Arrow, element: Hashable) -> Hashable:
        return self._action(f, element)

    def total_size(self) -> int:
        return sum(len(self.value(x)) for x in self.base.objects())

    def check_functoriality(self) -> Tuple[bool, Optional[str]]:
        base = self.base
        for x in base.objects():
            ident = base.identity(x)
            for a in self.value(x):
                if self.act(ident, a) != a:
                    return False, f"identity at {x} moves {a}"
        for f in base.arrows():
            targets = set(self.value(f.target))
            images = [self.act(f, a) for a in self.value(f.source)]
            if not set(images) <= targets:
                return False, f"{f} leaves the value set"
            if len(set(images)) != len(images) or len(images) != len(targets):
                return False, f"{f} does not act bijectively"
            for g in base.arrows_from(f.target):
                gf = base.compose(g, f)
                for a in self.value(f.source):
                    if self.act(gf, a) != self.act(g, self.act(f, a)):
                        return False, f"composition {g} o {f} not respected on {a}"
        return True, None


class NaturalTransformation:
    """Components object -> {element: element}"""

    def __init__(self, source: SetValuedFunctor, target: SetValuedFunctor,
                 components: Union[Mapping[Hashable, Mapping[Hashable, Hashable]], Callable], name: str = ""):
        self.source = source
        self.target = target
        self._components_source = components
        self._components: Dict[Hashable, Dict[Hashable, Hashable]] = {}
        self.name = name or "map"

    def component(self, x: Hashable) -> Dict[Hashable, Hashable]:
        if x not in self._components:
            if callable(self._components_source):
                self._components[x] = dict(self._components_source(x))
            else:
                self._components[x] = dict(self._components_source.get(x, {}))
        return self._components[x]

    def apply(self, x: Hashable, element: Hashable) -> Hashable:
        return self.component(x)[element]

    def key(self) -> Tuple:
        return tuple((x, tuple(sorted(self.component(x).items(), key=lambda kv: sort_key(kv[0]))))
                     for x in self.source.base.objects())

    def check_naturality(self) -> Tuple[bool, Optional[str]]:
        base = self.source.base
        for x in base.objects():
            component = self.component(x)
            targets = set(self.target.value(x))
            for a in self.source.value(x):
                if a not in component or component[a] not in targets:
                    return False, f"component at {x} undefined or out of range on {a}"
        for f in base.arrows():
            for a in self.source.value(f.source):
                lhs = self.apply(f.target, self.source.act(f, a))
                rhs = self.target.act(f, self.apply(f.source, a))
                if lhs != rhs:
                    return False, f"naturality square for {f} fails on {a}"
        return True, None


def _orbit_arrows(base: FiniteGroupoid, functor: SetValuedFunctor, rep: Hashable):
    """Orbits of Aut(rep) on functor(rep): list of (orbit rep, {member: arrow}, stabilizer arrows)"""
    autos = base.aut_group(rep).arrows
    seen = set()
    orbits = []
    for a in functor.value(rep):
        if a in seen:
            continue
        members: Dict[Hashable, Arrow] = {}
        stabilizer = []
        for h in autos:
            image = functor.act(h, a)
            members.setdefault(image, h)
            if image == a:
                stabilizer.append(h)
        seen.update(members)
        orbits.append((a, members, stabilizer))
    return orbits


def orbit_plan(source: SetValuedFunctor, target: SetValuedFunctor):
    """Per orbit of the source: (component, {member: arrow from the representative}, admissible images)"""
    base = source.base
    plan = []
    for comp in base.components():
        rep = comp[0]
        for a, members, stabilizer in _orbit_arrows(base, source, rep):
            candidates = [y for y in target.value(rep) if all(target.act(h, y) == y for h in stabilizer)]
            plan.append((comp, members, candidates))
    return plan


def count_natural_transformations(source: SetValuedFunctor, target: SetValuedFunctor) -> int:
    count = 1
    for _, _, candidates in orbit_plan(source, target):
        count *= len(candidates)
        if count == 0:
            return 0
    return count


def hom_set(source: SetValuedFunctor, target: SetValuedFunctor) -> Iterator[NaturalTransformation]:
    """All natural transformations, one choice per orbit representative"""
    if source.base is not target.base:
        raise GroupoidError(handle_error('invalid_groupoid', 'functors live on different groupoids'))
    base = source.base
    plan = orbit_plan(source, target)
    for choice in itertools.product(*(candidates for _, _, candidates in plan)):
        at_rep: Dict[Hashable, Dict[Hashable, Hashable]] = {}
        for (comp, members, _), y in zip(plan, choice):
            rep_map = at_rep.setdefault(comp[0], {})
            for member, h in members.items():
                rep_map[member] = target.act(h, y)
        components: Dict[Hashable, Dict[Hashable, Hashable]] = {}
        for comp in base.components():
            rep_map = at_rep.get(comp[0], {})
            for z in comp:
                t = base.transport(z)
                components[z] = {source.act(t, a): target.act(t, b) for a, b in rep_map.items()}
        yield NaturalTransformation(source, target, components)

# ==================== ORBITS & KAN EXTENSION ====================

def induced_orbits(elements: Iterable[Hashable], moves: Iterable[Callable[[Hashable], Hashable]]) -> List[Tuple[Hashable, ...]]:
    """Orbits of the equivalence generated by the moves, each sorted, listed canonically"""
    elements = list(elements)
    union_find = UnionFind()
    for e in elements:
        union_find[e]
    for move in moves:
        for e in elements:
            union_find.union(e, move(e))
    classes = canonical_classes(union_find, elements)
    grouped: Dict[Hashable, List[Hashable]] = {}
    for e in elements:
        grouped.setdefault(classes[e], []).append(e)
    return sorted((tuple(sorted(g, key=sort_key)) for g in grouped.values()), key=lambda o: sort_key(o[0]))


class KanExtension(SetValuedFunctor):
    """
    Lan_k X as a coend: elements (g, a: k(g) -> gbar, x in X(g)) modulo
    (g', a', X(f)x) ~ (g, a' o k(f), x); classes named by their least member.
    """

    def __init__(self, functor: GroupoidFunctor, inner: SetValuedFunctor, name: str = ""):
        self.functor = functor
        self.inner = inner
        self._tables: Dict[Hashable, Dict[Hashable, Hashable]] = {}
        super().__init__(functor.target, self._class_names, self._act, name=name or f"Lan {inner.name}")

    def _generators(self):
        src = self.functor.source
        for comp in src.components():
            rep = comp[0]
            yield from src.aut_group(rep).arrows
            for z in comp[1:]:
                yield src.transport(z)

    def _table(self, gbar: Hashable) -> Dict[Hashable, Hashable]:
        if gbar not in self._tables:
            src, tgt, k = self.functor.source, self.functor.target, self.functor
            elements = []
            for g in src.objects():
                for a in tgt.hom(k.obj(g), gbar):
                    for x in self.inner.value(g):
                        elements.append((g, a, x))
            union_find = UnionFind()
            for e in elements:
                union_find[e]
            for f in self._generators():
                kf = k.arrow(f)
                for a_after in tgt.hom(k.obj(f.target), gbar):
                    for x in self.inner.value(f.source):
                        union_find.union((f.target, a_after, self.inner.act(f, x)),
                                         (f.source, tgt.compose(a_after, kf), x))
            self._tables[gbar] = canonical_classes(union_find, elements)
        return self._tables[gbar]

    def _class_names(self, gbar: Hashable):
        return set(self._table(gbar).values())

    def _act(self, b: Arrow, element: Hashable) -> Hashable:
        g, a, x = element
        return self._table(b.target)[(g, self.functor.target.compose(b, a), x)]

    def section(self, gbar: Hashable) -> Dict[Hashable, Hashable]:
        """Every coend pair at gbar with the name of its class"""
        return dict(self._table(gbar))


def lan_along(functor: GroupoidFunctor, inner: SetValuedFunctor) -> KanExtension:
    return KanExtension(functor, inner)


def lan_by_induction(functor: GroupoidFunctor, inner: SetValuedFunctor, gbar: Hashable) -> List[Tuple]:
    """
    Lan_k X(gbar) as the disjoint union over components [g] of the source of
    hom(k g, gbar) x_{Aut g} X(g); returns the list of orbits.
    """
    src, tgt = functor.source, functor.target
    orbits: List[Tuple] = []
    for comp in src.components():
        g = comp[0]
        homs = tgt.hom(functor.obj(g), gbar)
        if not homs:
            continue
        pairs = [(a, x) for a in homs for x in inner.value(g)]

        def move(pair, h):
            a, x = pair
            return (tgt.compose(a, functor.arrow(src.inverse(h))), inner.act(h, x))

        autos = src.aut_group(g).arrows
        orbits.extend((g,) + orbit for orbit in induced_orbits(
            pairs, [lambda pair, h=h: move(pair, h) for h in autos]))
    return orbits


# ==================== GROUPOID FAMILIES ====================

class GroupoidFamily:
    """
    Subgroups of the automorphism groups of a groupoid, stored as arrow sets.

    Membership is given either explicitly per object or by a predicate (x, arrows) -> bool.
    """

    def __init__(self, base: FiniteGroupoid,
                 predicate: Optional[Callable[[Hashable, FrozenSet[Arrow]], bool]] = None,
                 members: Optional[Mapping[Hashable, Iterable[Iterable[Arrow]]]] = None, name: str = ""):
        if (predicate is None) == (members is None):
            raise GroupoidError(handle_error('invalid_groupoid', 'give exactly one of predicate or members'))
        self.base = base
        self.name = name or "family"
        self._predicate = predicate
        self._explicit = None
        if members is not None:
            self._explicit = {x: {frozenset(s) for s in sets} for x, sets in members.items()}
        self._cache: Dict[Hashable, List[FrozenSet[Arrow]]] = {}

    def contains(self, x: Hashable, arrows: Iterable[Arrow]) -> bool:
        arrows = frozenset(arrows)
        if self._explicit is not None:
            return arrows in self._explicit.get(x, set())
        return bool(self._predicate(x, arrows))

    def member_arrow_sets(self, x: Hashable) -> List[FrozenSet[Arrow]]:
        if x not in self._cache:
            aut = self.base.aut_group(x)
            self._cache[x] = [aut.arrows_of(s) for s in aut.group.subgroups()
                              if self.contains(x, aut.arrows_of(s))]
        return self._cache[x]

    def members(self, x: Hashable) -> List[Subgroup]:
        aut = self.base.aut_group(x)
        return [aut.subgroup(arrows) for arrows in self.member_arrow_sets(x)]


def validate_groupoid_family(family: GroupoidFamily) -> Tuple[bool, Optional[FamilyWitness]]:
    """Closure under subgroups and under conjugation by every arrow x -> y"""
    base = family.base
    for x in base.objects():
        aut = base.aut_group(x)
        for arrows in family.member_arrow_sets(x):
            sub = aut.subgroup(arrows)
            for smaller in sub.subgroups():
                smaller_arrows = aut.arrows_of(smaller)
                if not family.contains(x, smaller_arrows):
                    return False, FamilyWitness(x, arrows, smaller_arrows, "not closed under subgroups")
            for y in base.objects():
                for f in base.hom(x, y):
                    f_inv = base.inverse(f)
                    conj = frozenset(base.compose(base.compose(f, h), f_inv) for h in arrows)
                    if not family.contains(y, conj):
                        return False, FamilyWitness(y, arrows, conj, "not closed under conjugation", conjugator=f)
    return True, None


def all_groupoid_family(base: FiniteGroupoid) -> GroupoidFamily:
    return GroupoidFamily(base, predicate=lambda x, arrows: True, name="all")


def trivial_groupoid_family(base: FiniteGroupoid) -> GroupoidFamily:
    return GroupoidFamily(base, predicate=lambda x, arrows: len(arrows) == 1, name="trivial")


def pullback_groupoid_family(functor: GroupoidFunctor, family: GroupoidFamily) -> GroupoidFamily:
    """(phi* F)_x = {H <= Aut(x) : phi(H) in F_phi(x)}"""
    return GroupoidFamily(
        functor.source,
        predicate=lambda x, arrows: family.contains(functor.obj(x), frozenset(functor.arrow(h) for h in arrows)),
        name=f"pullback of {family.name}")


def meet_groupoid_families(first: GroupoidFamily, second: GroupoidFamily) -> GroupoidFamily:
    """F meet F' on the product groupoid: both projections lie in the families"""
    base = ProductGroupoid(first.base, second.base)

    def predicate(x, arrows):
        return (first.contains(x[0], frozenset(k.data[0] for k in arrows))
                and second.contains(x[1], frozenset(k.data[1] for k in arrows)))

    return GroupoidFamily(base, predicate=predicate, name=f"{first.name} meet {second.name}")


def wreath_power_family(family: GroupoidFamily, n: int) -> GroupoidFamily:
    """F^n on Sigma_n wr G: for each i, the i-th projection of the part of H fixing i is in F"""
    base = WreathGroupoid(family.base, n)

    def predicate(x, arrows):
        for i in range(n):
            projection = frozenset(h.data[1][i] for h in arrows if h.data[0][i] == i)
            if not family.contains(x[i], projection):
                return False
        return True

    return GroupoidFamily(base, predicate=predicate, name=f"{family.name}^{n}")


def wreath_functor(functor: GroupoidFunctor, n: int) -> GroupoidFunctor:
    """Sigma_n wr phi"""
    source, target = WreathGroupoid(functor.source, n), WreathGroupoid(functor.target, n)
    return GroupoidFunctor(
        source, target,
        lambda x: tuple(functor.obj(c) for c in x),
        lambda f: Arrow(tuple(functor.obj(c) for c in f.source), tuple(functor.obj(c) for c in f.target),
                        (f.data[0], tuple(functor.arrow(a) for a in f.data[1]))),
        name=f"S{n} wr {functor.name}")


def block_inclusion(inner: FiniteGroupoid, n: int, m: int) -> GroupoidFunctor:
    """(Sigma_n wr G) x (Sigma_m wr G) -> Sigma_(n+m) wr G by concatenation"""
    source = ProductGroupoid(WreathGroupoid(inner, n), WreathGroupoid(inner, m))
    target = WreathGroupoid(inner, n + m)

    def arrow_map(f):
        left, right = f.data
        return Arrow(f.source[0] + f.source[1], f.target[0] + f.target[1],
                     (block_sum(left.data[0], right.data[0]), left.data[1] + right.data[1]))

    return GroupoidFunctor(source, target, lambda x: x[0] + x[1], arrow_map, name=f"block {n}+{m}")


def check_block_inclusion(family: GroupoidFamily, n: int, m: int) -> Tuple[bool, Optional[FamilyWitness]]:
    """Every subgroup of F^n meet F^m lands in F^(n+m) under the block inclusion"""
    meet = meet_groupoid_families(wreath_power_family(family, n), wreath_power_family(family, m))
    iota = block_inclusion(family.base, n, m)
    big = wreath_power_family(family, n + m)
    for x in meet.base.objects():
        for arrows in meet.member_arrow_sets(x):
            image = frozenset(iota.arrow(k) for k in arrows)
            if not big.contains(iota.obj(x), image):
                return False, FamilyWitness(x, arrows, image, "block inclusion leaves the wreath family")
    return True, None


def check_wreath_pullback(functor: GroupoidFunctor, family: GroupoidFamily, n: int) -> Tuple[bool, Optional[str]]:
    """(Sigma_n wr phi)* (F^n) == (phi* F)^n objectwise"""
    lhs = pullback_groupoid_family(wreath_functor(functor, n), wreath_power_family(family, n))
    rhs = wreath_power_family(pullback_groupoid_family(functor, family), n)
    for x in lhs.base.objects():
        aut = lhs.base.aut_group(x)
        for sub in aut.group.subgroups():
            arrows = aut.arrows_of(sub)
            if lhs.contains(x, arrows) != rhs.contains(x, arrows):
                return False, f"membership differs at {x} for {sorted(sub.members)}"
    return True, None

# ==================== (G, SIGMA)-FAMILY BRIDGE ====================

def gsigma_groupoid(group: FiniteGroup, arities: Iterable[int]) -> GroupGroupoid:
    """The groupoid with objects n and Aut(n) = G x Sigma_n^op"""
    return GroupGroupoid({n: group.gsigma(n) for n in arities}, name=f"{group.name} x Sigma^op")


def family_as_groupoid_family(family: GSigmaFamily, base: Optional[GroupGroupoid] = None) -> GroupoidFamily:
    base = base or gsigma_groupoid(family.group, family.arities)
    return GroupoidFamily(base, predicate=lambda n, arrows: family.contains(n, frozenset(a.data for a in arrows)),
                          name=family.name)


def meet_family(first: GSigmaFamily, second: GSigmaFamily) -> GroupoidFamily:
    """F meet F' on the product of the two (G, Sigma) groupoids"""
    return meet_groupoid_families(family_as_groupoid_family(first), family_as_groupoid_family(second))


def group_family(group: FiniteGroup, subgroups: Iterable[Union[Subgroup, Iterable[int]]], obj: Hashable = '*',
                 close: bool = True) -> GroupoidFamily:
    """A family on a one-object groupoid, optionally closed under subgroups and conjugation"""
    base = group_as_groupoid(group, obj)
    sets = {s.members if isinstance(s, Subgroup) else frozenset(s) for s in subgroups}
    if close:
        sets = {group.conjugate_set(x, sub.members)
                for members in sets for sub in Subgroup(group, members).subgroups() for x in range(group.order)}
    aut = base.aut_group(obj)
    return GroupoidFamily(base, members={obj: [frozenset(aut.arrows[i] for i in m) for m in sets]})
