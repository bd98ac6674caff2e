"""
(G, Sigma)-Families for the Equivariant Operad Workbench
Per-arity collections of subgroups of G x Sigma_n^op: graph subgroups, validation,
pullback along homomorphisms and the bridge to groupoid families.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .groups import FiniteGroup, Subgroup, inverse, compose, gsigma_map, is_homomorphism
from ..utils.helpers import AlgebraError, handle_error

logger = logging.getLogger(__name__)

MemberSet = FrozenSet[int]

# ==================== WITNESSES ====================

@dataclass(frozen=True)
class FamilyWitness:
    """A closure violation: H is in the family but `offender` is not"""
    position: object
    subgroup: FrozenSet
    offender: FrozenSet
    reason: str
    conjugator: Optional[object] = None

    def describe(self) -> str:
        text = f"at {self.position}: {self.reason}; H={sorted(self.subgroup, key=repr)} missing {sorted(self.offender, key=repr)}"
        if self.conjugator is not None:
            text += f" (conjugator {self.conjugator})"
        return text

# ==================== GSIGMA FAMILY ====================

class GSigmaFamily:
    """
    A (G, Sigma)-family over a declared finite arity range.

    Args:
        group: the group G
        per_arity: arity -> iterable of subgroups of G x Sigma_n^op (Subgroup or member sets)
        close: close the generating sets under subgroups and conjugation
    """

    def __init__(self, group: FiniteGroup, per_arity: Mapping[int, Iterable[Union[Subgroup, Iterable[int]]]],
                 name: str = "", close: bool = False):
        self.group = group
        self.name = name or "family"
        self._members: Dict[int, FrozenSet[MemberSet]] = {}
        for n, subgroups in per_arity.items():
            parent = group.gsigma(int(n))
            sets = set()
            for sub in subgroups:
                members = sub.members if isinstance(sub, Subgroup) else frozenset(int(m) for m in sub)
                if not parent.is_subgroup_set(members):
                    raise AlgebraError(handle_error('invalid_group', f"arity {n}: {sorted(members)} is not a subgroup"))
                sets.add(members)
            if close:
                sets = _close(parent, sets)
            self._members[int(n)] = frozenset(sets)

    @property
    def arities(self) -> List[int]:
        return sorted(self._members)

    def subgroups(self, n: int) -> List[Subgroup]:
        parent = self.group.gsigma(n)
        return sorted((Subgroup(parent, m) for m in self._members.get(n, ())), key=lambda s: s.sort_key)

    def member_sets(self, n: int) -> FrozenSet[MemberSet]:
        return self._members.get(n, frozenset())

    def contains(self, n: int, subgroup: Union[Subgroup, Iterable[int]]) -> bool:
        members = subgroup.members if isinstance(subgroup, Subgroup) else frozenset(subgroup)
        return members in self._members.get(n, frozenset())

    def __le__(self, other: "GSigmaFamily") -> bool:
        return all(self.member_sets(n) <= other.member_sets(n) for n in self.arities)

    def counts(self) -> Dict[int, int]:
        return {n: len(self._members[n]) for n in self.arities}

    def with_arity(self, n: int, subgroups: Iterable[Union[Subgroup, Iterable[int]]]) -> "GSigmaFamily":
        """Copy with arity n replaced (no closure applied)"""
        per_arity: Dict[int, Iterable] = {k: self._members[k] for k in self.arities}
        per_arity[n] = list(subgroups)
        return GSigmaFamily(self.group, per_arity, name=f"{self.name}'")

    def __repr__(self) -> str:
        return f"GSigmaFamily({self.name}, counts={self.counts()})"


def _close(parent: FiniteGroup, sets: Iterable[MemberSet]) -> set:
    closed = set()
    by_members = {s.members: s for s in parent.subgroups()}
    for members in sets:
        for sub in by_members[members].subgroups():
            for x in range(parent.order):
                closed.add(parent.conjugate_set(x, sub.members))
    return closed

# ==================== CONSTRUCTORS ====================

def all_family(group: FiniteGroup, arities: Iterable[int]) -> GSigmaFamily:
    return GSigmaFamily(group, {n: group.gsigma(n).subgroups() for n in arities}, name="all")

def trivial_family(group: FiniteGroup, arities: Iterable[int]) -> GSigmaFamily:
    return GSigmaFamily(group, {n: [group.gsigma(n).trivial_subgroup()] for n in arities}, name="trivial")

def enumerate_graph_subgroups(group: FiniteGroup, n: int) -> List[Subgroup]:
    """Subgroups of G x Sigma_n^op meeting {e} x Sigma_n^op trivially"""
    if n < 0:
        raise AlgebraError(handle_error('invalid_group', f"negative arity {n}"))
    parent = group.gsigma(n)
    sigma_part = {i for i, (g, _) in enumerate(parent.elements) if g == group.identity}
    graphs = [s for s in parent.subgroups() if not (s.members & sigma_part) - {parent.identity}]
    for gamma in graphs:
        graph_homomorphism(gamma)
    logger.debug(f"{group.name}, arity {n}: {len(graphs)} graph subgroups")
    return graphs

def graph_homomorphism(gamma: Subgroup) -> Tuple[FrozenSet[int], Dict[int, Tuple[int, ...]]]:
    """
    Recover (H, phi) with gamma = {(h, phi(h)^-1)}; raises if gamma is not a graph.

    Returns:
        H as a set of G indices and phi as h -> permutation in Sigma_n
    """
    parent = gamma.parent
    phi: Dict[int, Tuple[int, ...]] = {}
    for m in gamma.members:
        g, sigma = parent.elements[m]
        if g in phi:
            raise AlgebraError(handle_error('invalid_group', f"{gamma} is not a graph subgroup"))
        phi[g] = inverse(sigma)
    group_mul = _group_table_of(parent)
    for g, p in phi.items():
        for h, q in phi.items():
            if phi.get(int(group_mul[g, h])) != compose(p, q):
                raise AlgebraError(handle_error('not_homomorphism', f"graph of {gamma} is not multiplicative"))
    return frozenset(phi), phi

def _group_table_of(gsigma: FiniteGroup):
    # recover G's table from the (g, id) block of G x Sigma_n^op
    count = sum(1 for g, _ in gsigma.elements if g == gsigma.elements[0][0])
    return gsigma.mul[::count, ::count] // count

def graph_family(group: FiniteGroup, arities: Iterable[int]) -> GSigmaFamily:
    """The family of all graph subgroups over the arity range"""
    return GSigmaFamily(group, {n: enumerate_graph_subgroups(group, n) for n in arities}, name="graph")

# ==================== VALIDATION ====================

def validate_family(family: GSigmaFamily) -> Tuple[bool, Optional[FamilyWitness]]:
    """Closure under subgroups and conjugation, arity by arity"""
    for n in family.arities:
        parent = family.group.gsigma(n)
        members = family.member_sets(n)
        for sub in family.subgroups(n):
            for smaller in sub.subgroups():
                if smaller.members not in members:
                    return False, FamilyWitness(n, sub.members, smaller.members, "not closed under subgroups")
            for x in range(parent.order):
                conj = parent.conjugate_set(x, sub.members)
                if conj not in members:
                    return False, FamilyWitness(n, sub.members, conj, "not closed under conjugation",
                                                conjugator=parent.elements[x])
    return True, None

# ==================== PULLBACK ====================

def pullback_family(phi: Sequence[int], source: FiniteGroup, family: GSigmaFamily) -> GSigmaFamily:
    """(phi* F)_n = {H <= G x Sigma_n^op : (phi x id)(H) in F_n}"""
    if not is_homomorphism(source, family.group, phi):
        raise AlgebraError(handle_error('not_homomorphism', f"{list(phi)}: {source.name} -> {family.group.name}"))
    per_arity = {}
    for n in family.arities:
        index_map = gsigma_map(phi, source, family.group, n)
        per_arity[n] = [s for s in source.gsigma(n).subgroups()
                        if frozenset(index_map[m] for m in s.members) in family.member_sets(n)]
    return GSigmaFamily(source, per_arity, name=f"pullback of {family.name}")
