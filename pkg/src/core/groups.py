"""
Finite Groups for the Equivariant Operad Workbench
Explicit multiplication tables, permutations in one-line notation, subgroups as member
sets, and the groups G x Sigma_n^op acting on signatures.

Conventions:
- A permutation p is a tuple with p[i] the image of i; compose(p, q) = p o q.
- G x Sigma_n^op has elements (g, sigma) with (g, s) * (h, r) = (gh, r o s).
"""

import itertools
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.config import ENGINE_CONFIG
from ..utils.helpers import AlgebraError, InputError, handle_error

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]

# ==================== PERMUTATIONS ====================

def identity_perm(n: int) -> Permutation:
    return tuple(range(n))

def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """p o q, i.e. i -> p[q[i]]"""
    return tuple(p[i] for i in q)

def inverse(p: Sequence[int]) -> Permutation:
    result = [0] * len(p)
    for i, image in enumerate(p):
        result[image] = i
    return tuple(result)

@lru_cache(maxsize=None)
def all_permutations(n: int) -> Tuple[Permutation, ...]:
    """Sigma_n in lexicographic order"""
    return tuple(itertools.permutations(range(n)))

def block_sum(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """p (+) q acting on the first len(p) and the last len(q) points"""
    offset = len(p)
    return tuple(p) + tuple(offset + i for i in q)

# ==================== FINITE GROUP ====================

class FiniteGroup:
    """A finite group given by its multiplication table over indices 0..n-1"""

    def __init__(self, elements: Sequence[Hashable], mul, identity: int, name: str = "",
                 check: bool = True):
        self.elements = tuple(elements)
        self.mul = np.asarray(mul, dtype=np.int64)
        self.identity = int(identity)
        self.name = name or f"group of order {len(self.elements)}"
        self.index: Dict[Hashable, int] = {e: i for i, e in enumerate(self.elements)}
        self._gsigma_cache: Dict[int, "FiniteGroup"] = {}
        self._subgroups: Optional[List["Subgroup"]] = None
        if len(self.index) != len(self.elements):
            raise AlgebraError(handle_error('invalid_group', 'duplicate element labels'))
        if check:
            self._validate()
        # each row of a group table contains the identity exactly once
        self.inv = np.argmax(self.mul == self.identity, axis=1).astype(np.int64)
        if len(self.elements) > ENGINE_CONFIG['max_group_order']:
            logger.warning(f"{self.name} has order {len(self.elements)}; enumerations may be slow")

    def _validate(self):
        n = len(self.elements)
        mul = self.mul
        if mul.shape != (n, n):
            raise AlgebraError(handle_error('invalid_group', f"table shape {mul.shape} for {n} elements"))
        if n == 0 or mul.min() < 0 or mul.max() >= n:
            raise AlgebraError(handle_error('invalid_group', 'table entries out of range'))
        if not 0 <= self.identity < n:
            raise AlgebraError(handle_error('invalid_group', 'identity out of range'))
        e = self.identity
        if not (np.array_equal(mul[e], np.arange(n)) and np.array_equal(mul[:, e], np.arange(n))):
            raise AlgebraError(handle_error('invalid_group', 'identity is not two-sided'))
        # (ab)c == a(bc) for all triples: mul[mul[a,b], c] against mul[a, mul[b,c]]
        if not np.array_equal(mul[mul, :], mul[:, mul]):
            raise AlgebraError(handle_error('invalid_group', 'multiplication is not associative'))
        if not np.all((mul == e).sum(axis=1) == 1) or not np.all((mul == e).sum(axis=0) == 1):
            raise AlgebraError(handle_error('invalid_group', 'missing two-sided inverses'))

    @classmethod
    def from_operation(cls, elements: Sequence[Hashable], operation: Callable[[Hashable, Hashable], Hashable],
                       identity: Hashable, name: str = "", check: bool = True) -> "FiniteGroup":
        """Tabulate a group from a Python binary operation on hashable elements"""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        try:
            table = [[index[operation(a, b)] for b in elements] for a in elements]
        except KeyError as missing:
            raise AlgebraError(handle_error('invalid_group', f"operation leaves the element set: {missing}"))
        return cls(elements, table, index[identity], name=name, check=check)

    # ---------- basic queries ----------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name})"

    def multiply(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def product(self, factors: Iterable[int]) -> int:
        result = self.identity
        for factor in factors:
            result = int(self.mul[result, factor])
        return result

    def label(self, a: int) -> str:
        return str(self.elements[a])

    def closure(self, generators: Iterable[int]) -> FrozenSet[int]:
        """Subgroup generated by the given element indices (BFS on right multiplication)"""
        generators = [int(g) for g in generators]
        members = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in generators:
                    y = int(self.mul[x, g])
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    def conjugate_set(self, x: int, members: Iterable[int]) -> FrozenSet[int]:
        """x H x^-1"""
        x_inv = self.inv[x]
        return frozenset(int(self.mul[self.mul[x, h], x_inv]) for h in members)

    def is_subgroup_set(self, members: Iterable[int]) -> bool:
        members = frozenset(int(m) for m in members)
        if self.identity not in members:
            return False
        idx = np.fromiter(members, dtype=np.int64)
        products = self.mul[np.ix_(idx, idx)]
        return bool(np.isin(products, idx).all())

    def subgroup(self, generators: Iterable[int] = ()) -> "Subgroup":
        return Subgroup(self, self.closure(generators))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, frozenset({self.identity}))

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    def subgroups(self) -> List["Subgroup"]:
        if self._subgroups is None:
            self._subgroups = enumerate_subgroups(self)
        return self._subgroups

    # ---------- G x Sigma_n^op ----------

    def gsigma(self, n: int) -> "FiniteGroup":
        """G x Sigma_n^op; elements (g, sigma) ordered by g then lexicographic sigma"""
        if n not in self._gsigma_cache:
            perms = all_permutations(n)
            elements = [(g, p) for g in range(self.order) for p in perms]
            perm_index = {p: i for i, p in enumerate(perms)}
            count = len(perms)
            table = np.empty((len(elements), len(elements)), dtype=np.int64)
            for a, (g, s) in enumerate(elements):
                for b, (h, r) in enumerate(elements):
                    table[a, b] = int(self.mul[g, h]) * count + perm_index[compose(r, s)]
            self._gsigma_cache[n] = FiniteGroup(
                elements, table, self.identity * count, name=f"{self.name} x S{n}^op", check=False)
        return self._gsigma_cache[n]


def is_homomorphism(source: FiniteGroup, target: FiniteGroup, mapping: Sequence[int]) -> bool:
    """Vectorized check of f(ab) == f(a)f(b)"""
    m = np.asarray(mapping, dtype=np.int64)
    if m.shape != (source.order,) or m.min() < 0 or m.max() >= target.order:
        return False
    return bool(np.array_equal(target.mul[m[:, None], m[None, :]], m[source.mul]))


def gsigma_map(phi: Sequence[int], source: FiniteGroup, target: FiniteGroup, n: int) -> List[int]:
    """phi x id on G x Sigma_n^op as an index map"""
    src, dst = source.gsigma(n), target.gsigma(n)
    return [dst.index[(int(phi[g]), s)] for g, s in src.elements]

# ==================== SUBGROUPS ====================

@dataclass(frozen=True)
class Subgroup:
    """A subgroup stored as the set of member indices of its parent"""
    parent: FiniteGroup
    members: FrozenSet[int]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, element: int) -> bool:
        return element in self.members

    def __le__(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and self.members <= other.members

    @property
    def sorted_members(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.members), self.sorted_members)

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def conjugate(self, x: int) -> "Subgroup":
        return Subgroup(self.parent, self.parent.conjugate_set(x, self.members))

    def subgroups(self) -> List["Subgroup"]:
        """Subgroups of this subgroup, as subgroups of the parent"""
        return [s for s in self.parent.subgroups() if s.members <= self.members]

    def image(self, phi: Sequence[int], target: FiniteGroup) -> "Subgroup":
        return Subgroup(target, frozenset(int(phi[m]) for m in self.members))

    def labels(self) -> List[str]:
        return [self.parent.label(m) for m in self.sorted_members]

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={list(self.sorted_members)})"


def enumerate_subgroups(group: FiniteGroup) -> List[Subgroup]:
    """
    Every subgroup exactly once, ordered by size then sorted member list.

    Subgroups are grown from the trivial one by adjoining one right coset
    representative at a time; generated member sets are memoized.
    """
    trivial = frozenset({group.identity})
    seen = {trivial}
    queue = [trivial]
    while queue:
        current = queue.pop()
        covered = set(current)
        for g in range(group.order):
            if g in covered:
                continue
            covered.update(int(group.mul[s, g]) for s in current)
            generated = group.closure(list(current) + [g])
            if generated not in seen:
                seen.add(generated)
                queue.append(generated)
    result = sorted((Subgroup(group, members) for members in seen), key=lambda s: s.sort_key)
    logger.debug(f"{group.name}: {len(result)} subgroups")
    return result

# ==================== NAMED GROUPS ====================

def trivial_group() -> FiniteGroup:
    return FiniteGroup(['e'], [[0]], 0, name='trivial')

def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise AlgebraError(handle_error('invalid_group', f"cyclic group of order {n}"))
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(list(range(n)), table, 0, name=f"Z{n}")

def symmetric_group(n: int) -> FiniteGroup:
    perms = all_permutations(n)
    return FiniteGroup.from_operation(perms, compose, identity_perm(n), name=f"S{n}")

def direct_product(first: FiniteGroup, second: FiniteGroup) -> FiniteGroup:
    """Elements (a, b) ordered lexicographically by index"""
    n2 = second.order
    elements = [(a, b) for a in range(first.order) for b in range(n2)]
    table = (first.mul[:, None, :, None] * n2 + second.mul[None, :, None, :])
    table = table.reshape(first.order * n2, first.order * n2)
    return FiniteGroup(elements, table, first.identity * n2 + second.identity,
                       name=f"{first.name}x{second.name}", check=False)

def named_group(name: str) -> FiniteGroup:
    """Parse 'trivial', 'Z<n>', 'S<n>' and products 'AxB'"""
    text = name.strip()
    if 'x' in text:
        parts = [named_group(part) for part in text.split('x')]
        result = parts[0]
        for part in parts[1:]:
            result = direct_product(result, part)
        return result
    if text in ('trivial', '1', 'e'):
        return trivial_group()
    match = re.fullmatch(r'([ZCS])(\d+)', text)
    if not match:
        raise InputError(f"unknown group name {name!r}")
    kind, size = match.group(1), int(match.group(2))
    if kind in ('Z', 'C'):
        return cyclic_group(size)
    return symmetric_group(size)
