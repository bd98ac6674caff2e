"""
Colors and Signatures for the Equivariant Operad Workbench
G-sets of colors, signatures (c_1, ..., c_n; c_0), the action of G x Sigma_n^op on them,
stabilizers, the signature groupoid G x| Sigma_C^op and equivariant color maps.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .groupoids import Arrow, FiniteGroupoid, GroupoidFunctor, gsigma_groupoid
from .groups import FiniteGroup, Subgroup, identity_perm, inverse, trivial_group
from ..utils.helpers import AlgebraError, SignatureError, handle_error

logger = logging.getLogger(__name__)

# ==================== SIGNATURES ====================

@dataclass(frozen=True, order=True)
class Signature:
    """A corolla (c_1, ..., c_n; c_0) over color indices"""
    inputs: Tuple[int, ...]
    output: int

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def key(self, colors: Optional["ColorSet"] = None) -> str:
        """Canonical string 'c1,...,cn;c0'"""
        name = colors.name if colors is not None else str
        return ','.join(name(c) for c in self.inputs) + ';' + name(self.output)

    def __repr__(self) -> str:
        return f"({','.join(map(str, self.inputs))};{self.output})"

# ==================== COLOR G-SETS ====================

class ColorSet:
    """
    A finite G-set of colors.

    Args:
        group: the acting group G
        names: color names, indexed 0..k-1
        action: table with action[g][c] = index of g.c (defaults to trivial)
    """

    def __init__(self, group: FiniteGroup, names: Sequence[str], action: Optional[Sequence[Sequence[int]]] = None):
        self.group = group
        self.names = tuple(str(n) for n in names)
        self._index = {n: i for i, n in enumerate(self.names)}
        if len(self._index) != len(self.names):
            raise SignatureError(handle_error('signature_mismatch', 'duplicate color names'))
        if action is None:
            action = [list(range(len(self.names))) for _ in range(group.order)]
        self.action = np.asarray(action, dtype=np.int64).reshape(group.order, len(self.names))
        self._validate()
        self._groupoids: Dict[Tuple[int, int], "SignatureGroupoid"] = {}

    def _validate(self):
        k = len(self.names)
        table = self.action
        if k and (table.min() < 0 or table.max() >= k):
            raise AlgebraError(handle_error('invalid_action', 'color action out of range'))
        if not np.array_equal(table[self.group.identity], np.arange(k)):
            raise AlgebraError(handle_error('invalid_action', 'identity moves a color'))
        # (gh).c == g.(h.c)
        lhs = table[self.group.mul]
        rhs = table[np.arange(self.group.order)[:, None, None], table[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise AlgebraError(handle_error('invalid_action', 'color table is not a group action'))

    @classmethod
    def trivial(cls, names: Sequence[str], group: Optional[FiniteGroup] = None) -> "ColorSet":
        return cls(group or trivial_group(), names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(range(len(self.names)))

    def name(self, c: int) -> str:
        return self.names[c]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SignatureError(handle_error('signature_mismatch', f"unknown color {name!r}"))

    def act(self, g: int, c: int) -> int:
        return int(self.action[g, c])

    def orbit(self, c: int) -> List[int]:
        return sorted({self.act(g, c) for g in range(self.group.order)})

    def signature(self, text: str) -> Signature:
        """Parse 'a,b;c' (or ';c' for arity zero)"""
        if ';' not in text:
            raise SignatureError(handle_error('signature_mismatch', f"signature {text!r} lacks ';'"))
        inputs, output = text.split(';', 1)
        names = [part.strip() for part in inputs.split(',') if part.strip()]
        return Signature(tuple(self.index(n) for n in names), self.index(output.strip()))

    def signatures(self, max_arity: int, min_arity: int = 0) -> List[Signature]:
        result = []
        for n in range(min_arity, max_arity + 1):
            for inputs in itertools.product(range(len(self)), repeat=n):
                for output in range(len(self)):
                    result.append(Signature(tuple(inputs), output))
        return result

    def signature_groupoid(self, max_arity: int, min_arity: int = 0) -> "SignatureGroupoid":
        key = (min_arity, max_arity)
        if key not in self._groupoids:
            self._groupoids[key] = SignatureGroupoid(self, max_arity, min_arity)
        return self._groupoids[key]

    def __repr__(self) -> str:
        return f"ColorSet({self.group.name}, {list(self.names)})"

# ==================== SIGNATURE ACTION ====================

def act_on_signature(colors: ColorSet, g: int, sigma: Sequence[int], sig: Signature) -> Signature:
    """(g c_sigma(1), ..., g c_sigma(n); g c_0)"""
    if len(sigma) != sig.arity:
        raise SignatureError(handle_error('signature_mismatch', f"permutation of size {len(sigma)} on arity {sig.arity}"))
    return Signature(tuple(colors.act(g, sig.inputs[s]) for s in sigma), colors.act(g, sig.output))


def stabilizes(colors: ColorSet, subgroup: Subgroup, sig: Signature) -> bool:
    """Every (g, sigma) in the subgroup of G x Sigma_n^op fixes sig"""
    elements = subgroup.parent.elements
    if elements and len(elements[0][1]) != sig.arity:
        raise SignatureError(handle_error('signature_mismatch', f"subgroup of arity {len(elements[0][1])} on {sig}"))
    return all(act_on_signature(colors, *elements[m], sig) == sig for m in subgroup.members)


def signature_automorphisms(colors: ColorSet, sig: Signature) -> Subgroup:
    """Aut(sig) as a subgroup of G x Sigma_n^op"""
    parent = colors.group.gsigma(sig.arity)
    return Subgroup(parent, frozenset(i for i, (g, s) in enumerate(parent.elements)
                                      if act_on_signature(colors, g, s, sig) == sig))

# ==================== SIGNATURE GROUPOID ====================

class SignatureGroupoid(FiniteGroupoid):
    """
    G x| Sigma_C^op truncated to an arity range.

    An arrow C -> D is (g, sigma) with g C sigma = D; (h, r) o (g, s) = (hg, s o r).
    """

    def __init__(self, colors: ColorSet, max_arity: int, min_arity: int = 0):
        super().__init__(f"{colors.group.name} x| Sigma_C^op")
        self.colors = colors
        self.max_arity = max_arity
        self.min_arity = min_arity
        self._objects = tuple(colors.signatures(max_arity, min_arity))
        self._object_set = set(self._objects)
        self._hom_cache: Dict[Tuple[Signature, Signature], Tuple[Arrow, ...]] = {}

    def objects(self):
        return self._objects

    def __contains__(self, sig: Signature) -> bool:
        return sig in self._object_set

    def hom(self, x, y):
        key = (x, y)
        if key not in self._hom_cache:
            if x.arity != y.arity or sorted(self.colors.orbit(x.output)) != sorted(self.colors.orbit(y.output)):
                self._hom_cache[key] = ()
            else:
                self._hom_cache[key] = tuple(
                    Arrow(x, y, (g, s)) for g, s in self.colors.group.gsigma(x.arity).elements
                    if act_on_signature(self.colors, g, s, x) == y)
        return self._hom_cache[key]

    def arrows_from(self, x):
        for g, s in self.colors.group.gsigma(x.arity).elements:
            yield Arrow(x, act_on_signature(self.colors, g, s, x), (g, s))

    def arrows(self):
        for x in self._objects:
            yield from self.arrows_from(x)

    def arrow(self, sig: Signature, g: int, sigma: Sequence[int]) -> Arrow:
        sigma = tuple(sigma)
        return Arrow(sig, act_on_signature(self.colors, g, sigma, sig), (g, sigma))

    def compose(self, second, first):
        self._require_composable(second, first)
        h, r = second.data
        g, s = first.data
        return Arrow(first.source, second.target,
                     (self.colors.group.multiply(h, g), tuple(s[i] for i in r)))

    def identity(self, x):
        return Arrow(x, x, (self.colors.group.identity, identity_perm(x.arity)))

    def inverse(self, f):
        g, s = f.data
        return Arrow(f.target, f.source, (self.colors.group.inverse(g), inverse(s)))

    def orbit_representative(self, sig: Signature) -> Signature:
        """Least signature in the G x Sigma orbit"""
        return min(act_on_signature(self.colors, g, s, sig) for g, s in self.colors.group.gsigma(sig.arity).elements)

    def components(self):
        if self._components is None:
            grouped: Dict[Signature, List[Signature]] = {}
            for sig in self._objects:
                grouped.setdefault(self.orbit_representative(sig), []).append(sig)
            self._components = sorted((tuple(sorted(c)) for c in grouped.values()), key=lambda c: c[0])
            for comp in self._components:
                for sig in comp:
                    self._rep_of[sig] = comp[0]
        return self._components

    def representative(self, x):
        if x not in self._rep_of:
            self.components()
        return self._rep_of[x]

    def aut_subgroup(self, sig: Signature) -> Subgroup:
        return signature_automorphisms(self.colors, sig)


def projection_functor(colors: ColorSet, max_arity: int, min_arity: int = 0) -> GroupoidFunctor:
    """pi_C: G x| Sigma_C^op -> G x Sigma^op, sig -> arity"""
    source = colors.signature_groupoid(max_arity, min_arity)
    target = gsigma_groupoid(colors.group, range(min_arity, max_arity + 1))

    def arrow_map(f):
        n = f.source.arity
        return Arrow(n, n, colors.group.gsigma(n).index[f.data])

    return GroupoidFunctor(source, target, lambda sig: sig.arity, arrow_map, name="pi_C")

# ==================== EQUIVARIANT COLOR MAPS ====================

class ColorMap:
    """An equivariant map of color G-sets given as an index list"""

    def __init__(self, source: ColorSet, target: ColorSet, mapping: Sequence[int]):
        self.source = source
        self.target = target
        self.mapping = tuple(int(m) for m in mapping)
        if source.group is not target.group:
            raise SignatureError(handle_error('not_equivariant', 'color sets over different groups'))
        if len(self.mapping) != len(source):
            raise SignatureError(handle_error('not_equivariant', 'mapping has the wrong length'))
        for g in range(source.group.order):
            for c in source:
                if target.act(g, self.mapping[c]) != self.mapping[source.act(g, c)]:
                    raise SignatureError(handle_error('not_equivariant', f"fails at g={g}, color {source.name(c)}"))

    @classmethod
    def by_names(cls, source: ColorSet, target: ColorSet) -> "ColorMap":
        """Inclusion matching color names"""
        return cls(source, target, [target.index(n) for n in source.names])

    @property
    def injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def __call__(self, c: int) -> int:
        return self.mapping[c]

    def on_signature(self, sig: Signature) -> Signature:
        return Signature(tuple(self.mapping[c] for c in sig.inputs), self.mapping[sig.output])

    def preimages(self, sig: Signature) -> List[Signature]:
        """All source signatures mapping to sig"""
        choices = [[c for c in self.source if self.mapping[c] == d] for d in sig.inputs + (sig.output,)]
        return [Signature(tuple(combo[:-1]), combo[-1]) for combo in itertools.product(*choices)]

    def functor(self, max_arity: int) -> GroupoidFunctor:
        """Induced functor on signature groupoids"""
        source = self.source.signature_groupoid(max_arity)
        target = self.target.signature_groupoid(max_arity)
        return GroupoidFunctor(source, target, self.on_signature,
                               lambda f: Arrow(self.on_signature(f.source), self.on_signature(f.target), f.data),
                               name="phi")
