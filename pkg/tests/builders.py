"""
Small objects reused across the test modules.
"""

from src.core.colors import ColorSet, Signature
from src.core.symseq import OrbitSymSeq, from_orbits


def binary(colors: ColorSet, color: int = 0) -> Signature:
    return Signature((color, color), color)


def commutative_binary(colors: ColorSet, max_arity: int, name: str = 'a') -> OrbitSymSeq:
    """One binary generator fixed by the swap"""
    return commutative_binaries(colors, max_arity, [name])


def commutative_binaries(colors: ColorSet, max_arity: int, names) -> OrbitSymSeq:
    parent = colors.group.gsigma(2)
    swap = parent.subgroup([parent.index[(colors.group.identity, (1, 0))]])
    return from_orbits(colors, max_arity, [(binary(colors), swap, name) for name in names],
                       name="".join(names).upper())


def free_binary(colors: ColorSet, max_arity: int, name: str = 'a') -> OrbitSymSeq:
    """One binary generator with trivial stabilizer"""
    return from_orbits(colors, max_arity, [(binary(colors), None, name)], name=name.upper())

# ==================== JSON DOCUMENTS ====================

# F(a) with a second commutative operation b adjoined freely
PROBLEM = """{
  "colors": {"colors": ["*"]},
  "max_arity": 3,
  "base": {"kind": "free",
           "generators": {"orbits": [{"signature": "*,*;*", "name": "a", "stabilizer": [[0, [1, 0]]]}]}},
  "source": {"orbits": []},
  "target": {"orbits": [{"signature": "*,*;*", "name": "b", "stabilizer": [[0, [1, 0]]]}]},
  "u": {},
  "attach": {},
  "bound": 3
}"""

# a free Z2-orbit sent to two fixed points; %s is the family kind
NON_NATURAL = """{
  "colors": {"group": "Z2", "colors": ["*"]},
  "max_arity": 0,
  "source": {"orbits": [{"signature": ";*", "name": "x"}]},
  "target": {"orbits": [{"signature": ";*", "name": "p", "stabilizer": [[1, []]]},
                        {"signature": ";*", "name": "q", "stabilizer": [[1, []]]}]},
  "elements": [{"source": "x", "target": "p"},
               {"source": {"generator": "x", "g": 1}, "target": "q"}],
  "family": {"kind": "%s"}
}"""

# End(n) on one color with a commutative x attached to a binary operation and glued to y;
# the %-fields are carriers, the attached operation and the bound
GLUED_TO_END = """{
  "colors": {"colors": ["*"]},
  "max_arity": 2,
  "base": {"kind": "endomorphism", "carriers": %d},
  "source": {"orbits": [{"signature": "*,*;*", "name": "x", "stabilizer": [[0, [1, 0]]]}]},
  "target": {"orbits": [{"signature": "*,*;*", "name": "y", "stabilizer": [[0, [1, 0]]]}]},
  "u": {"x": "y"},
  "attach": {"x": %s},
  "bound": %d
}"""
