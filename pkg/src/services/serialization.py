"""
JSON Input Formats for the Equivariant Operad Workbench
Reads groups, color G-sets, families, orbit-presented symmetric sequences, operads, symmetric
sequence maps and extension problems from JSON files, and writes table operads back out.

## Document Structure

### Group (string or object):
```json
"Z2"
{"name": "S3"}
{"elements": ["e", "r"], "table": [[0, 1], [1, 0]], "identity": 0}
```

### Color G-set:
```json
{
  "group": "Z2",
  "colors": ["a", "-a", "b"],
  "action": [["a", "-a", "b"], ["-a", "a", "b"]]   // one row per group element, optional
}
```

### Subgroup of G x Sigma_n^op (list of generators, group elements by index):
```json
[[1, [1, 0]], [0, [0, 1]]]
```

### Family:
```json
{"group": "Z2", "kind": "graph", "arities": "0..3"}
{"group": "Z2", "subgroups": {"1": [[[1, [0]]]], "2": [[]]}, "close": true}
```

### Orbit-presented symmetric sequence (colors and max_arity come from the enclosing document):
```json
{"orbits": [{"signature": "a,a;a", "name": "x", "stabilizer": [[0, [1, 0]]]}]}
```
An element is either a generator name or {"generator": "x", "g": 1, "sigma": [1, 0]}.

### Operad:
```json
{"kind": "endomorphism", "carriers": {"a": ["0", "1"]}}
{"kind": "free", "generators": {"orbits": [...]}, "bound": 3}
{"kind": "table", "levels": [...], "actions": [...], "units": {...}, "compositions": [...]}
```
Endomorphism elements are lists of output indices, free elements are {"corolla": "x"} or
{"unit": "a"}, table elements are strings.

### Extension problem:
```json
{
  "colors": {...}, "max_arity": 4,
  "base": {operad}, "source": {symseq}, "target": {symseq},
  "u": {"x": "y"}, "attach": {"x": <base element>},
  "bound": 3, "order": "first", "equivariant": true,
  "targets": [{operad}, ...]                         // optional universal-property candidates
}
```

Every validation failure raises InputError naming the file and, where the offending key can
be located in the source text, its line and column.
"""

import json
import logging
from typing import Any, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from ..core.colors import ColorSet, Signature
from ..core.extension import ExtensionProblem
from ..core.families import GSigmaFamily, all_family, graph_family, trivial_family
from ..core.free import FreeOperad
from ..core.groupoids import Arrow
from ..core.groups import FiniteGroup, Subgroup, named_group
from ..core.operads import EndomorphismOperad, Operad, TableOperad
from ..core.symseq import OrbitSymSeq, SymSeq, SymSeqMap, from_orbits, from_table
from ..utils.config import CLI_CONFIG
from ..utils.helpers import InputError, OperadWorkbenchError, parse_arity_range

logger = logging.getLogger(__name__)

# ==================== DOCUMENTS ====================

class JsonDocument:
    """A parsed JSON file that can point back into its own text"""

    def __init__(self, text: str, source: str = "<input>"):
        self.text = text
        self.source = source
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"{source}: {e.msg}", e.lineno, e.colno)

    def position(self, needle: Optional[str]) -> Tuple[Optional[int], Optional[int]]:
        """Line and column of the first quoted occurrence of needle"""
        if not needle:
            return None, None
        offset = self.text.find(json.dumps(needle))
        if offset < 0:
            return None, None
        line = self.text.count('\n', 0, offset) + 1
        column = offset - (self.text.rfind('\n', 0, offset) + 1) + 1
        return line, column

    def fail(self, message: str, key: Optional[str] = None):
        line, column = self.position(key)
        raise InputError(f"{self.source}: {message}", line, column)

    def require(self, data: Mapping[str, Any], key: str, context: str = "") -> Any:
        if not isinstance(data, dict) or key not in data:
            self.fail(f"missing key {key!r}{' in ' + context if context else ''}", context or None)
        return data[key]


def load_document(path: str) -> JsonDocument:
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}")
    return JsonDocument(text, path)

# ==================== GROUPS & COLORS ====================

def decode_group(doc: JsonDocument, data: Any) -> FiniteGroup:
    if isinstance(data, str):
        return named_group(data)
    if isinstance(data, dict) and 'name' in data and 'table' not in data:
        return named_group(str(data['name']))
    if isinstance(data, dict) and 'table' in data:
        elements = data.get('elements') or list(range(len(data['table'])))
        try:
            return FiniteGroup([str(e) for e in elements], data['table'], int(data.get('identity', 0)),
                               name=str(data.get('name', '')))
        except OperadWorkbenchError as e:
            doc.fail(str(e), 'table')
    doc.fail(f"cannot read a group from {data!r}", 'group')


def decode_colors(doc: JsonDocument, data: Any) -> ColorSet:
    group = decode_group(doc, data.get('group', 'trivial')) if isinstance(data, dict) else named_group('trivial')
    names = doc.require(data, 'colors', 'colors')
    if not isinstance(names, list) or not names:
        doc.fail("'colors' must be a nonempty list of names", 'colors')
    action = data.get('action')
    table = None
    if action is not None:
        index = {str(n): i for i, n in enumerate(names)}
        try:
            table = [[index[str(name)] for name in row] for row in action]
        except (KeyError, TypeError):
            doc.fail("action rows must list color names", 'action')
        if len(table) != group.order:
            doc.fail(f"action needs {group.order} rows, got {len(table)}", 'action')
    try:
        return ColorSet(group, names, table)
    except OperadWorkbenchError as e:
        doc.fail(str(e), 'action')


def decode_signature(doc: JsonDocument, colors: ColorSet, text: Any) -> Signature:
    try:
        return colors.signature(str(text))
    except OperadWorkbenchError as e:
        doc.fail(str(e), str(text))


def decode_gsigma_subgroup(doc: JsonDocument, group: FiniteGroup, n: int, generators: Any) -> Subgroup:
    """A subgroup of G x Sigma_n^op from generators [g, [sigma]]"""
    parent = group.gsigma(n)
    indices = []
    for generator in generators or []:
        try:
            g, sigma = generator
            indices.append(parent.index[(int(g), tuple(int(s) for s in sigma))])
        except (KeyError, TypeError, ValueError):
            doc.fail(f"{generator!r} is not an element of {parent.name}", 'stabilizer')
    return parent.subgroup(indices)

# ==================== FAMILIES ====================

FAMILY_KINDS = {'all': all_family, 'trivial': trivial_family, 'graph': graph_family}


def decode_family(doc: JsonDocument, data: Any, group: Optional[FiniteGroup] = None,
                  arities: Optional[range] = None) -> GSigmaFamily:
    if group is None:
        group = decode_group(doc, doc.require(data, 'group', 'family'))
    if 'kind' in data:
        kind = data['kind']
        if kind not in FAMILY_KINDS:
            doc.fail(f"unknown family kind {kind!r}", 'kind')
        if arities is None:
            arities = parse_arity_range(data.get('arities', CLI_CONFIG['default_arity_range']))
        return FAMILY_KINDS[kind](group, arities)
    per_arity = {}
    for arity, subgroups in doc.require(data, 'subgroups', 'family').items():
        n = int(arity)
        per_arity[n] = [decode_gsigma_subgroup(doc, group, n, gens) for gens in subgroups]
    try:
        return GSigmaFamily(group, per_arity, name=str(data.get('name', 'family')), close=bool(data.get('close', False)))
    except OperadWorkbenchError as e:
        doc.fail(str(e), 'subgroups')

# ==================== SYMMETRIC SEQUENCES ====================

def decode_symseq(doc: JsonDocument, data: Any, colors: ColorSet, max_arity: int, name: str = "") -> OrbitSymSeq:
    orbits = doc.require(data, 'orbits', name or 'symseq')
    generators = []
    for orbit in orbits:
        sig = decode_signature(doc, colors, doc.require(orbit, 'signature', 'orbits'))
        stabilizer = orbit.get('stabilizer')
        subgroup = None if stabilizer is None else decode_gsigma_subgroup(doc, colors.group, sig.arity, stabilizer)
        generators.append((sig, subgroup, str(doc.require(orbit, 'name', 'orbits'))))
    try:
        return from_orbits(colors, max_arity, generators, name=name)
    except OperadWorkbenchError as e:
        doc.fail(str(e), name or 'orbits')


def decode_orbit_element(doc: JsonDocument, seq: OrbitSymSeq, data: Any) -> Tuple[Signature, Hashable]:
    """A generator name or {"generator", "g", "sigma"}; returns (signature, element)"""
    if isinstance(data, str):
        data = {'generator': data}
    name = str(doc.require(data, 'generator', 'element'))
    generator = next((gen for gen in seq.generators if gen.name == name), None)
    if generator is None:
        doc.fail(f"unknown generator {name!r}", name)
    sig = generator.signature
    g = int(data.get('g', seq.colors.group.identity))
    sigma = tuple(int(s) for s in data.get('sigma', range(sig.arity)))
    if sorted(sigma) != list(range(sig.arity)):
        doc.fail(f"{list(sigma)} is not a permutation of {sig.arity} inputs", name)
    arrow = seq.base.arrow(sig, g, sigma)
    return arrow.target, seq.act(arrow, seq.generator_element(name))


def generated_map(doc: JsonDocument, source: OrbitSymSeq, target: SymSeq, images: Mapping[str, Hashable],
                  overrides: Optional[Mapping[Tuple[Signature, Hashable], Hashable]] = None, name: str = "f") -> SymSeqMap:
    """
    The map sending each orbit generator to its image and extended along arrows; explicit
    `overrides` replace single entries and may break naturality.
    """
    for gen in source.generators:
        if gen.name not in images:
            doc.fail(f"no image for generator {gen.name!r}", gen.name)
        image = images[gen.name]
        if image not in target.value(gen.signature):
            doc.fail(f"image of {gen.name!r} is not in level {gen.signature!r}", gen.name)
        for data in gen.stabilizer:
            if target.act(Arrow(gen.signature, gen.signature, data), image) != image:
                doc.fail(f"image of {gen.name!r} is not fixed by its stabilizer", gen.name)
    overrides = dict(overrides or {})

    def apply(sig: Signature, element):
        if (sig, element) in overrides:
            return overrides[(sig, element)]
        gen_name, data = element
        gen = next(g for g in source.generators if g.name == gen_name)
        return target.act(Arrow(gen.signature, sig, data), images[gen_name])

    return SymSeqMap.from_function(source, target, apply, name=name)

# ==================== OPERADS ====================

def decode_operad(doc: JsonDocument, data: Any, colors: ColorSet, max_arity: int) -> Operad:
    kind = doc.require(data, 'kind', 'operad')
    name = str(data.get('name', ''))
    try:
        if kind == 'endomorphism':
            return _decode_endomorphism(doc, data, colors, max_arity, name)
        if kind == 'free':
            generators = decode_symseq(doc, doc.require(data, 'generators', 'free'), colors, max_arity, name='X')
            bound = data.get('bound')
            return FreeOperad(generators, None if bound is None else int(bound), name=name)
        if kind == 'table':
            return _decode_table(doc, data, colors, max_arity, name)
    except InputError:
        raise
    except OperadWorkbenchError as e:
        doc.fail(str(e), kind)
    doc.fail(f"unknown operad kind {kind!r}", 'kind')


def _decode_endomorphism(doc: JsonDocument, data: Any, colors: ColorSet, max_arity: int, name: str) -> EndomorphismOperad:
    carriers = doc.require(data, 'carriers', 'endomorphism')
    if isinstance(carriers, int):
        carriers = {c: [str(i) for i in range(carriers)] for c in colors.names}
    missing = [c for c in colors.names if c not in carriers]
    if missing:
        doc.fail(f"no carrier for colors {missing}", 'carriers')
    return EndomorphismOperad(colors, [carriers[c] for c in colors.names], max_arity, name=name or "End")


def _decode_table(doc: JsonDocument, data: Any, colors: ColorSet, max_arity: int, name: str) -> TableOperad:
    values: Dict[Signature, List[str]] = {}
    for level in doc.require(data, 'levels', 'table'):
        sig = decode_signature(doc, colors, doc.require(level, 'signature', 'levels'))
        values[sig] = [str(x) for x in level.get('elements', [])]
    actions = {}
    for entry in data.get('actions', []):
        sig = decode_signature(doc, colors, doc.require(entry, 'signature', 'actions'))
        key = (sig, (int(entry.get('g', colors.group.identity)), tuple(int(s) for s in entry.get('sigma', range(sig.arity)))))
        actions[key] = {str(a): str(b) for a, b in doc.require(entry, 'map', 'actions').items()}
    underlying = from_table(colors, max_arity, values, actions, name=name or "table")
    units = {colors.index(c): str(x) for c, x in doc.require(data, 'units', 'table').items()}
    compositions = {}
    for entry in doc.require(data, 'compositions', 'table'):
        outer = decode_signature(doc, colors, doc.require(entry, 'outer', 'compositions'))
        inner = decode_signature(doc, colors, doc.require(entry, 'inner', 'compositions'))
        x, y = (str(doc.require(entry, key, 'compositions')) for key in ('x', 'y'))
        slot = int(doc.require(entry, 'slot', 'compositions'))
        compositions[(outer, x, slot, inner, y)] = str(doc.require(entry, 'result', 'compositions'))
    return TableOperad(underlying, units, compositions, name=name or "table")


def decode_operad_element(doc: JsonDocument, operad: Operad, sig: Signature, data: Any) -> Hashable:
    """An element of operad(sig) in the notation of its kind"""
    if isinstance(operad, EndomorphismOperad):
        element = tuple(int(v) for v in data)
    elif isinstance(operad, FreeOperad):
        element = _decode_free_element(doc, operad, data)
    else:
        element = next((x for x in operad.value(sig) if str(x) == str(data)), None)
    if element not in operad.value(sig):
        doc.fail(f"{data!r} is not an element of {operad.name} at {sig.key(operad.colors)}", str(data))
    return element


def _decode_free_element(doc: JsonDocument, free: FreeOperad, data: Any) -> Hashable:
    if isinstance(data, dict) and 'unit' in data:
        return free.unit(free.colors.index(str(data['unit'])))
    if isinstance(data, dict) and 'corolla' in data and isinstance(free.generators, OrbitSymSeq):
        sig, label = decode_orbit_element(doc, free.generators, data['corolla'])
        return free.trees.corolla(sig, label)
    doc.fail(f"cannot read a free operad element from {data!r}", 'attach')

# ==================== MAPS & PROBLEMS ====================

def decode_context(doc: JsonDocument) -> Tuple[ColorSet, int]:
    data = doc.data
    colors = decode_colors(doc, doc.require(data, 'colors', 'document'))
    max_arity = int(data.get('max_arity', 3))
    if max_arity < 0:
        doc.fail("max_arity must be nonnegative", 'max_arity')
    return colors, max_arity


def decode_symseq_map(doc: JsonDocument) -> Tuple[SymSeqMap, Optional[GSigmaFamily]]:
    """A map of orbit-presented symmetric sequences with an optional family"""
    colors, max_arity = decode_context(doc)
    data = doc.data
    source = decode_symseq(doc, doc.require(data, 'source', 'map'), colors, max_arity, name='X')
    target = decode_symseq(doc, doc.require(data, 'target', 'map'), colors, max_arity, name='Y')
    images = {}
    for gen, image in data.get('map', {}).items():
        images[gen] = decode_orbit_element(doc, target, image)[1]
    overrides = {}
    for entry in data.get('elements', []):
        sig, x = decode_orbit_element(doc, source, doc.require(entry, 'source', 'elements'))
        sig_y, y = decode_orbit_element(doc, target, doc.require(entry, 'target', 'elements'))
        if sig != sig_y:
            doc.fail(f"entry maps {sig!r} to {sig_y!r}", 'elements')
        overrides[(sig, x)] = y
    if not images:
        # a fully explicit map: generators go wherever the overrides send them
        for gen in source.generators:
            key = (gen.signature, source.generator_element(gen.name))
            if key not in overrides:
                doc.fail(f"no image for generator {gen.name!r}", gen.name)
            images[gen.name] = overrides[key]
    f = generated_map(doc, source, target, images, overrides, name='f')
    family = None
    if 'family' in data:
        family = decode_family(doc, data['family'], colors.group, range(max_arity + 1))
    return f, family


def decode_problem(doc: JsonDocument, bound: Optional[int] = None) -> Tuple[ExtensionProblem, List[Operad]]:
    """The extension problem and its universal-property candidate operads"""
    colors, max_arity = decode_context(doc)
    data = doc.data
    base = decode_operad(doc, doc.require(data, 'base', 'problem'), colors, max_arity)
    source = decode_symseq(doc, doc.require(data, 'source', 'problem'), colors, max_arity, name='X')
    target = decode_symseq(doc, doc.require(data, 'target', 'problem'), colors, max_arity, name='Y')
    images = {gen: decode_orbit_element(doc, target, image)[1] for gen, image in data.get('u', {}).items()}
    u = generated_map(doc, source, target, images, name='u')
    attach_images = {}
    for gen in source.generators:
        raw = data.get('attach', {}).get(gen.name)
        if raw is None:
            doc.fail(f"no attaching value for {gen.name!r}", 'attach')
        attach_images[gen.name] = decode_operad_element(doc, base, gen.signature, raw)
    attach = generated_map(doc, source, base.underlying, attach_images, name='attach')
    order = str(data.get('order', 'first'))
    if order not in ('first', 'last'):
        doc.fail(f"order must be 'first' or 'last', got {order!r}", 'order')
    try:
        problem = ExtensionProblem(base, u, attach,
                                   bound=int(bound if bound is not None else data.get('bound', 3)),
                                   equivariant=bool(data.get('equivariant', True)), order=order,
                                   name=str(data.get('name', 'O[u]')))
    except OperadWorkbenchError as e:
        doc.fail(str(e), 'base')
    candidates = [decode_operad(doc, entry, colors, max_arity) for entry in data.get('targets', [])]
    logger.debug(f"{doc.source}: problem over {len(colors)} colors, {len(candidates)} candidate targets")
    return problem, candidates

# ==================== EXPORT ====================

def encode_table_operad(operad: Operad) -> Dict[str, Any]:
    """A table operad document for any operad, elements renamed to level indices"""
    table = operad if isinstance(operad, TableOperad) else TableOperad.from_operad(operad, rename=True)
    colors = table.colors
    seq = table.underlying
    base = seq.base
    levels, actions = [], []
    for component in base.components():
        rep = component[0]
        # the automorphisms of the representative and one transport arrow per member generate all arrows
        arrows = list(base.hom(rep, rep)) + [base.transport(x) for x in component[1:]]
        for sig in component:
            if seq.value(sig):
                levels.append({'signature': sig.key(colors), 'elements': [str(x) for x in seq.value(sig)]})
        for arrow in arrows:
            if not seq.value(rep):
                break
            g, sigma = arrow.data
            actions.append({'signature': rep.key(colors), 'g': int(g), 'sigma': list(sigma),
                            'map': {str(x): str(seq.act(arrow, x)) for x in seq.value(rep)}})
    compositions = [{'outer': outer.key(colors), 'x': str(x), 'slot': i, 'inner': inner.key(colors),
                     'y': str(y), 'result': str(z)}
                    for (outer, x, i, inner, y), z in sorted(table.compositions.items(), key=repr)]
    return {'kind': 'table', 'name': table.name, 'levels': levels, 'actions': actions,
            'units': {colors.name(c): str(x) for c, x in sorted(table.units.items())},
            'compositions': compositions}


def dumps(data: Any) -> str:
    return json.dumps(data, indent=CLI_CONFIG['json_indent'], sort_keys=True, ensure_ascii=False)
