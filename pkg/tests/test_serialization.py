import json

import pytest

from src.core.free import FreeOperad
from src.core.operads import check_operad_laws
from src.services.serialization import (JsonDocument, decode_family, decode_operad, decode_problem, decode_symseq,
                                        decode_symseq_map, encode_table_operad, load_document)
from src.utils.helpers import InputError

from .builders import NON_NATURAL, PROBLEM, commutative_binary


def test_syntax_errors_carry_a_position():
    with pytest.raises(InputError) as info:
        JsonDocument('{\n  "group": }', 'bad.json')
    assert info.value.line == 2
    assert 'line 2' in str(info.value)


def test_missing_key_is_reported():
    doc = JsonDocument('{"colors": ["*"]}')
    with pytest.raises(InputError, match="missing key 'group'"):
        decode_family(doc, doc.data)


def test_unknown_kind_points_at_the_key():
    doc = JsonDocument('{\n  "group": "Z2",\n  "kind": "weird"\n}')
    with pytest.raises(InputError) as info:
        decode_family(doc, doc.data)
    assert (info.value.line, info.value.column) == (3, 3)


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_document(str(tmp_path / 'absent.json'))


def test_graph_family_by_kind():
    doc = JsonDocument('{"group": "Z2", "kind": "graph", "arities": "0..3"}')
    assert decode_family(doc, doc.data).counts() == {0: 2, 1: 2, 2: 3, 3: 5}


def test_explicit_family_with_closure():
    doc = JsonDocument('{"group": "Z2", "subgroups": {"1": [[[1, [0]]]]}, "close": true}')
    assert decode_family(doc, doc.data).counts() == {1: 2}


def test_symseq_from_orbits(one_color):
    doc = JsonDocument('{"orbits": [{"signature": "*,*;*", "name": "a", "stabilizer": [[0, [1, 0]]]}]}')
    assert decode_symseq(doc, doc.data, one_color, 2).arity_counts() == {2: 1}


def test_explicit_map_and_family():
    f, family = decode_symseq_map(JsonDocument(NON_NATURAL % 'all'))
    assert not f.check_naturality()[0]
    assert f.is_levelwise_bijective()
    assert family.name == 'all'


def test_problem_document():
    problem, candidates = decode_problem(JsonDocument(PROBLEM))
    assert candidates == []
    assert problem.bound == 3
    assert problem.base.value(problem.colors.signature('*,*;*'))
    assert decode_problem(JsonDocument(PROBLEM), bound=1)[0].bound == 1


def test_exported_table_operad_reads_back(one_color):
    free = FreeOperad(commutative_binary(one_color, 3))
    exported = encode_table_operad(free)
    assert exported['kind'] == 'table'
    assert exported['units'] == {'*': '0'}
    doc = JsonDocument(json.dumps(exported))
    table = decode_operad(doc, doc.data, one_color, 3)
    assert table.underlying.arity_counts() == free.underlying.arity_counts() == {1: 1, 2: 1, 3: 3}
    assert check_operad_laws(table).passed
