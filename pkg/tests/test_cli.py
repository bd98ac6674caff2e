import json

import pytest

from src.main import main

from .builders import GLUED_TO_END, NON_NATURAL, PROBLEM


def run_json(capsys, argv):
    code = main(argv + ['--format', 'json'])
    return code, json.loads(capsys.readouterr().out)


def test_subgroup_enumeration(capsys):
    code, report = run_json(capsys, ['enumerate', 'subgroups', '--group', 'S3'])
    assert code == 0
    assert report['counts']['subgroups'] == 6
    assert len(report['tables']['subgroups']) == 6
    assert 'wall_time' not in report


def test_timing_is_opt_in(capsys):
    code, report = run_json(capsys, ['enumerate', 'subgroups', '--group', 'Z2', '--timing'])
    assert code == 0
    assert 'wall_time' in report


def test_binary_tree_enumeration(capsys):
    code, report = run_json(capsys, ['enumerate', 'trees', '--arity', '4', '--vertex-arities', '2', '--bound', '3'])
    assert code == 0
    assert report['counts']['classes'] == 2
    assert sorted(row['aut_order'] for row in report['tables']['trees']) == [2, 8]


def test_graph_subgroup_row(capsys):
    code, report = run_json(capsys, ['enumerate', 'graph-subgroups', '--group', 'Z2', '--arity-range', '2..3'])
    assert code == 0
    assert report['counts']['graph_subgroups'] == '2:3 3:5'


@pytest.mark.parametrize("argv", [
    ['enumerate', 'subgroups', '--group', 'Q8'],
    ['frobnicate'],
])
def test_bad_input_exits_with_2(capsys, argv):
    assert main(argv) == 2


def test_missing_file_exits_with_2(tmp_path, capsys):
    assert main(['check', 'family', str(tmp_path / 'absent.json')]) == 2
    assert 'absent.json' in capsys.readouterr().err


def test_failing_family_exits_with_1(tmp_path, capsys):
    path = tmp_path / 'family.json'
    path.write_text('{"group": "Z2", "subgroups": {"1": [[[1, [0]]]]}}')
    code, report = run_json(capsys, ['check', 'family', str(path)])
    assert code == 1
    assert report['status'] == 'fail'
    assert report['checks'][0]['witness']


@pytest.mark.parametrize("kind, expected", [('trivial', 0), ('all', 1)])
def test_f_equivalence_depends_on_the_family(tmp_path, capsys, kind, expected):
    path = tmp_path / 'map.json'
    path.write_text(NON_NATURAL % kind)
    code, report = run_json(capsys, ['check', 'f-equivalence', str(path)])
    assert code == expected
    assert report['counts']['natural'] is False


def test_extend(tmp_path, capsys):
    path = tmp_path / 'problem.json'
    path.write_text(PROBLEM)
    code, report = run_json(capsys, ['extend', str(path)])
    assert code == 0
    assert report['counts']['final_counts'] == '1:1 2:2 3:12'
    assert report['counts']['oracle_match'] == 'yes'


def test_extend_exports_a_table_operad(tmp_path, capsys):
    path, out = tmp_path / 'problem.json', tmp_path / 'extension.json'
    path.write_text(PROBLEM)
    code, report = run_json(capsys, ['extend', str(path), '--export', str(out)])
    assert code == 0
    assert report['counts']['exported'] == str(out)
    exported = json.loads(out.read_text())
    assert exported['kind'] == 'table'
    assert sorted(len(level['elements']) for level in exported['levels']) == [1, 2, 12]


def test_examples(capsys):
    assert main(['examples']) == 0
    assert 'Status: pass' in capsys.readouterr().out


def test_extension_over_constants_is_not_stabilized(tmp_path, capsys):
    path = tmp_path / 'problem.json'
    path.write_text(GLUED_TO_END % (2, '[0, 0, 0, 1]', 1))
    code, report = run_json(capsys, ['extend', str(path)])
    assert code == 1
    assert [row['stage'] for row in report['tables']['stages']] == [0, 1]
    assert report['counts']['final_counts'] == '0:2 1:4 2:16'
    assert [check['name'] for check in report['checks']] == ['stabilized']


def test_extension_needing_higher_arities_fails_the_truncation_check(tmp_path, capsys):
    path = tmp_path / 'problem.json'
    path.write_text(GLUED_TO_END % (1, '[0]', 2))
    code, report = run_json(capsys, ['extend', str(path)])
    assert code == 1
    assert report['tables']['stages'][2]['unresolved'] > 0
    assert report['checks'][0]['name'] == 'within truncation'
    assert not report['checks'][0]['passed']
