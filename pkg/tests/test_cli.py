import json

import pytest

import verification_service
from cli import EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED, main
from report_service import CheckResult


def run_json(capsys, *argv):
    code = main(['--output', '-', '--quiet', *argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_stability(capsys):
    code, report = run_json(capsys, 'stability', '--d', '5', '--n', '2,2,2', '--general-position',
                            '--k-max', '2')
    assert code == EXIT_OK
    row = report['rows'][0]
    assert (row['M'], row['I'], row['feasible']) == (1, 1, True)
    assert row['connectivity_by_k'] == [{'k': 1, 'range_below': -1}, {'k': 2, 'range_below': 0}]
    assert report['command'][0] == 'stability'
    assert '--n=2,2,2' in report['command']


def test_infeasible_stability_is_not_an_error(capsys):
    code, report = run_json(capsys, 'stability', '--d', '5', '--n', '2,2,2')
    assert code == EXIT_OK
    assert report['rows'][0]['feasible'] is False


def test_delpezzo(capsys):
    code, report = run_json(capsys, 'delpezzo', '--alpha', '3,1,1,1,1', 'ample')
    assert code == EXIT_OK
    assert report['rows'][0]['ample'] is True
    code, report = run_json(capsys, 'delpezzo', '--alpha', '3,1,1,1,1', 'nalpha')
    assert report['rows'][0]['feasible'] is False
    assert report['rows'][0]['orbit_size'] == 1


def test_chains_at_depth_zero(capsys):
    code, report = run_json(capsys, 'chains', '--r', '3', '--max-depth', '0')
    assert code == EXIT_OK
    assert [row['chain'] for row in report['rows']] == ['V']
    assert sorted(report['rows'][0]['covers']) == ['1*l1', '1*l2', '1*l3']


def test_census(small_env, capsys):
    code, report = run_json(capsys, 'census', '--r', '3', '--kappa-max', '2', '--with-mu')
    assert code == EXIT_OK
    assert sorted(row['type'] for row in report['rows']) == ['{1*l1}', '{1*l2}', '{1*l3}']
    assert all(row['kappa'] == 2 and row['mu_betti'] == [0, 1] for row in report['rows'])
    assert 'mu_convention' in report['meta']


def test_census_csv(small_env, capsys):
    assert main(['--output', '-', '--format', 'csv', '--quiet', 'census', '--r', '2']) == EXIT_OK
    header = capsys.readouterr().out.splitlines()[0]
    assert header.startswith("type,points,gamma,rank,supp,kappa")


def test_build_p(capsys):
    code, report = run_json(capsys, 'build-p', '--d', '9', '--n', '2,2,2', '--max-points', '1',
                            '--max-depth', '2')
    assert code == EXIT_OK
    assert [c['name'] for c in report['checks']] == ['clause-a', 'clause-b', 'clause-c']
    assert report['meta']['I'] == 3


def test_census_bounds_default_to_config(small_env, capsys):
    code, report = run_json(capsys, 'census', '--r', '2')
    assert code == EXIT_OK
    assert (report['bounds']['max_points'], report['bounds']['max_depth']) == (1, 2)
    assert '--max-points=1' in report['command']


def test_build_p_bounds_default_to_config(small_env, capsys):
    code, report = run_json(capsys, 'build-p', '--d', '9', '--n', '2,2,2')
    assert code == EXIT_OK
    assert report['bounds'] == {'max_points': 1, 'max_depth': 2}


@pytest.mark.parametrize("argv", [
    [],
    ['stability', '--d', '5', '--n', '2,x'],
    ['stability', '--d', '5'],
    ['--parallelism', '0', 'stability', '--d', '5', '--n', '2'],
    ['chains', '--max-depth', '-1'],
    ['delpezzo', '--alpha', '1,1,1,0,0', 'normalize'],
    ['delpezzo', '--alpha', '3,1,1', 'ample'],
    ['census', '--flavor', 'absolute', '--n', '1,1,1'],
    ['verify', '--suite', 'nope'],
    ['verify', '--max-r', '0'],
    ['--format', 'xlsx', 'stability', '--d', '5', '--n', '2'],
])
def test_input_errors(argv, capsys):
    code = main(['--output', '-', '--quiet', *argv])
    assert code == EXIT_INPUT_ERROR
    assert capsys.readouterr().out == ""


def test_verify(small_env, capsys):
    code, report = run_json(capsys, 'verify', '--suite', 'crosscut,weyl-group')
    assert code == EXIT_OK
    assert [c['name'] for c in report['checks']] == ['crosscut', 'weyl-group']
    assert all(c['passed'] for c in report['checks'])


def test_verify_bound_overrides(small_env, capsys):
    code, report = run_json(capsys, 'verify', '--suite', 'build-p-certificates,word-roundtrip',
                            '--max-r', '1', '--max-depth', '1', '--max-points', '1', '--degrees', '7')
    assert code == EXIT_OK
    bounds = report['bounds']
    assert bounds['max_r'] == 1
    assert bounds['certificate_degrees'] == [7]
    assert (bounds['certificate_max_points'], bounds['certificate_max_depth']) == (1, 1)
    assert bounds['homology_max_depth'] == 1
    assert '--degrees=7' in report['command']
    assert all(c['passed'] for c in report['checks'])


def test_verify_failure_exit_code(small_env, capsys, monkeypatch):
    monkeypatch.setitem(verification_service.SUITES, 'crosscut',
                        lambda cfg, seed: CheckResult('crosscut', False, 1, {'pair': 'V<1*l1'}))
    code, report = run_json(capsys, 'verify', '--suite', 'crosscut')
    assert code == EXIT_VERIFICATION_FAILED
    assert report['checks'][0]['counterexample'] == {'pair': 'V<1*l1'}


def test_output_does_not_depend_on_parallelism(small_env, capsys):
    argv = ['verify', '--suite', 'lattice-axioms,word-roundtrip,weyl-group']
    assert main(['--output', '-', '--quiet', '--parallelism', '1', *argv]) == EXIT_OK
    serial = capsys.readouterr().out
    assert main(['--output', '-', '--quiet', '--parallelism', '2', *argv]) == EXIT_OK
    assert capsys.readouterr().out == serial


def test_report_file(tmp_path):
    target = tmp_path / "chains.json"
    assert main(['--output', str(target), '--quiet', 'chains', '--r', '1', '--max-depth', '1']) == EXIT_OK
    data = json.loads(target.read_text(encoding='utf-8'))
    assert {row['chain'] for row in data['rows']} == {'V', '1*l1', '1*0'}
