import json

import pytest

from ambient_dirac import cli
from ambient_dirac.base import CaseStatus
from ambient_dirac.reports import Report


def test_nf(capsys):
    assert cli.main(['nf', '[Q,y]']) == 0
    assert capsys.readouterr().out == '-2*x\n'

def test_nf_syntax_error(capsys):
    assert cli.main(['nf', 'x +']) == 2
    assert 'position 3' in capsys.readouterr().err

def test_nf_mixed_parity(capsys):
    assert cli.main(['nf', '[x+h,y]']) == 2
    assert capsys.readouterr().err.startswith('error:')

def test_verify_writes_json(tmp_path, capsys):
    filename = tmp_path / 'jacobi.json'
    assert cli.main(['verify', '--suite', 'jacobi', '--json', str(filename)]) == 0
    assert 'jacobi: 125 pass, 0 flagged, 0 fail of 125' in capsys.readouterr().out
    with open(filename, encoding='utf-8') as fh:
        data = json.load(fh)
    assert data['suite'] == 'jacobi'
    assert data['summary']['total'] == 125

def test_json_option_before_subcommand(tmp_path):
    filename = tmp_path / 'nf.json'
    assert cli.main(['--json', str(filename), 'nf', 'y*x']) == 0
    assert Report.load(filename).cases[0].computed == '-x*y + 2*h'

def test_json_reports_are_deterministic_per_seed(tmp_path):
    documents = []
    for name in ('first.json', 'second.json'):
        filename = tmp_path / name
        cli.main(['verify', '--suite', 'oracle', '--trials', '10', '--seed', '4',
            '--sig', '1,1', '--json', str(filename)])
        with open(filename, encoding='utf-8') as fh:
            data = json.load(fh)
        data.pop('timestamp')
        documents.append(data)
    assert documents[0] == documents[1]

def test_verify_exit_code_on_failure(monkeypatch):
    def failing_suite(suite, **options):
        report = Report(suite)
        report.add_case('broken', CaseStatus.FAIL, '1', '2')
        return report
    monkeypatch.setattr(cli, 'run_suite', failing_suite)
    assert cli.main(['verify', '--suite', 'prop3']) == 1

def test_unknown_suite_is_a_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        cli.main(['verify', '--suite', 'nonsense'])
    assert excinfo.value.code == 2

def test_bad_signature(capsys):
    assert cli.main(['verify', '--suite', 'flat', '--sig', '1;1']) == 2
    assert 'R,S' in capsys.readouterr().err

def test_solve_even(capsys):
    assert cli.main(['solve', '--parity', 'even', '--p', '1']) == 0
    out = capsys.readouterr().out
    assert 'L: x*(2*y*sigma)' in out
    assert 'R: x*(2*y*sigma)' in out
    assert 'defect slot 0' in out

def test_solve_generic(capsys):
    assert cli.main(['solve', '--parity', 'odd', '--p', '1', '--generic-w', '--max-order', '4']) == 0
    out = capsys.readouterr().out
    assert 'obstruction: none' in out
    assert '\nL:' not in out

def test_solve_rejects_bad_input(capsys):
    assert cli.main(['solve', '--parity', 'sideways', '--p', '1']) == 2
    assert cli.main(['solve', '--parity', 'odd', '--p', '0']) == 2

def test_constants(capsys):
    assert cli.main(['constants', '--parity', 'odd', '--pmax', '1']) == 0
    assert '1  8' in capsys.readouterr().out

def test_constants_even(capsys):
    assert cli.main(['constants', '--parity', 'even', '--pmax', '2']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ['p  c', '1  1', '2  -4']

def test_verify_reports_signatures_that_cannot_run(capsys):
    assert cli.main(['verify', '--suite', 'kernel', '--sig', '3,0']) == 1
    out = capsys.readouterr().out
    assert 'kernel/(3,0)' in out
    assert 'UnsupportedSignature' in out

def test_solve_odd(capsys):
    assert cli.main(['solve', '--parity', 'odd', '--p', '1']) == 0
    out = capsys.readouterr().out
    assert 'defect slot 2' in out
