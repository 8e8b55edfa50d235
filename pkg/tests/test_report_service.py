import json

import jsonschema
import pytest
from openpyxl import load_workbook

from exceptions import InputDomainError
from report_service import CheckResult, Report, render_csv, render_json, validate_report, write_report
from utils.filename_sanitizer import create_report_filename


@pytest.fixture
def report():
    return Report(
        command=['stability', '--d=5', '--n=2,2,2'],
        bounds={'k_max': 2},
        rows=[{'M': 1, 'I': 1, 'connectivity_by_k': [{'k': 1, 'range_below': -1}]}],
        checks=[CheckResult('lattice-axioms', True, 12)],
        meta={'clause': 'general-position'},
    )


def test_json_is_canonical(report):
    text = render_json(report)
    assert text.endswith("}\n")
    data = json.loads(text)
    assert data['schema_version'] == "1.0"
    assert data['command'] == ['stability', '--d=5', '--n=2,2,2']
    assert list(data) == sorted(data)
    assert render_json(report) == text


def test_failed_check_needs_counterexample():
    with pytest.raises(InputDomainError):
        CheckResult('crosscut', False, 3)
    failed = CheckResult('crosscut', False, 3, {'pair': 'V<1*l1'})
    assert not Report(command=['verify'], checks=[failed]).passed


def test_schema_rejects_failed_check_without_counterexample(report):
    data = report.to_json()
    data['checks'] = [{'name': 'crosscut', 'passed': False, 'checked': 1, 'counterexample': None}]
    with pytest.raises(jsonschema.ValidationError):
        validate_report(data)


def test_schema_rejects_unknown_fields(report):
    data = report.to_json()
    data['elapsed'] = 0.5
    with pytest.raises(jsonschema.ValidationError):
        validate_report(data)


def test_csv_flattens_nested_values(report):
    lines = render_csv(report).splitlines()
    assert lines[0] == "M,I,connectivity_by_k"
    assert '[{""k"":1,""range_below"":-1}]' in lines[1]


def test_csv_of_checks_only():
    text = render_csv(Report(command=['verify'], checks=[CheckResult('crosscut', True, 4)]))
    assert text.splitlines()[0] == "name,passed,checked,counterexample"


def test_xlsx_has_styled_header(report, tmp_path):
    path = write_report(report, 'xlsx', str(tmp_path / "out.xlsx"))
    wb = load_workbook(path)
    assert wb.sheetnames == ["Report", "Rows", "Checks"]
    assert wb["Rows"]["A1"].value == "M"
    assert wb["Rows"]["A1"].font.bold


def test_xlsx_cannot_go_to_stdout(report):
    with pytest.raises(InputDomainError):
        write_report(report, 'xlsx', '-')


def test_unknown_format(report):
    with pytest.raises(InputDomainError):
        write_report(report, 'yaml', '-')


def test_stdout(report, capsys):
    assert write_report(report, 'json', '-') is None
    assert json.loads(capsys.readouterr().out)['rows'][0]['M'] == 1


def test_directory_output_is_named_after_the_command(report, tmp_path):
    path = write_report(report, 'csv', str(tmp_path))
    assert path == str(tmp_path / create_report_filename("stability --d=5 --n=2,2,2", "csv"))
    assert path.endswith("stability_-d-5_-n-2-2-2.csv")
    assert open(path, encoding="utf-8").read().startswith("M,I")
