import pytest

import verification_service
from conftest import SmallConfig
from exceptions import InputDomainError, TorsionDetectedError
from report_service import CheckResult
from stability import P_FLAVORS
from verification_service import SUITES, certificate_contexts, homology_cases, resolve_suites, run_suites


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes_on_small_bounds(name):
    result = SUITES[name](SmallConfig, 0)
    assert result.name == name
    assert result.passed, result.counterexample
    assert result.checked > 0


def test_resolve_all_keeps_registry_order():
    assert resolve_suites('all') == list(SUITES)
    assert resolve_suites('weyl-group, crosscut') == ['crosscut', 'weyl-group']


@pytest.mark.parametrize("selection", ['nope', 'crosscut,nope', ' , '])
def test_resolve_rejects_unknown(selection):
    with pytest.raises(InputDomainError):
        resolve_suites(selection)


def test_parallel_results_match_serial():
    names = ['lattice-axioms', 'word-roundtrip', 'crosscut', 'weyl-group']
    serial = run_suites(names, SmallConfig, seed=3, parallelism=1)
    parallel = run_suites(names, SmallConfig, seed=3, parallelism=4)
    assert [r.to_json() for r in serial] == [r.to_json() for r in parallel]
    assert [r.name for r in parallel] == names


def test_library_errors_become_failed_checks(monkeypatch):
    def broken(cfg, seed):
        raise TorsionDetectedError("stalk carries torsion")

    monkeypatch.setitem(SUITES, 'crosscut', broken)
    [result] = run_suites(['crosscut'], SmallConfig, seed=0)
    assert not result.passed
    assert 'TorsionDetectedError' in result.counterexample['error']


def test_homology_cases_cover_two_point_supports_on_every_r():
    cases = homology_cases(3, 2)
    assert all(len(w) == len(x) for w, x in cases)
    assert all(sum(c.total_depth for c in x) <= 2 for _, x in cases)
    two_point = [(w, x) for w, x in cases if len(w) == 2]
    assert {w[0].poset.r for w, _ in two_point} == {1, 2, 3}
    assert all(a < b for w, x in two_point for a, b in zip(w, x))


def test_certificates_cover_every_flavor():
    contexts = certificate_contexts(SmallConfig)
    assert [flavor for flavor, _ in contexts] == list(P_FLAVORS)
    assert all(ctx.degree == 9 for _, ctx in contexts)


def test_failed_result_shape():
    result = verification_service._failed('crosscut', 2, pair="V<1*l1")
    assert result == CheckResult('crosscut', False, 2, {'pair': "V<1*l1"})
