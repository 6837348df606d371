import pytest

from ambient_dirac.algebra import AlgebraElement
from ambient_dirac.base import CaseStatus, Parity, UsageError
from ambient_dirac.suites import (
    RELATIONS,
    SUITES,
    displayed_even_constant,
    displayed_odd_constant,
    odd_expansion,
    run_suite,
    verify_constants
)


def statuses(report):
    return {case.id: case.status for case in report.cases}

def flagged(report):
    return sorted(case.id for case in report.cases if case.status == CaseStatus.FLAGGED)


def test_suite_registry():
    assert set(SUITES) == {'relations', 'prop2', 'prop3', 'prop4', 'jacobi', 'confluence',
        'interchange', 'flat', 'kernel', 'yiso', 'oracle', 'solvers', 'independence', 'constants'}
    with pytest.raises(UsageError):
        run_suite('nonsense')

def test_relations():
    report = run_suite('relations', signatures=[(1, 1)], trials=2, deg=2)
    assert report.passed
    assert report.suite == 'relations'
    ids = statuses(report)
    assert all(f'relations/[{left},{right}]' in ids for left, right, _ in RELATIONS)
    assert all(f'flat/(1,1)/[{left},{right}]' in ids for left, right, _ in RELATIONS)

def test_prop2():
    report = run_suite('prop2', pmax=2, seed=1)
    assert report.passed
    assert report.summary['total'] == 5 * 8 * 4

def test_prop3_flags_only_two_displays():
    report = run_suite('prop3', pmax=6)
    assert report.passed
    assert report.summary['total'] == 8 * 6
    assert flagged(report) == sorted(
        [f'prop3/x2p_y/p={p}' for p in range(1, 7)] + [f'prop3/x2p+1_y2/p={p}' for p in range(1, 7)])

def test_prop4():
    report = run_suite('prop4', pmax=3)
    assert report.passed
    ids = statuses(report)
    assert ids['prop4/even/Z2'] == CaseStatus.PASS
    assert ids['prop4/odd/certified/p=1'] == CaseStatus.PASS
    assert all(ids[f'prop4/even/p={p}'] == CaseStatus.PASS for p in range(1, 4))

def test_odd_expansion_p1():
    h = AlgebraElement.monomial(0, 0, 1)
    assert odd_expansion(1) == (8 * h, 4 * h)

def test_jacobi():
    report = run_suite('jacobi')
    assert report.passed
    assert report.summary['total'] == 125

def test_confluence_is_deterministic():
    first = run_suite('confluence', seed=7, trials=30)
    second = run_suite('confluence', seed=7, trials=30)
    assert first.passed
    assert first.to_dict(timestamp=False) == second.to_dict(timestamp=False)

def test_interchange():
    report = run_suite('interchange', pmax=3)
    assert report.passed
    ids = statuses(report)
    assert ids['interchange/reverses/yx'] == CaseStatus.FLAGGED
    assert ids['transpose/reverses/yx'] == CaseStatus.PASS
    assert ids['interchange/y2p_x->x2p_y/p=2'] == CaseStatus.PASS

def test_flat():
    report = run_suite('flat', signatures=[(1, 1), (2, 1)], trials=3, deg=2)
    assert report.passed
    assert report.summary['total'] == 2 * 14
    assert report.cases[0].id.startswith('flat/(1,1)/')

def test_kernel():
    report = run_suite('kernel', trials=2, max_dimension=4)
    assert report.passed
    assert 'kernel/(2,2)/v0' in statuses(report)

def test_oracle():
    report = run_suite('oracle', trials=20, seed=5)
    assert report.passed
    assert report.summary['total'] == 20

def test_yiso():
    report = run_suite('yiso')
    assert report.passed
    ids = statuses(report)
    assert ids['yiso/s(1,5)/exceptional'] == CaseStatus.PASS
    assert ids['yiso/x-inverse/s(2,3)/sign'] == CaseStatus.FLAGGED
    assert ids['yiso/x-inverse/s(1,2)/exceptional'] == CaseStatus.FLAGGED
    assert ids['yiso/x-inverse/s(3,4)/raises'] == CaseStatus.PASS

def test_solvers():
    report = run_suite('solvers', pmax=3)
    assert report.passed
    assert report.summary['flagged'] == 0

def test_independence():
    report = run_suite('independence', pmax=1, trials=2)
    assert report.passed
    assert report.summary['total'] == 2 * 2 * 2

def test_constants():
    report = verify_constants(pmax=3)
    assert report.passed
    ids = statuses(report)
    assert ids['constants/even/anchors'] == CaseStatus.PASS
    assert ids['constants/odd/anchor'] == CaseStatus.PASS
    assert ids['constants/odd/p=1/display'] == CaseStatus.FLAGGED
    assert ids['constants/even/p=1/display'] == CaseStatus.FLAGGED

def test_constants_single_parity():
    report = verify_constants(pmax=2, parity=Parity.ODD)
    assert all(case.id.startswith('constants/odd') for case in report.cases)

def test_displayed_constants():
    assert displayed_odd_constant(1) == 6
    assert displayed_even_constant(1) == -1
