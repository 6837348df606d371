import random

from fractions import Fraction
from math import factorial

import pytest

from ambient_dirac.base import EngineError, ExceptionalWeight, Parity
from ambient_dirac.solvers import (
    InvariantOperator,
    OperatorKind,
    critical_weight,
    even_constant_formula,
    even_extend,
    make_symbol,
    odd_constant_formula,
    odd_extend,
    op_L,
    op_R,
    preferred_representative,
    proportionality_constant
)
from ambient_dirac.suites import random_atom_vector, representative_independence
from ambient_dirac.weighted import (
    HALF_N,
    W,
    Atom,
    AtomVector,
    FilteredSpinor,
    scalar_to_string,
    sym
)


def slot1(sigma, m, coefficient):
    return FilteredSpinor.from_atom(Atom(sigma, m), 1, 2, coefficient)

def symbol_for(parity, p):
    return make_symbol(critical_weight(parity, p))


def test_critical_weight():
    assert critical_weight(Parity.EVEN, 2) == 2 - HALF_N
    assert critical_weight(Parity.ODD, 1) == 2 - HALF_N
    with pytest.raises(EngineError):
        critical_weight(Parity.EVEN, 0)

def test_make_symbol():
    assert make_symbol().weight == W - 1
    assert make_symbol(sym(3)).name == 'sigma'


@pytest.mark.parametrize('parity,p,operator,m,coefficient', [
    (Parity.EVEN, 1, op_L, 1, 2),
    (Parity.EVEN, 2, op_L, 3, -1),
    (Parity.ODD, 1, op_L, 3, Fraction(-1, 4)),
    (Parity.EVEN, 1, op_R, 1, 2),
    (Parity.EVEN, 2, op_R, 3, 4),
    (Parity.ODD, 1, op_R, 3, -2),
])
def test_certified_operator_values(parity, p, operator, m, coefficient):
    sigma = symbol_for(parity, p)
    assert operator(parity, p, sigma).value == slot1(sigma, m, coefficient)

def test_odd_solution_p1():
    sigma = symbol_for(Parity.ODD, 1)
    psi = odd_extend(sigma, max_order=2).representative
    assert psi == FilteredSpinor(sigma.weight, 0, 3, {
        0: AtomVector.single(Atom(sigma)),
        1: AtomVector.single(Atom(sigma, 1), Fraction(-1, 2)),
        2: AtomVector.single(Atom(sigma, 2), Fraction(-1, 4)),
    })

def test_preferred_representative_p1():
    sigma = symbol_for(Parity.ODD, 1)
    assert preferred_representative(sigma) == FilteredSpinor(sigma.weight + 1, 1, 3, {
        1: AtomVector.single(Atom(sigma)),
        2: AtomVector.single(Atom(sigma, 1), Fraction(-1, 2)),
    })

def test_preferred_representative_at_exceptional_weight():
    # the first odd step divides by 2(w + n/2 - 1)
    with pytest.raises(ExceptionalWeight):
        preferred_representative(make_symbol(1 - HALF_N))

def test_even_solution_p2():
    sigma = symbol_for(Parity.EVEN, 2)
    result = even_extend(sigma, max_order=4)
    assert result.representative.slot(2) == AtomVector.single(Atom(sigma, 1), Fraction(-1, 2))
    assert result.representative.slot(3) == AtomVector.single(Atom(sigma, 2), Fraction(-1, 4))
    assert result.obstructed
    assert result.obstruction_slot == 2
    assert result.defect.slot(2) == AtomVector.single(Atom(sigma, 3), -1)


@pytest.mark.parametrize('parity,solver', [(Parity.EVEN, even_extend), (Parity.ODD, odd_extend)])
def test_generic_weight_is_unobstructed(parity, solver):
    result = solver(make_symbol(W), max_order=8)
    assert not result.obstructed
    assert result.solvable_to == (7 if parity == Parity.EVEN else 8)
    assert result.defect.with_window(0, result.solvable_to).is_zero
    assert set(result.denominators) == {W + HALF_N - m for m in range(1, 5)}

def test_generic_first_even_correction():
    sigma = make_symbol(W)
    phi2 = even_extend(sigma, max_order=2).representative.slot(2)
    assert phi2 == AtomVector.single(Atom(sigma, 1), -1 / (2 * (W + HALF_N - 1)))

@pytest.mark.parametrize('p', range(1, 6))
def test_even_obstruction_position(p):
    result = even_extend(symbol_for(Parity.EVEN, p), max_order=2 * p + 2)
    assert result.obstructed
    assert result.obstruction_slot == 2 * p - 2
    assert result.solvable_to == 2 * p - 2

@pytest.mark.parametrize('p', range(1, 6))
def test_odd_obstruction_position(p):
    result = odd_extend(symbol_for(Parity.ODD, p), max_order=2 * p + 2)
    assert result.obstructed
    assert result.obstruction_slot == 2 * p
    assert result.raw_obstruction().lowest_slot == 0
    assert result.top_obstruction().lowest_slot == 1

def test_extension_result_to_dict():
    result = odd_extend(symbol_for(Parity.ODD, 1), max_order=3)
    data = result.to_dict()
    assert data['parity'] == 'odd'
    assert data['obstruction_slot'] == 2
    assert data['obstruction'] == 'x*(-1/4*y^3*sigma)'

def test_lift_must_start_above_the_datum():
    sigma = symbol_for(Parity.EVEN, 1)
    with pytest.raises(EngineError):
        even_extend(sigma, lift=FilteredSpinor.from_atom(Atom(sigma), 1))


@pytest.mark.parametrize('p', range(1, 6))
def test_operator_weights(p):
    for parity, weight in ((Parity.EVEN, -sym(p) - HALF_N + 1), (Parity.ODD, -sym(p) - HALF_N)):
        sigma = symbol_for(parity, p)
        assert op_L(parity, p, sigma).value.weight == weight
        assert op_R(parity, p, sigma).value.weight == weight

def test_operator_order_and_record():
    L = op_L(Parity.ODD, 2)
    assert L.kind == OperatorKind.L_ODD
    assert L.order == 5
    assert L.to_dict()['kind'] == 'L_odd'
    assert op_R(Parity.EVEN, 3).order == 6

def test_invariant_operator_rejects_slot_zero():
    sigma = make_symbol(W)
    with pytest.raises(EngineError):
        InvariantOperator(OperatorKind.L_EVEN, 1, FilteredSpinor.from_atom(Atom(sigma), 0))


@pytest.mark.parametrize('p', range(1, 6))
def test_even_constants(p):
    expected = Fraction((-1) ** (p - 1) * 2 ** (2 * p - 2) * factorial(p - 1) ** 2)
    assert proportionality_constant(Parity.EVEN, p) == expected
    assert even_constant_formula(p) == expected

def test_constant_anchors():
    assert proportionality_constant(Parity.EVEN, 1) == 1
    assert proportionality_constant(Parity.EVEN, 2) == -4
    assert proportionality_constant(Parity.ODD, 1) == 8

@pytest.mark.parametrize('p', range(1, 6))
def test_odd_constants_are_nonzero_rationals(p):
    constant = proportionality_constant(Parity.ODD, p)
    assert isinstance(constant, Fraction)
    assert constant != 0
    assert constant == odd_constant_formula(p)


@pytest.mark.parametrize('parity', list(Parity))
@pytest.mark.parametrize('p', [1, 2])
def test_representative_independence(parity, p):
    report = representative_independence(parity, p, trials=3, seed=11)
    assert report.passed
    assert report.summary['total'] == 6

def test_odd_operators_do_not_depend_on_n():
    value = op_L(Parity.ODD, 2).value.slot(1)
    assert [scalar_to_string(c) for c in value.terms.values()] == ['1/64']

@pytest.mark.parametrize('parity,p,slots', [
    (Parity.EVEN, 2, [4, 5]),
    (Parity.EVEN, 3, [6]),
    (Parity.ODD, 1, [3, 4]),
    (Parity.ODD, 2, [5]),
])
def test_lifts_through_the_critical_slot_keep_L(parity, p, slots):
    sigma = symbol_for(parity, p)
    weight = sigma.weight + 1 if parity == Parity.EVEN else sigma.weight
    rng = random.Random(f'{parity.name}:{p}')
    lift = FilteredSpinor(weight, slots[0], None,
        {k: random_atom_vector(rng, weight - k) for k in slots})
    assert op_L(parity, p, sigma, lift=lift).value == op_L(parity, p, sigma).value

@pytest.mark.parametrize('p', range(1, 4))
def test_odd_pipeline_runs_at_critical_weight(p):
    result = odd_extend(symbol_for(Parity.ODD, p), max_order=2 * p + 1)
    assert result.obstructed
    assert proportionality_constant(Parity.ODD, p) == odd_constant_formula(p)
