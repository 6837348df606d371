import random

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ambient_dirac.algebra import word_to_element
from ambient_dirac.base import DimensionMismatch, NotNull, UnsupportedSignature, ZeroVector
from ambient_dirac.clifford import (
    AmbientOperator,
    AmbientOps,
    PolySpinor,
    Signature,
    apply_ops,
    basic_null_vector,
    build_gammas,
    is_tangential,
    lies_in_image,
    null_kernel_analysis,
    random_null_vector,
    reduce_mod_Q
)
from ambient_dirac.expressions import normal_form


SIGNATURES = [Signature(1, 1), Signature(2, 1), Signature(2, 2), Signature(3, 2)]


def ops_for(signature):
    return AmbientOps(build_gammas(signature))


def test_signature_validation():
    with pytest.raises(UnsupportedSignature):
        Signature(1, 0)
    with pytest.raises(UnsupportedSignature):
        Signature(-1, 3)
    with pytest.raises(UnsupportedSignature):
        Signature.from_string('2;x')
    assert Signature.from_string('3,2') == Signature(3, 2)

@pytest.mark.parametrize('r,s,n,spinor_dim', [(1, 1, 0, 2), (2, 1, 1, 2), (2, 2, 2, 4), (3, 2, 3, 4),
                                              (4, 4, 6, 16)])
def test_signature_sizes(r, s, n, spinor_dim):
    signature = Signature(r, s)
    assert signature.n == n
    assert signature.spinor_dim == spinor_dim
    assert signature.metric == [1] * r + [-1] * s

@pytest.mark.parametrize('signature', SIGNATURES + [Signature(4, 3), Signature(1, 5)])
def test_clifford_relations(signature):
    assert build_gammas(signature).anticommutator_defects() == []

@pytest.mark.parametrize('signature', SIGNATURES)
def test_squares(signature):
    ops = ops_for(signature)
    rng = random.Random(3)
    for _ in range(3):
        psi = PolySpinor.random(signature, 3, rng)
        assert ops.x(ops.x(psi)) == ops.Q(psi)
        assert ops.y(ops.y(psi)) == ops.lap(psi)
        assert ops.x(ops.y(psi)) + ops.y(ops.x(psi)) == ops.h(psi).scale(2)

def test_h_on_constant():
    signature = Signature(2, 1)
    constant = PolySpinor.constant(signature, [1, 2])
    assert apply_ops(AmbientOperator.H, constant, signature) == constant.scale(Fraction(3, 2))

def test_spinor_shape_is_checked():
    with pytest.raises(DimensionMismatch):
        PolySpinor.constant(Signature(2, 2), [1, 0])
    with pytest.raises(DimensionMismatch):
        ops_for(Signature(2, 2)).x(PolySpinor.zero(Signature(1, 1)))
    with pytest.raises(DimensionMismatch):
        PolySpinor.zero(Signature(1, 1)) + PolySpinor.zero(Signature(2, 2))

def test_evaluate_at():
    signature = Signature(1, 1)
    psi = PolySpinor.monomial(signature, (2, 1), [1, (0, 1)])
    value = psi.evaluate_at([2, 3])
    assert value == PolySpinor.vector([12, (0, 12)])


@pytest.mark.parametrize('signature', [Signature(r, d - r) for d in range(2, 7) for r in range(1, d)])
def test_kernel_equals_image_at_basic_null_vector(signature):
    result = null_kernel_analysis(signature, basic_null_vector(signature))
    assert result.satisfies_lemma
    assert result.rank == signature.spinor_dim // 2

@pytest.mark.parametrize('signature', SIGNATURES)
def test_kernel_equals_image_at_random_null_vectors(signature):
    rng = random.Random(5)
    for _ in range(5):
        vector = random_null_vector(signature, rng)
        assert sum(eps * v ** 2 for eps, v in zip(signature.metric, vector)) == 0
        assert null_kernel_analysis(signature, vector).satisfies_lemma

def test_kernel_input_errors():
    signature = Signature(2, 2)
    with pytest.raises(NotNull):
        null_kernel_analysis(signature, [1, 0, 0, 0])
    with pytest.raises(ZeroVector):
        null_kernel_analysis(signature, [0, 0, 0, 0])
    with pytest.raises(DimensionMismatch):
        null_kernel_analysis(signature, [1, 1])
    with pytest.raises(UnsupportedSignature):
        random_null_vector(Signature(3, 0), random.Random(0))

def test_tangential_spinors():
    signature = Signature(2, 1)
    ops = ops_for(signature)
    rng = random.Random(8)
    phi = PolySpinor.random(signature, 2, rng)
    assert is_tangential(ops.x(phi), signature)
    assert reduce_mod_Q(ops.Q(phi), signature).is_zero
    assert not is_tangential(PolySpinor.constant(Signature(1, 1), [1, 0]), Signature(1, 1))

def test_value_of_x_phi_lies_in_image():
    signature = Signature(2, 2)
    ops = ops_for(signature)
    vector = basic_null_vector(signature)
    phi = PolySpinor.random(signature, 1, random.Random(2))
    assert lies_in_image(ops.clifford_matrix(vector), ops.x(phi).evaluate_at(vector))


@settings(deadline=None, max_examples=25)
@given(st.text(alphabet='xyh', min_size=1, max_size=4), st.integers(min_value=0, max_value=1000))
def test_normal_form_agrees_with_operators(word, seed):
    signature = Signature(2, 1)
    ops = ops_for(signature)
    psi = PolySpinor.random(signature, 2, random.Random(seed), terms=2)
    assert ops.apply_element(word_to_element(word), psi) == ops.apply_word(word, psi)

def test_q_y_bracket_in_flat_model():
    signature = Signature(2, 2)
    ops = ops_for(signature)
    psi = PolySpinor.random(signature, 3, random.Random(4))
    bracket = ops.Q(ops.y(psi)) - ops.y(ops.Q(psi))
    assert bracket == ops.apply_element(normal_form('[Q,y]'), psi)
