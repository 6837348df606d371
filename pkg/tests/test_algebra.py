from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from ambient_dirac.algebra import (
    H,
    X,
    Y,
    AlgebraElement,
    Monomial,
    RewriteStrategy,
    graded_jacobi_defect,
    interchange,
    osp12_check,
    reduce_mod_x_power,
    rewrite_word,
    super_commutator,
    transpose,
    word_to_element
)
from ambient_dirac.base import EngineError, MixedParity, Parity
from ambient_dirac.expressions import normal_form


words = st.text(alphabet='xyh', min_size=1, max_size=5)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=5)
BASIS = ['x', 'y', 'h', 'Q', 'D']


def test_generator_products():
    assert Y * X == 2 * H - X * Y
    assert H * X == X * H + X
    assert H * Y == Y * H - Y
    assert X * Y == AlgebraElement.monomial(1, 1)

@pytest.mark.parametrize('left,right,expected', [
    ('x', 'x', '2*Q'),
    ('y', 'y', '2*D'),
    ('x', 'y', '2*h'),
    ('Q', 'x', '0'),
    ('Q', 'y', '-2*x'),
    ('Q', 'h', '-2*Q'),
    ('D', 'x', '2*y'),
    ('D', 'y', '0'),
    ('D', 'h', '2*D'),
    ('D', 'Q', '4*h'),
    ('x', 'h', '-x'),
    ('y', 'h', 'y'),
])
def test_relations(left, right, expected):
    assert super_commutator(normal_form(left), normal_form(right)) == normal_form(expected)

def test_mixed_parity_bracket_raises():
    with pytest.raises(MixedParity):
        super_commutator(X + H, Y)

def test_parity():
    assert (X * Y).parity == Parity.EVEN
    assert (X * X * Y).parity == Parity.ODD
    assert (X + H).parity is None
    assert AlgebraElement().parity == Parity.EVEN

def test_monomial_rejects_negative_exponents():
    with pytest.raises(EngineError):
        Monomial(-1, 0, 0)
    with pytest.raises(EngineError):
        X ** -1

def test_min_xdeg():
    assert AlgebraElement().min_xdeg is None
    assert (X * X * Y + H).min_xdeg == 0
    assert reduce_mod_x_power(Y ** 2 * X ** 2, 2) == normal_form('4*h')


@settings(deadline=None, max_examples=30)
@given(st.lists(rationals, min_size=1, max_size=4), st.integers(min_value=0, max_value=8))
def test_polynomial_shift_through_y(coefficients, p):
    q = AlgebraElement.h_polynomial(coefficients)
    yp = AlgebraElement.monomial(0, p)
    assert q * yp == yp * AlgebraElement.h_polynomial(coefficients, -p)
    assert yp * q == AlgebraElement.h_polynomial(coefficients, p) * yp

@settings(deadline=None, max_examples=30)
@given(st.lists(rationals, min_size=1, max_size=4), st.integers(min_value=0, max_value=8))
def test_polynomial_shift_through_x(coefficients, p):
    q = AlgebraElement.h_polynomial(coefficients)
    xp = AlgebraElement.monomial(p)
    assert q * xp == xp * AlgebraElement.h_polynomial(coefficients, p)


@pytest.mark.parametrize('p', range(1, 7))
def test_y_side_commutators(p):
    assert normal_form(f'[y^{2*p},x]') == normal_form(f'{2*p}*y^{2*p-1}')
    assert normal_form(f'[y^{2*p+1},x]') == normal_form(f'2*y^{2*p}*(h-{p})')
    assert normal_form(f'[y^{2*p},x^2]') == normal_form(f'{4*p}*y^{2*p-2}*(h-{p}+1)')
    assert normal_form(f'[y^{2*p+1},x^2]') == normal_form(f'{4*p}*y^{2*p-1}*(h-{p}) + 2*y^{2*p}*x')

@pytest.mark.parametrize('p', range(1, 7))
def test_x_side_commutators(p):
    assert normal_form(f'[x^{2*p+1},y]') == normal_form(f'2*x^{2*p}*(h+{p})')
    assert normal_form(f'[x^{2*p},y^2]') == normal_form(f'-{4*p}*x^{2*p-2}*(h+{p}-1)')
    assert normal_form(f'[x^{2*p},y]') == normal_form(f'-{2*p}*x^{2*p-1}')
    assert normal_form(f'[x^{2*p+1},y^2]') == normal_form(f'-2*x^{2*p}*y - {4*p}*x^{2*p-1}*(h+{p})')

def test_x_squared_y_sign():
    assert normal_form('[x^2,y]') == -2 * X
    assert normal_form('[x^2,y]') == normal_form('[Q,y]')


@pytest.mark.parametrize('p', range(1, 6))
def test_even_power_expansion(p):
    product = AlgebraElement.monomial(0, 2 * p) * AlgebraElement.monomial(2 * p)
    lead = AlgebraElement.h_rising_factorial(0, p).scale(4 ** p * factorial(p))
    remainder = product - lead
    assert remainder.is_zero or remainder.min_xdeg >= 2

def test_even_power_expansion_remainder_p1():
    remainder = Y ** 2 * X ** 2 - 4 * H
    assert remainder == X ** 2 * Y ** 2

def test_odd_power_expansion_p1():
    reduced = reduce_mod_x_power(Y ** 3 * X ** 3, 2)
    assert reduced == normal_form('8*h^2 + 8*h - 4*x*y*h')
    assert reduced == normal_form('4*h*y*x + 8*h')

def test_h_rising_factorial():
    assert AlgebraElement.h_rising_factorial(0, 0) == 1
    assert AlgebraElement.h_rising_factorial(-1, 2) == normal_form('(h-1)*h')


def test_interchange_generators():
    assert interchange(X) == -Y
    assert interchange(Y) == -X
    assert interchange(H) == -H
    for generator in (X, Y, H):
        assert interchange(interchange(generator)) == generator

def test_interchange_does_not_reverse_yx():
    assert interchange(Y * X) != interchange(X) * interchange(Y)

@settings(deadline=None, max_examples=40)
@given(words, words)
def test_transpose_reverses_products(left, right):
    a, b = word_to_element(left), word_to_element(right)
    assert transpose(a * b) == transpose(b) * transpose(a)

@settings(deadline=None, max_examples=40)
@given(words)
def test_transpose_is_an_involution(word):
    element = word_to_element(word)
    assert transpose(transpose(element)) == element


@settings(deadline=None, max_examples=40)
@given(st.sampled_from(BASIS), st.sampled_from(BASIS), st.sampled_from(BASIS))
def test_graded_jacobi(a, b, c):
    assert graded_jacobi_defect(normal_form(a), normal_form(b), normal_form(c)).is_zero

@settings(deadline=None, max_examples=40)
@given(words, words, words)
def test_associativity(a, b, c):
    a, b, c = word_to_element(a), word_to_element(b), word_to_element(c)
    assert (a * b) * c == a * (b * c)

@settings(deadline=None, max_examples=50)
@given(st.text(alphabet='xyh', min_size=1, max_size=7))
def test_rewriting_is_confluent(word):
    leftmost = rewrite_word(word, RewriteStrategy.LEFTMOST)
    rightmost = rewrite_word(word, RewriteStrategy.RIGHTMOST)
    assert leftmost == rightmost == word_to_element(word)

def test_rewrite_word_rejects_other_letters():
    with pytest.raises(EngineError):
        rewrite_word('xQy')

@settings(deadline=None, max_examples=40)
@given(words)
def test_words_are_homogeneous(word):
    element = word_to_element(word)
    expected = Parity((word.count('x') + word.count('y')) % 2)
    assert element.parity == expected
    weights = {monomial.weight for monomial in element.terms}
    assert weights <= {word.count('x') - word.count('y')}

def test_osp12_closes():
    results = osp12_check()
    assert len(results) == 15
    assert all(closed for _, _, _, closed in results)

def test_coefficients_are_fractions():
    element = normal_form('1/2*x*y - 3/4')
    assert element.coefficient(1, 1, 0) == Fraction(1, 2)
    assert element.coefficient() == Fraction(-3, 4)
