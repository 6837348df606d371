from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ambient_dirac.algebra import H, X, Y, AlgebraElement, word_to_element
from ambient_dirac.base import ExprSyntaxError, MixedParity
from ambient_dirac.expressions import (
    Bracket,
    Generator,
    Power,
    format_element,
    normal_form,
    parse,
    tokenize
)


def test_q_y_bracket():
    assert format_element(normal_form('[Q,y]')) == '-2*x'

def test_printing_order():
    assert format_element(Y * X) == '-x*y + 2*h'
    assert format_element(AlgebraElement()) == '0'
    assert format_element(normal_form('3/2*x*y^2*h - 1')) == '3/2*x*y^2*h - 1'

def test_aliases():
    assert normal_form('Q') == X * X
    assert normal_form('D') == Y * Y
    assert normal_form('Q^2') == X ** 4

def test_parse_tree():
    tree = parse('[x, y^2]')
    assert isinstance(tree, Bracket)
    assert tree.left == Generator('x', 1)
    assert isinstance(tree.right, Power)
    assert tree.right.exponent == 2

def test_tokenize_skips_whitespace():
    assert [token.type for token in tokenize(' x *  2/3 ')] == ['name', 'times', 'number']

def test_leading_minus_and_parentheses():
    assert normal_form('-(x + y)') == -X - Y
    assert normal_form('2*(h - 1)*x') == 2 * X * H
    assert normal_form('1/2') == Fraction(1, 2)

@pytest.mark.parametrize('text,position', [
    ('x +', 3),
    ('x $ y', 2),
    ('[x,y', 4),
    ('(x', 2),
    ('x y', 2),
    ('1/0', 0),
    ('x^1/2', 2),
    ('x^', 2),
    ('[x y]', 3),
])
def test_syntax_errors(text, position):
    with pytest.raises(ExprSyntaxError) as error:
        parse(text)
    assert error.value.position == position
    assert error.value.to_dict()['position'] == position

def test_mixed_parity_bracket():
    with pytest.raises(MixedParity):
        normal_form('[x + h, y]')


@settings(deadline=None, max_examples=50)
@given(st.lists(st.tuples(st.text(alphabet='xyh', max_size=4),
                          st.fractions(min_value=-4, max_value=4, max_denominator=4)),
                min_size=1, max_size=4))
def test_format_then_parse_is_identity(terms):
    element = AlgebraElement()
    for word, coefficient in terms:
        element = element + word_to_element(word).scale(coefficient)
    assert normal_form(format_element(element)) == element
