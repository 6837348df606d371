'''
Text front end for the enveloping algebra: a tokenizer and recursive-descent parser for
expressions such as "[Q,y] + 1/2*x*y^2", their evaluation to normal form, and the canonical
printed form of an AlgebraElement.

Grammar:

    expr   := '-'? term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := 'x' | 'y' | 'h' | 'Q' | 'D' | rational | '(' expr ')' | '[' expr ',' expr ']'

Q and D stand for x^2 and y^2. Rationals are written n or n/d.
'''

import logging
import re

from fractions import Fraction
from typing import Iterator, NamedTuple

from ambient_dirac.algebra import AlgebraElement, super_commutator
from ambient_dirac.base import ExprSyntaxError


TOKENS = {
    'name':     r'[xyhQD]',
    'number':   r'\d+(?:/\d+)?',
    'plus':     r'\+',
    'minus':    r'-',
    'times':    r'\*',
    'power':    r'\^',
    'lpar':     r'\(',
    'rpar':     r'\)',
    'lbracket': r'\[',
    'rbracket': r'\]',
    'comma':    r',',
    'skip':     r'\s+',
    'error':    r'.',
}
TOKEN_REGEX = re.compile('|'.join(f'(?P<{name}>{pattern})' for name, pattern in TOKENS.items()))
# Q and D are sugar for these exponents of x and y
ALIASES = {
    'Q': ('x', 2),
    'D': ('y', 2),
}


class Token(NamedTuple):
    type: str
    value: str
    position: int


# Syntax tree nodes

class Literal(NamedTuple):
    value: Fraction
    position: int


class Generator(NamedTuple):
    name: str
    position: int


class Negation(NamedTuple):
    operand: object
    position: int


class BinaryOp(NamedTuple):
    op: str
    left: object
    right: object
    position: int


class Power(NamedTuple):
    base: object
    exponent: int
    position: int


class Bracket(NamedTuple):
    left: object
    right: object
    position: int


Expr = Literal | Generator | Negation | BinaryOp | Power | Bracket


def tokenize(text: str) -> Iterator[Token]:
    for match in TOKEN_REGEX.finditer(text):
        kind = match.lastgroup
        value = match.group()
        if kind == 'skip':
            continue
        if kind == 'error':
            raise ExprSyntaxError(f'Unknown symbol "{value}"', match.start())
        yield Token(kind, value, match.start())


class Parser(object):
    '''
    Recursive-descent parser over the token stream of a single expression.
    '''

    def __init__(self, text: str):
        self.text = text
        self.tokens = list(tokenize(text))
        self.index = 0

    def peek(self) -> Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def position(self) -> int:
        token = self.peek()
        return token.position if token else len(self.text)

    def advance(self,
        expected: str = None
    ) -> Token:
        token = self.peek()
        if token is None:
            raise ExprSyntaxError('Unexpected end of expression', len(self.text))
        if expected and token.type != expected:
            raise ExprSyntaxError(f'Expected {expected}, found "{token.value}"', token.position)
        self.index += 1
        return token

    def parse(self) -> Expr:
        tree = self.expr()
        token = self.peek()
        if token is not None:
            raise ExprSyntaxError(f'Unexpected "{token.value}"', token.position)
        return tree

    def expr(self) -> Expr:
        token = self.peek()
        if token is not None and token.type == 'minus':
            self.advance()
            tree = Negation(self.term(), token.position)
        else:
            tree = self.term()
        while (token := self.peek()) is not None and token.type in ('plus', 'minus'):
            self.advance()
            op = '+' if token.type == 'plus' else '-'
            tree = BinaryOp(op, tree, self.term(), token.position)
        return tree

    def term(self) -> Expr:
        tree = self.factor()
        while (token := self.peek()) is not None and token.type == 'times':
            self.advance()
            tree = BinaryOp('*', tree, self.factor(), token.position)
        return tree

    def factor(self) -> Expr:
        tree = self.base()
        token = self.peek()
        if token is not None and token.type == 'power':
            self.advance()
            exponent = self.peek()
            if exponent is None or exponent.type != 'number' or '/' in exponent.value:
                raise ExprSyntaxError('Exponents must be nonnegative integers', self.position())
            self.advance()
            tree = Power(tree, int(exponent.value), token.position)
        return tree

    def base(self) -> Expr:
        token = self.peek()
        if token is None:
            raise ExprSyntaxError('Unexpected end of expression', len(self.text))

        if token.type == 'name':
            self.advance()
            if token.value in ALIASES:
                name, exponent = ALIASES[token.value]
                return Power(Generator(name, token.position), exponent, token.position)
            return Generator(token.value, token.position)

        if token.type == 'number':
            self.advance()
            numerator, _, denominator = token.value.partition('/')
            if denominator and int(denominator) == 0:
                raise ExprSyntaxError('Division by zero', token.position)
            return Literal(Fraction(int(numerator), int(denominator or 1)), token.position)

        if token.type == 'lpar':
            self.advance()
            tree = self.expr()
            self.advance('rpar')
            return tree

        if token.type == 'lbracket':
            self.advance()
            left = self.expr()
            self.advance('comma')
            right = self.expr()
            self.advance('rbracket')
            return Bracket(left, right, token.position)

        raise ExprSyntaxError(f'Unexpected "{token.value}"', token.position)


def parse(text: str) -> Expr:
    '''
    Parses an expression, raising ExprSyntaxError with the offending position on bad input.
    '''

    return Parser(text).parse()

def evaluate(tree: Expr) -> AlgebraElement:
    '''
    Evaluates a syntax tree to its normal form. Brackets are super-commutators and raise
    MixedParity on inhomogeneous arguments.
    '''

    if isinstance(tree, Literal):
        return AlgebraElement.scalar(tree.value)
    if isinstance(tree, Generator):
        return AlgebraElement.generator(tree.name)
    if isinstance(tree, Negation):
        return -evaluate(tree.operand)
    if isinstance(tree, Power):
        return evaluate(tree.base) ** tree.exponent
    if isinstance(tree, Bracket):
        return super_commutator(evaluate(tree.left), evaluate(tree.right))
    if isinstance(tree, BinaryOp):
        left, right = evaluate(tree.left), evaluate(tree.right)
        if tree.op == '+':
            return left + right
        if tree.op == '-':
            return left - right
        return left * right
    raise TypeError(f'Not an expression node: {tree!r}')

def normal_form(text: str) -> AlgebraElement:
    '''
    Parses and evaluates in one step.
    '''

    element = evaluate(parse(text))
    logging.debug(f'Normal form of "{text}": {format_element(element)}')
    return element

def _format_monomial(monomial) -> str:
    factors = []
    for letter, exponent in zip('xyh', monomial.key):
        if exponent == 1:
            factors.append(letter)
        elif exponent > 1:
            factors.append(f'{letter}^{exponent}')
    return '*'.join(factors)

def format_element(element: AlgebraElement) -> str:
    '''
    Prints an element with its largest monomial first, e.g. "-x*y + 2*h". The zero element prints
    as "0". Parsing the output gives back the same element.
    '''

    if element.is_zero:
        return '0'

    text = ''
    for index, (monomial, coefficient) in enumerate(element.items()):
        if index == 0:
            text += '-' if coefficient < 0 else ''
        else:
            text += ' - ' if coefficient < 0 else ' + '
        magnitude = abs(coefficient)
        word = _format_monomial(monomial)
        if not word:
            text += str(magnitude)
        elif magnitude == 1:
            text += word
        else:
            text += f'{magnitude}*{word}'
    return text
