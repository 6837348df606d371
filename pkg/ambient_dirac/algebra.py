'''
Normal-form arithmetic in the enveloping algebra of the graded Lie superalgebra generated by x, y
and h subject to

    [x, y] = 2h        [x, h] = -x        [y, h] = y

where x and y are odd and h is even. Every element is stored as a combination of ordered monomials
x^a y^b h^c with exact rational coefficients. Products are normalized by moving y's to the right
of x's and h's to the right of both, using

    y x^(2k)   = x^(2k) y + 2k x^(2k-1)
    y x^(2k+1) = -x^(2k+1) y + 2 x^(2k) (h + k)
    q(h) x^p   = x^p q(h + p)
    q(h) y^p   = y^p q(h - p)

The quadratic elements Q = x^2 and D = y^2 are not separate generators.
'''

import logging

from enum import Enum
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import comb

from ambient_dirac.base import EngineError, MixedParity, Parity


GENERATORS = 'xyh'
# Left-hand sides of the rewriting system on words, with the words they rewrite into
REWRITE_RULES = {
    'yx': ((2, 'h'), (-1, 'xy')),
    'hx': ((1, 'xh'), (1, 'x')),
    'hy': ((1, 'yh'), (-1, 'y')),
}


# Polynomials in h are lists of Fractions, constant term first

def _shifted_h_power(shift, power: int) -> list[Fraction]:
    '''
    Coefficients of (h + shift)^power
    '''

    shift = Fraction(shift)
    return [comb(power, k) * shift ** (power - k) for k in range(power + 1)]

def _poly_mul(left: list[Fraction], right: list[Fraction]) -> list[Fraction]:
    result = [Fraction(0)] * (len(left) + len(right) - 1)
    for i, a in enumerate(left):
        if a == 0:
            continue
        for j, b in enumerate(right):
            result[i + j] += a * b
    return result


@total_ordering
class Monomial(object):
    '''
    The ordered word x^xdeg y^ydeg h^hdeg. Monomials sort graded-lexicographically on
    (xdeg, ydeg, hdeg), which is the order elements are printed in (largest first).
    '''

    __slots__ = ('xdeg', 'ydeg', 'hdeg')

    def __init__(self,
        xdeg: int = 0,
        ydeg: int = 0,
        hdeg: int = 0
    ):
        if min(xdeg, ydeg, hdeg) < 0:
            raise EngineError(f'Monomial exponents must be nonnegative, got ({xdeg}, {ydeg}, {hdeg})')
        self.xdeg = xdeg
        self.ydeg = ydeg
        self.hdeg = hdeg

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.xdeg, self.ydeg, self.hdeg)

    @property
    def degree(self) -> int:
        return self.xdeg + self.ydeg + self.hdeg

    @property
    def parity(self) -> Parity:
        return Parity((self.xdeg + self.ydeg) % 2)

    @property
    def weight(self) -> int:
        '''
        Eigenvalue of ad(h); x raises it by one and y lowers it by one.
        '''

        return self.xdeg - self.ydeg

    def to_dict(self) -> dict:
        return {
            'xdeg': self.xdeg,
            'ydeg': self.ydeg,
            'hdeg': self.hdeg
        }

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.key == other.key

    def __lt__(self, other):
        return (self.degree, self.key) < (other.degree, other.key)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f'<Monomial "x^{self.xdeg} y^{self.ydeg} h^{self.hdeg}">'


class AlgebraElement(object):
    '''
    A finite combination of Monomials with nonzero Fraction coefficients. Two elements are equal
    exactly when their coefficient maps are equal. Elements are never modified after construction.

        - terms: A dict whose keys are Monomials or (xdeg, ydeg, hdeg) tuples and whose values are
            anything Fraction accepts. Repeated keys are summed and zero coefficients dropped.
    '''

    def __init__(self,
        terms: dict = None
    ):
        collected = {}
        for monomial, coefficient in (terms or {}).items():
            if not isinstance(monomial, Monomial):
                monomial = Monomial(*monomial)
            collected[monomial] = collected.get(monomial, Fraction(0)) + Fraction(coefficient)
        self._terms = {monomial: coefficient for monomial, coefficient in collected.items()
                       if coefficient != 0}

    @classmethod
    def scalar(cls, value) -> 'AlgebraElement':
        return cls({(0, 0, 0): value})

    @classmethod
    def monomial(cls,
        xdeg: int = 0,
        ydeg: int = 0,
        hdeg: int = 0,
        coefficient = 1
    ) -> 'AlgebraElement':
        return cls({(xdeg, ydeg, hdeg): coefficient})

    @classmethod
    def generator(cls, name: str) -> 'AlgebraElement':
        '''
        Returns x, y or h by name.
        '''

        if name not in GENERATORS:
            raise EngineError(f'Unknown generator "{name}"')
        return cls.monomial(*[int(name == g) for g in GENERATORS])

    @classmethod
    def h_polynomial(cls,
        coefficients: list,
        shift = 0
    ) -> 'AlgebraElement':
        '''
        Returns q(h + shift) where q has the given coefficients, constant term first.
        '''

        terms = {}
        for power, coefficient in enumerate(coefficients):
            for k, c in enumerate(_shifted_h_power(shift, power)):
                terms[(0, 0, k)] = terms.get((0, 0, k), Fraction(0)) + Fraction(coefficient) * c
        return cls(terms)

    @classmethod
    def h_rising_factorial(cls,
        shift,
        length: int
    ) -> 'AlgebraElement':
        '''
        Returns (h + shift)(h + shift + 1)...(h + shift + length - 1); the empty product is 1.
        '''

        result = cls.scalar(1)
        for i in range(length):
            result = result * cls.h_polynomial([Fraction(shift) + i, 1])
        return result

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, Fraction]]:
        '''
        Terms in printing order, largest monomial first
        '''

        return sorted(self._terms.items(), key=lambda item: item[0], reverse=True)

    def coefficient(self,
        xdeg: int = 0,
        ydeg: int = 0,
        hdeg: int = 0
    ) -> Fraction:
        return self._terms.get(Monomial(xdeg, ydeg, hdeg), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return len(self._terms) == 0

    @property
    def parity(self) -> Parity | None:
        '''
        The common parity of all terms, or None when the element mixes parities. Zero is
        homogeneous of every parity and reports EVEN.
        '''

        parities = {monomial.parity for monomial in self._terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else Parity.EVEN

    @property
    def min_xdeg(self) -> int | None:
        if self.is_zero:
            return None
        return min(monomial.xdeg for monomial in self._terms)

    def scale(self, factor) -> 'AlgebraElement':
        factor = Fraction(factor)
        return AlgebraElement({m: c * factor for m, c in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement.scalar(other)
        terms = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            terms[monomial] = terms.get(monomial, Fraction(0)) + coefficient
        return AlgebraElement(terms)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = AlgebraElement.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise EngineError('Negative powers do not exist in the enveloping algebra')
        result = AlgebraElement.scalar(1)
        for _ in range(exponent):
            result = multiply(result, self)
        return result

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            try:
                other = AlgebraElement.scalar(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        from ambient_dirac.expressions import format_element
        return format_element(self)

    def __repr__(self):
        return f'<AlgebraElement "{self}">'


ONE = AlgebraElement.scalar(1)
X = AlgebraElement.generator('x')
Y = AlgebraElement.generator('y')
H = AlgebraElement.generator('h')


@lru_cache(maxsize=None)
def _y_power_through_x_power(
    ypower: int,
    xpower: int
) -> tuple:
    '''
    Normal form of y^ypower x^xpower as a tuple of ((xdeg, ydeg, hdeg), coefficient) pairs.
    '''

    if ypower == 0 or xpower == 0:
        return (((xpower, ypower, 0), Fraction(1)),)

    if ypower == 1:
        k, odd = divmod(xpower, 2)
        if odd:
            element = AlgebraElement({
                (xpower, 1, 0): -1,
                (xpower - 1, 0, 1): 2,
                (xpower - 1, 0, 0): 2 * k
            })
        else:
            element = AlgebraElement({
                (xpower, 1, 0): 1,
                (xpower - 1, 0, 0): xpower
            })
    else:
        inner = AlgebraElement(dict(_y_power_through_x_power(ypower - 1, xpower)))
        element = multiply(Y, inner)

    return tuple((monomial.key, coefficient) for monomial, coefficient in element._terms.items())

def multiply(
    left: AlgebraElement,
    right: AlgebraElement
) -> AlgebraElement:
    '''
    Returns the normal form of the product left * right.

    For monomials, x^a y^b h^c * x^d y^e h^f = x^a NF(y^b x^d) y^e (h + d - e)^c h^f, and a term
    x^i y^j h^k of NF(y^b x^d) followed by y^e becomes x^i y^(j+e) (h - e)^k.
    '''

    terms = {}
    for m1, c1 in left._terms.items():
        for m2, c2 in right._terms.items():
            carried = _shifted_h_power(m2.xdeg - m2.ydeg, m1.hdeg)
            for (i, j, k), c3 in _y_power_through_x_power(m1.ydeg, m2.xdeg):
                coefficient = c1 * c2 * c3
                hpoly = _poly_mul(_shifted_h_power(-m2.ydeg, k), carried)
                for power, c4 in enumerate(hpoly):
                    if c4 == 0:
                        continue
                    key = (m1.xdeg + i, j + m2.ydeg, power + m2.hdeg)
                    terms[key] = terms.get(key, Fraction(0)) + coefficient * c4
    return AlgebraElement(terms)

def super_commutator(
    a: AlgebraElement,
    b: AlgebraElement
) -> AlgebraElement:
    '''
    Returns ab - (-1)^(|a||b|) ba. Both arguments must be of pure parity.
    '''

    pa, pb = a.parity, b.parity
    if pa is None or pb is None:
        bad = a if pa is None else b
        raise MixedParity(f'Cannot take a super-commutator with an element of mixed parity: {bad}')
    sign = -1 if pa == pb == Parity.ODD else 1
    return multiply(a, b) - multiply(b, a).scale(sign)

def reduce_mod_x_power(
    a: AlgebraElement,
    k: int
) -> AlgebraElement:
    '''
    Drops every monomial whose x-degree is at least k.
    '''

    return AlgebraElement({m: c for m, c in a.terms.items() if m.xdeg < k})

def interchange(a: AlgebraElement) -> AlgebraElement:
    '''
    Extends x -> -y, y -> -x, h -> -h to the enveloping algebra by reversing each normal-ordered
    word, substituting and renormalizing:

        x^a y^b h^c -> (-1)^(a+b+c) x^b y^a (h + b - a)^c

    The map is linear and squares to the identity on generators, but it does not reverse
    products; `transpose` is the anti-automorphism that does.
    '''

    terms = {}
    for monomial, coefficient in a.terms.items():
        sign = (-1) ** (monomial.xdeg + monomial.ydeg + monomial.hdeg)
        hpoly = _shifted_h_power(monomial.ydeg - monomial.xdeg, monomial.hdeg)
        for power, c in enumerate(hpoly):
            key = (monomial.ydeg, monomial.xdeg, power)
            terms[key] = terms.get(key, Fraction(0)) + sign * coefficient * c
    return AlgebraElement(terms)

def transpose(a: AlgebraElement) -> AlgebraElement:
    '''
    The anti-automorphism fixing h and exchanging x with y:

        x^a y^b h^c -> x^b y^a (h + b - a)^c

    transpose(ab) = transpose(b) transpose(a) for all a, b.
    '''

    terms = {}
    for monomial, coefficient in a.terms.items():
        hpoly = _shifted_h_power(monomial.ydeg - monomial.xdeg, monomial.hdeg)
        for power, c in enumerate(hpoly):
            key = (monomial.ydeg, monomial.xdeg, power)
            terms[key] = terms.get(key, Fraction(0)) + coefficient * c
    return AlgebraElement(terms)

def graded_jacobi_defect(
    a: AlgebraElement,
    b: AlgebraElement,
    c: AlgebraElement
) -> AlgebraElement:
    '''
    Returns [a,[b,c]] - [[a,b],c] - (-1)^(|a||b|) [b,[a,c]], which vanishes for pure-parity inputs.
    '''

    sign = -1 if a.parity == b.parity == Parity.ODD else 1
    return (super_commutator(a, super_commutator(b, c))
        - super_commutator(super_commutator(a, b), c)
        - super_commutator(b, super_commutator(a, c)).scale(sign))


class RewriteStrategy(Enum):
    '''
    Which redex `rewrite_word` rewrites first in each word.
    '''

    LEFTMOST  = 1
    RIGHTMOST = 2


def _find_redex(
    word: str,
    strategy: RewriteStrategy
) -> int | None:
    positions = [i for i in range(len(word) - 1) if word[i:i + 2] in REWRITE_RULES]
    if not positions:
        return None
    return positions[0] if strategy == RewriteStrategy.LEFTMOST else positions[-1]

def rewrite_word(
    word: str,
    strategy: RewriteStrategy = RewriteStrategy.LEFTMOST
) -> AlgebraElement:
    '''
    Reduces a word in x, y and h to normal form by literally applying the rewriting rules
    yx -> 2h - xy, hx -> xh + x and hy -> yh - y one redex at a time. This is slower than
    `multiply` and exists to check that the rewriting system is confluent.
    '''

    if any(letter not in GENERATORS for letter in word):
        raise EngineError(f'Words may only contain the letters x, y and h: "{word}"')

    pending = {word: Fraction(1)}
    normal = {}
    steps = 0
    while pending:
        current, coefficient = pending.popitem()
        if coefficient == 0:
            continue
        position = _find_redex(current, strategy)
        if position is None:
            key = (current.count('x'), current.count('y'), current.count('h'))
            normal[key] = normal.get(key, Fraction(0)) + coefficient
            continue
        steps += 1
        for factor, replacement in REWRITE_RULES[current[position:position + 2]]:
            rewritten = current[:position] + replacement + current[position + 2:]
            pending[rewritten] = pending.get(rewritten, Fraction(0)) + coefficient * factor

    logging.debug(f'Rewrote "{word}" with {strategy.name} strategy in {steps} steps')
    return AlgebraElement(normal)

def word_to_element(word: str) -> AlgebraElement:
    '''
    Returns the product of the generators spelled by `word`, normalized by `multiply`.
    '''

    result = ONE
    for letter in word:
        result = multiply(result, AlgebraElement.generator(letter))
    return result

def osp12_check() -> list[tuple[str, str, AlgebraElement, bool]]:
    '''
    Brackets every pair from the basis h, x, y, Q = x^2, D = y^2 and reports whether the result is
    again a combination of those five elements, i.e. whether they span a superalgebra (the
    orthosymplectic algebra osp(1|2)). Returns (left name, right name, bracket, closed) tuples.
    '''

    basis = { 'h': H, 'x': X, 'y': Y, 'Q': X * X, 'D': Y * Y }
    spanning = {Monomial(0, 0, 1), Monomial(1, 0, 0), Monomial(0, 1, 0), Monomial(2, 0, 0),
                Monomial(0, 2, 0)}
    names = list(basis)
    results = []
    for i, left in enumerate(names):
        for right in names[i:]:
            bracket = super_commutator(basis[left], basis[right])
            closed = set(bracket.terms).issubset(spanning)
            results.append((left, right, bracket, closed))
    return results
