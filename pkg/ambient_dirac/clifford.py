'''
The flat model of the ambient operators. Spinor-valued polynomials on R^(r,s) are acted on by

    x   = gamma_a X^a               (Clifford multiplication by the position vector)
    y   = eps_a gamma_a d/dX^a      (the Dirac operator)
    h   = X^a d/dX^a + d/2
    Q   = eps_a (X^a)^2
    lap = eps_a d^2/(dX^a)^2

with d = r + s = n + 2, so that x x = Q and y y = lap. All arithmetic is over the Gaussian
rationals, so every check made here is an exact equality.
'''

import logging
import random

from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce

from sympy import eye, kronecker_product
from sympy.physics.matrices import msigma
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from ambient_dirac.algebra import AlgebraElement
from ambient_dirac.base import (
    DimensionMismatch,
    NotNull,
    UnsupportedSignature,
    ZeroVector,
    random_rational
)


def to_gaussian(value) -> object:
    '''
    Converts an int, Fraction, complex-free sympy number or (real, imaginary) pair of rationals into
    an element of QQ_I.
    '''

    if isinstance(value, tuple):
        real, imaginary = (Fraction(part) for part in value)
    else:
        real, imaginary = Fraction(value), Fraction(0)
    return QQ_I(QQ(real.numerator, real.denominator), QQ(imaginary.numerator, imaginary.denominator))

def gaussian_to_string(value) -> str:
    return str(QQ_I.to_sympy(value))


class Signature(object):
    '''
    A diagonal metric with r entries +1 followed by s entries -1.

        - r: Number of generators squaring to +1
        - s: Number of generators squaring to -1
    '''

    def __init__(self,
        r: int,
        s: int
    ):
        if r < 0 or s < 0 or r + s < 2:
            raise UnsupportedSignature(f'Signature ({r}, {s}) needs r, s >= 0 and r + s >= 2')
        self.r = r
        self.s = s

    @staticmethod
    def from_string(text: str) -> 'Signature':
        '''
        Parses "R,S" as typed on the command line.
        '''

        try:
            r, s = (int(part) for part in text.split(','))
        except ValueError:
            raise UnsupportedSignature(f'Signatures are written "R,S", not "{text}"')
        return Signature(r, s)

    @property
    def dimension(self) -> int:
        return self.r + self.s

    @property
    def n(self) -> int:
        return self.dimension - 2

    @property
    def spinor_dim(self) -> int:
        return 2 ** (self.dimension // 2)

    @property
    def metric(self) -> list[int]:
        return [1] * self.r + [-1] * self.s

    def to_dict(self) -> dict:
        return {
            'r': self.r,
            's': self.s
        }

    def __eq__(self, other):
        return isinstance(other, Signature) and (self.r, self.s) == (other.r, other.s)

    def __hash__(self):
        return hash((self.r, self.s))

    def __repr__(self):
        return f'<Signature "({self.r},{self.s})">'


class GammaSet(object):
    '''
    Gamma matrices for a signature, as dense DomainMatrices over QQ_I satisfying
    gamma_a gamma_b + gamma_b gamma_a = 2 eps_a delta_ab.
    '''

    def __init__(self,
        signature: Signature,
        matrices: list[DomainMatrix]
    ):
        self.signature = signature
        self.matrices = matrices

    @property
    def metric(self) -> list[int]:
        return self.signature.metric

    @property
    def size(self) -> int:
        return self.signature.spinor_dim

    def identity(self) -> DomainMatrix:
        return DomainMatrix.eye(self.size, QQ_I).to_dense()

    def anticommutator_defects(self) -> list[tuple[int, int]]:
        '''
        Returns the index pairs (a, b) at which the Clifford relation fails. Empty when valid.
        '''

        defects = []
        for a, ga in enumerate(self.matrices):
            for b, gb in enumerate(self.matrices):
                expected = self.identity() * to_gaussian(2 * self.metric[a] if a == b else 0)
                if (ga * gb + gb * ga).to_list() != expected.to_list():
                    defects.append((a, b))
        return defects

    def __repr__(self):
        return f'<GammaSet "{self.signature.r},{self.signature.s}">'


@lru_cache(maxsize=None)
def _build_gammas(r: int, s: int) -> GammaSet:
    signature = Signature(r, s)
    d = signature.dimension
    m = d // 2
    sigma1, sigma2, sigma3 = msigma(1), msigma(2), msigma(3)

    # Tensor products of Pauli matrices: sigma3 on the first k factors, sigma1 or sigma2 on the next
    euclidean = []
    for k in range(m):
        for middle in (sigma1, sigma2):
            factors = [sigma3] * k + [middle] + [eye(2)] * (m - k - 1)
            euclidean.append(reduce(kronecker_product, factors))
    if d % 2:
        euclidean.append(reduce(kronecker_product, [sigma3] * m))

    matrices = []
    for a, matrix in enumerate(euclidean):
        rows = [[QQ_I.from_sympy(entry) for entry in row] for row in matrix.tolist()]
        gamma = DomainMatrix(rows, matrix.shape, QQ_I)
        if a >= r:
            gamma = gamma * QQ_I(0, 1)
        matrices.append(gamma)

    logging.debug(f'Built {d} gamma matrices of size {signature.spinor_dim} for signature ({r},{s})')
    return GammaSet(signature, matrices)

def build_gammas(signature: Signature) -> GammaSet:
    '''
    Builds the gamma matrices for a signature from tensor products of Pauli matrices. The
    Euclidean generators are sigma3^(k) x sigma1 x 1 and sigma3^(k) x sigma2 x 1; in odd dimension
    the last one is sigma3^(m), which fixes one of the two inequivalent representations. Generators
    with index >= r are multiplied by i so that they square to -1. Results are cached.
    '''

    return _build_gammas(signature.r, signature.s)


class PolySpinor(object):
    '''
    A polynomial in X^0..X^(d-1) with spinor coefficients.

        - dimension: The ambient dimension d
        - spinor_dim: The length of the coefficient vectors
        - terms: A dict mapping exponent tuples of length d to column DomainMatrices over QQ_I
    '''

    def __init__(self,
        dimension: int,
        spinor_dim: int,
        terms: dict[tuple[int, ...], DomainMatrix] = None
    ):
        self.dimension = dimension
        self.spinor_dim = spinor_dim
        self._terms = {}
        for exponents, vector in (terms or {}).items():
            if len(exponents) != dimension or vector.shape != (spinor_dim, 1):
                raise DimensionMismatch(
                    f'Term {exponents} of shape {vector.shape} does not fit dimension {dimension} '
                    f'with spinors of length {spinor_dim}')
            if not vector.is_zero_matrix:
                self._terms[tuple(exponents)] = vector

    @staticmethod
    def vector(entries: list) -> DomainMatrix:
        '''
        Builds a spinor column from anything `to_gaussian` accepts.
        '''

        return DomainMatrix([[to_gaussian(entry)] for entry in entries], (len(entries), 1), QQ_I)

    @classmethod
    def zero(cls, signature: Signature) -> 'PolySpinor':
        return cls(signature.dimension, signature.spinor_dim)

    @classmethod
    def constant(cls,
        signature: Signature,
        entries: list
    ) -> 'PolySpinor':
        if len(entries) != signature.spinor_dim:
            raise DimensionMismatch(f'Expected {signature.spinor_dim} spinor entries, got {len(entries)}')
        return cls.monomial(signature, (0,) * signature.dimension, entries)

    @classmethod
    def monomial(cls,
        signature: Signature,
        exponents: tuple[int, ...],
        entries: list
    ) -> 'PolySpinor':
        return cls(signature.dimension, signature.spinor_dim, {tuple(exponents): cls.vector(entries)})

    @classmethod
    def random(cls,
        signature: Signature,
        maxdeg: int,
        rng: random.Random,
        terms: int = 3
    ) -> 'PolySpinor':
        '''
        A random spinor with up to `terms` monomials of degree <= maxdeg and Gaussian-rational
        coefficients.
        '''

        result = cls.zero(signature)
        for _ in range(terms):
            exponents = [0] * signature.dimension
            for _ in range(rng.randint(0, maxdeg)):
                exponents[rng.randrange(signature.dimension)] += 1
            entries = [(random_rational(rng), random_rational(rng))
                       for _ in range(signature.spinor_dim)]
            result = result + cls.monomial(signature, tuple(exponents), entries)
        return result

    @property
    def terms(self) -> dict[tuple[int, ...], DomainMatrix]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return len(self._terms) == 0

    @property
    def degree(self) -> int:
        return max((sum(exponents) for exponents in self._terms), default=0)

    def _check_compatible(self, other: 'PolySpinor'):
        if (self.dimension, self.spinor_dim) != (other.dimension, other.spinor_dim):
            raise DimensionMismatch(
                f'Cannot combine spinors of shape ({self.dimension}, {self.spinor_dim}) and '
                f'({other.dimension}, {other.spinor_dim})')

    def map_terms(self, func) -> 'PolySpinor':
        '''
        Applies func(exponents, vector) -> [(exponents, vector), ...] to every term and sums.
        '''

        terms = {}
        for exponents, vector in self._terms.items():
            for new_exponents, new_vector in func(exponents, vector):
                if new_exponents in terms:
                    terms[new_exponents] = terms[new_exponents] + new_vector
                else:
                    terms[new_exponents] = new_vector
        return PolySpinor(self.dimension, self.spinor_dim, terms)

    def scale(self, factor) -> 'PolySpinor':
        factor = to_gaussian(factor)
        return self.map_terms(lambda e, v: [(e, v * factor)])

    def evaluate_at(self, point: list) -> DomainMatrix:
        '''
        The spinor value at a point with rational coordinates.
        '''

        if len(point) != self.dimension:
            raise DimensionMismatch(f'Point {point} does not have {self.dimension} coordinates')
        value = DomainMatrix.zeros((self.spinor_dim, 1), QQ_I).to_dense()
        for exponents, vector in self._terms.items():
            weight = Fraction(1)
            for coordinate, exponent in zip(point, exponents):
                weight *= Fraction(coordinate) ** exponent
            value = value + vector * to_gaussian(weight)
        return value

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self._terms)
        for exponents, vector in other._terms.items():
            terms[exponents] = terms[exponents] + vector if exponents in terms else vector
        return PolySpinor(self.dimension, self.spinor_dim, terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, PolySpinor):
            return NotImplemented
        return (self.dimension, self.spinor_dim) == (other.dimension, other.spinor_dim) \
            and (self - other).is_zero

    def __repr__(self):
        return f'<PolySpinor "{len(self._terms)} terms, degree {self.degree}">'


class AmbientOperator(Enum):
    '''
    The concrete operators available to `apply_ops`.
    '''

    X   = 'x'
    Y   = 'y'
    H   = 'h'
    Q   = 'Q'
    LAP = 'lap'


def _bump(exponents: tuple[int, ...], a: int, amount: int) -> tuple[int, ...]:
    return exponents[:a] + (exponents[a] + amount,) + exponents[a + 1:]


class AmbientOps(object):
    '''
    The five flat-space operators for one GammaSet.
    '''

    def __init__(self, gammas: GammaSet):
        self.gammas = gammas
        self.signature = gammas.signature

    def _check(self, psi: PolySpinor):
        if (psi.dimension, psi.spinor_dim) != (self.signature.dimension, self.signature.spinor_dim):
            raise DimensionMismatch(
                f'Spinor of shape ({psi.dimension}, {psi.spinor_dim}) does not match signature '
                f'({self.signature.r},{self.signature.s})')

    def coordinate(self, psi: PolySpinor, a: int) -> PolySpinor:
        return psi.map_terms(lambda e, v: [(_bump(e, a, 1), v)])

    def derivative(self, psi: PolySpinor, a: int) -> PolySpinor:
        return psi.map_terms(
            lambda e, v: [(_bump(e, a, -1), v * to_gaussian(e[a]))] if e[a] else [])

    def gamma(self, psi: PolySpinor, a: int) -> PolySpinor:
        matrix = self.gammas.matrices[a]
        return psi.map_terms(lambda e, v: [(e, matrix * v)])

    def x(self, psi: PolySpinor) -> PolySpinor:
        self._check(psi)
        result = PolySpinor.zero(self.signature)
        for a in range(self.signature.dimension):
            result = result + self.gamma(self.coordinate(psi, a), a)
        return result

    def y(self, psi: PolySpinor) -> PolySpinor:
        self._check(psi)
        result = PolySpinor.zero(self.signature)
        for a, eps in enumerate(self.signature.metric):
            result = result + self.gamma(self.derivative(psi, a), a).scale(eps)
        return result

    def h(self, psi: PolySpinor) -> PolySpinor:
        self._check(psi)
        half_d = Fraction(self.signature.dimension, 2)
        return psi.map_terms(lambda e, v: [(e, v * to_gaussian(sum(e) + half_d))])

    def Q(self, psi: PolySpinor) -> PolySpinor:
        self._check(psi)
        result = PolySpinor.zero(self.signature)
        for a, eps in enumerate(self.signature.metric):
            result = result + self.coordinate(self.coordinate(psi, a), a).scale(eps)
        return result

    def lap(self, psi: PolySpinor) -> PolySpinor:
        self._check(psi)
        result = PolySpinor.zero(self.signature)
        for a, eps in enumerate(self.signature.metric):
            result = result + self.derivative(self.derivative(psi, a), a).scale(eps)
        return result

    def apply(self,
        which: AmbientOperator,
        psi: PolySpinor
    ) -> PolySpinor:
        return getattr(self, which.value)(psi)

    def apply_word(self,
        word: str,
        psi: PolySpinor
    ) -> PolySpinor:
        '''
        Applies a word in x, y and h as an operator product, so the rightmost letter acts first.
        '''

        for letter in reversed(word):
            psi = self.apply(AmbientOperator(letter), psi)
        return psi

    def apply_element(self,
        element: AlgebraElement,
        psi: PolySpinor
    ) -> PolySpinor:
        '''
        Substitutes the concrete operators into a normal-ordered element x^a y^b h^c.
        '''

        result = PolySpinor.zero(self.signature)
        for monomial, coefficient in element.terms.items():
            word = 'x' * monomial.xdeg + 'y' * monomial.ydeg + 'h' * monomial.hdeg
            result = result + self.apply_word(word, psi).scale(coefficient)
        return result

    def clifford_matrix(self, point: list) -> DomainMatrix:
        '''
        The matrix of x at a point: gamma_a v^a.
        '''

        if len(point) != self.signature.dimension:
            raise DimensionMismatch(f'Vector {point} does not have {self.signature.dimension} entries')
        matrix = DomainMatrix.zeros((self.signature.spinor_dim,) * 2, QQ_I).to_dense()
        for gamma, coordinate in zip(self.gammas.matrices, point):
            matrix = matrix + gamma * to_gaussian(coordinate)
        return matrix


def apply_ops(
    which: AmbientOperator,
    psi: PolySpinor,
    signature: Signature
) -> PolySpinor:
    '''
    Applies one of the concrete operators to a spinor of the given signature.
    '''

    return AmbientOps(build_gammas(signature)).apply(which, psi)

def reduce_mod_Q(
    psi: PolySpinor,
    signature: Signature
) -> PolySpinor:
    '''
    Canonical representative of psi modulo the ideal generated by Q, obtained by substituting
    (X^0)^2 -> -eps_0 sum_(a>=1) eps_a (X^a)^2 until every term has X^0-degree at most one.
    '''

    metric = signature.metric
    if (psi.dimension, psi.spinor_dim) != (signature.dimension, signature.spinor_dim):
        raise DimensionMismatch(f'Spinor does not match signature ({signature.r},{signature.s})')

    def substitute(exponents, vector):
        if exponents[0] < 2:
            return [(exponents, vector)]
        lowered = _bump(exponents, 0, -2)
        return [(_bump(lowered, a, 2), vector * to_gaussian(-metric[0] * metric[a]))
                for a in range(1, signature.dimension)]

    while any(exponents[0] >= 2 for exponents in psi.terms):
        psi = psi.map_terms(substitute)
    return psi

def is_tangential(
    psi: PolySpinor,
    signature: Signature
) -> bool:
    '''
    True when x psi vanishes on the null cone, i.e. psi restricts to a section over it.
    '''

    ops = AmbientOps(build_gammas(signature))
    return reduce_mod_Q(ops.x(psi), signature).is_zero


class NullKernelResult(object):
    '''
    The linear algebra of x at a single null vector.

        - rank: Rank of X = gamma_a v^a
        - ker_equals_im: Whether ker X = im X as subspaces
        - trace_T: Trace of T = gamma_t gamma_u for the first positive and negative indices t, u at
            which v is nonzero
        - spinor_dim: Size of X
    '''

    def __init__(self,
        rank: int,
        ker_equals_im: bool,
        trace_T,
        spinor_dim: int
    ):
        self.rank = rank
        self.ker_equals_im = ker_equals_im
        self.trace_T = trace_T
        self.spinor_dim = spinor_dim

    @property
    def satisfies_lemma(self) -> bool:
        return self.ker_equals_im and 2 * self.rank == self.spinor_dim and self.trace_T == QQ_I.zero

    def to_dict(self) -> dict:
        return {
            'rank': self.rank,
            'ker_equals_im': self.ker_equals_im,
            'trace_T': gaussian_to_string(self.trace_T),
            'spinor_dim': self.spinor_dim
        }


def null_kernel_analysis(
    signature: Signature,
    vector: list
) -> NullKernelResult:
    '''
    Forms X = gamma_a v^a for a nonzero null vector v and decides whether ker X = im X. Because
    X^2 = Q(v) = 0 the image always sits inside the kernel, so equality holds exactly when X^2 = 0
    and 2 rank X equals the spinor dimension.
    '''

    vector = [Fraction(entry) for entry in vector]
    if len(vector) != signature.dimension:
        raise DimensionMismatch(f'Vector {vector} does not have {signature.dimension} entries')
    if all(entry == 0 for entry in vector):
        raise ZeroVector('The null vector must be nonzero')
    norm = sum(eps * entry ** 2 for eps, entry in zip(signature.metric, vector))
    if norm != 0:
        raise NotNull(f'Vector {[str(entry) for entry in vector]} has norm {norm}')

    gammas = build_gammas(signature)
    matrix = AmbientOps(gammas).clifford_matrix(vector)
    rank = matrix.rank()
    ker_equals_im = (matrix * matrix).is_zero_matrix and 2 * rank == signature.spinor_dim

    t = next(a for a in range(signature.r) if vector[a] != 0)
    u = next(a for a in range(signature.r, signature.dimension) if vector[a] != 0)
    T = (gammas.matrices[t] * gammas.matrices[u]).to_list()
    trace_T = sum((T[i][i] for i in range(signature.spinor_dim)), QQ_I.zero)

    logging.debug(f'Null vector {[str(entry) for entry in vector]} in ({signature.r},{signature.s}): '
        f'rank {rank}, ker = im {ker_equals_im}')
    return NullKernelResult(rank, ker_equals_im, trace_T, signature.spinor_dim)

def _reflect(unit_index: int, size: int, rng: random.Random) -> list[Fraction]:
    '''
    Image of a standard basis vector under a random rational Householder reflection.
    '''

    while True:
        normal = [random_rational(rng) for _ in range(size)]
        length = sum(entry ** 2 for entry in normal)
        if length:
            break
    return [int(i == unit_index) - 2 * normal[i] * normal[unit_index] / length for i in range(size)]

def random_null_vector(
    signature: Signature,
    rng: random.Random
) -> list[Fraction]:
    '''
    A random nonzero rational null vector: e_0 + e_r with each half moved by a rational
    reflection of its own block and the whole rescaled.
    '''

    if signature.r < 1 or signature.s < 1:
        raise UnsupportedSignature(
            f'Signature ({signature.r},{signature.s}) has no nonzero null vectors')
    positive = _reflect(0, signature.r, rng)
    negative = _reflect(0, signature.s, rng)
    scale = random_rational(rng, allow_zero=False)
    return [scale * entry for entry in positive + negative]

def basic_null_vector(signature: Signature) -> list[Fraction]:
    '''
    e_t + e_u with t the first positive and u the first negative direction
    '''

    if signature.r < 1 or signature.s < 1:
        raise UnsupportedSignature(
            f'Signature ({signature.r},{signature.s}) has no nonzero null vectors')
    return [Fraction(int(a in (0, signature.r))) for a in range(signature.dimension)]

def lies_in_image(
    matrix: DomainMatrix,
    value: DomainMatrix
) -> bool:
    '''
    Whether a column vector is in the column space of a matrix.
    '''

    return matrix.hstack(value).rank() == matrix.rank()
