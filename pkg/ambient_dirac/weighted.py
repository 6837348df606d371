'''
The filtered weighted spinor modules s(p,q)[w]: truncated series

    psi = sum_(p <= k < q) x^k v_k

of total weight W, where every v_k is a combination of free atoms y^m sigma of weight W - k.
Scalars are rational functions in the dimension n and the weight w, so statements about
"generic" weights are identities in this field and exceptional weights are roots of the
denominators met along the way.

The action of y on a slot uses

    y x^(2j) v   = x^(2j) y v + 2j x^(2j-1) v
    y x^(2j+1) v = -x^(2j+1) y v + 2 x^(2j) (h + j) v

with h acting on an atom of weight u by its eigenvalue u + (n+2)/2.
'''

import logging

from fractions import Fraction

from sympy import solve
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, field

from ambient_dirac.base import (
    EngineError,
    ExceptionalWeight,
    NotDivisible,
    WeightMismatch
)


SCALARS, N, W = field('n,w', QQ)
HALF_N = N / 2


def sym(value) -> FracElement:
    '''
    Converts an int, a Fraction or a field element into the scalar field.
    '''

    if isinstance(value, FracElement):
        return value
    if isinstance(value, float):
        raise TypeError(f'Scalars must be exact, got the float {value}')
    value = Fraction(value)
    return SCALARS(value.numerator) / value.denominator

def scalar_to_string(value: FracElement) -> str:
    return str(value.as_expr())

def scalar_to_fraction(value: FracElement) -> Fraction | None:
    '''
    The value as a Fraction when it does not depend on n or w, otherwise None.
    '''

    if not (value.numer.is_ground and value.denom.is_ground):
        return None
    number = value.as_expr()
    return Fraction(int(number.p), int(number.q))

def eigenvalue_of_weight(weight) -> FracElement:
    '''
    The eigenvalue of h on anything of the given weight: weight + (n+2)/2.
    '''

    return sym(sym(weight) + HALF_N + 1)


class SpinorSymbol(object):
    '''
    A free spinor symbol such as sigma or theta.

        - name: Printed name; symbols with the same name and weight are the same symbol
        - weight: The symbol's conformal weight as a scalar
    '''

    def __init__(self,
        name: str,
        weight
    ):
        self.name = name
        self.weight = sym(weight)

    def __eq__(self, other):
        return isinstance(other, SpinorSymbol) and self.name == other.name \
            and self.weight == other.weight

    def __hash__(self):
        return hash((self.name, str(self.weight)))

    def __repr__(self):
        return f'<SpinorSymbol "{self.name}" weight {scalar_to_string(self.weight)}>'


class Atom(object):
    '''
    The free atom y^m sigma.
    '''

    def __init__(self,
        symbol: SpinorSymbol,
        m: int = 0
    ):
        self.symbol = symbol
        self.m = m

    @property
    def weight(self) -> FracElement:
        return self.symbol.weight - self.m

    @property
    def eigenvalue(self) -> FracElement:
        return eigenvalue_of_weight(self.weight)

    def apply_y(self) -> 'Atom':
        return Atom(self.symbol, self.m + 1)

    def __eq__(self, other):
        return isinstance(other, Atom) and self.symbol == other.symbol and self.m == other.m

    def __hash__(self):
        return hash((self.symbol, self.m))

    def __str__(self):
        if self.m == 0:
            return self.symbol.name
        if self.m == 1:
            return f'y*{self.symbol.name}'
        return f'y^{self.m}*{self.symbol.name}'

    def __repr__(self):
        return f'<Atom "{self}">'


class AtomVector(object):
    '''
    A finite combination of Atoms with nonzero scalar coefficients.
    '''

    def __init__(self,
        terms: dict[Atom, object] = None
    ):
        collected = {}
        for atom, coefficient in (terms or {}).items():
            collected[atom] = collected.get(atom, SCALARS.zero) + sym(coefficient)
        self._terms = {atom: c for atom, c in collected.items() if c != 0}

    @classmethod
    def single(cls,
        atom: Atom,
        coefficient = 1
    ) -> 'AtomVector':
        return cls({atom: coefficient})

    @property
    def terms(self) -> dict[Atom, FracElement]:
        return dict(self._terms)

    @property
    def atoms(self) -> list[Atom]:
        return sorted(self._terms, key=lambda atom: (atom.symbol.name, atom.m))

    @property
    def is_zero(self) -> bool:
        return len(self._terms) == 0

    def coefficient(self, atom: Atom) -> FracElement:
        return self._terms.get(atom, SCALARS.zero)

    def apply_y(self) -> 'AtomVector':
        return AtomVector({atom.apply_y(): c for atom, c in self._terms.items()})

    def scale(self, factor) -> 'AtomVector':
        factor = sym(factor)
        return AtomVector({atom: c * factor for atom, c in self._terms.items()})

    def __add__(self, other):
        terms = dict(self._terms)
        for atom, c in other._terms.items():
            terms[atom] = terms.get(atom, SCALARS.zero) + c
        return AtomVector(terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, AtomVector) and self._terms == other._terms

    def __str__(self):
        if self.is_zero:
            return '0'
        parts = []
        for atom in self.atoms:
            coefficient = self._terms[atom]
            constant = scalar_to_fraction(coefficient)
            if constant == 1:
                parts.append(str(atom))
            elif constant is not None:
                parts.append(f'{constant}*{atom}')
            else:
                parts.append(f'({scalar_to_string(coefficient)})*{atom}')
        return ' + '.join(parts)

    def __repr__(self):
        return f'<AtomVector "{self}">'


class FilteredSpinor(object):
    '''
    An element of s(lower, upper)[weight]: slots k with lower <= k < upper, each an AtomVector
    whose atoms have weight `weight - k`. An upper bound of None means the series is not
    truncated. Slots at or beyond `upper` are O(x^upper) and are dropped on construction.
    '''

    def __init__(self,
        weight,
        lower: int = 0,
        upper: int | None = None,
        slots: dict[int, AtomVector] = None
    ):
        if lower < 0 or (upper is not None and upper < lower):
            raise EngineError(f'Invalid filtration window [{lower}, {upper})')
        self.weight = sym(weight)
        self.lower = lower
        self.upper = upper
        self._slots = {}
        for k, vector in sorted((slots or {}).items()):
            if vector.is_zero or (upper is not None and k >= upper):
                continue
            if k < lower:
                raise EngineError(f'Slot {k} lies below the window [{lower}, {upper})')
            expected = self.weight - k
            for atom in vector.atoms:
                if atom.weight != expected:
                    raise WeightMismatch(
                        f'Atom {atom} of weight {scalar_to_string(atom.weight)} cannot sit in slot '
                        f'{k} of a spinor of weight {scalar_to_string(self.weight)}')
            self._slots[k] = vector

    @classmethod
    def from_atom(cls,
        atom: Atom,
        slot: int = 0,
        upper: int | None = None,
        coefficient = 1
    ) -> 'FilteredSpinor':
        '''
        x^slot (coefficient * atom), in the window [slot, upper).
        '''

        return cls(atom.weight + slot, slot, upper, {slot: AtomVector.single(atom, coefficient)})

    @property
    def slots(self) -> dict[int, AtomVector]:
        return dict(self._slots)

    @property
    def is_zero(self) -> bool:
        return len(self._slots) == 0

    @property
    def lowest_slot(self) -> int | None:
        return min(self._slots) if self._slots else None

    def slot(self, k: int) -> AtomVector:
        return self._slots.get(k, AtomVector())

    def with_window(self,
        lower: int,
        upper: int | None
    ) -> 'FilteredSpinor':
        return FilteredSpinor(self.weight, lower, upper, self._slots)

    def scale(self, factor) -> 'FilteredSpinor':
        return FilteredSpinor(self.weight, self.lower, self.upper,
            {k: vector.scale(factor) for k, vector in self._slots.items()})

    def __add__(self, other):
        if self.weight != other.weight:
            raise WeightMismatch(f'Cannot add spinors of weight {scalar_to_string(self.weight)} '
                f'and {scalar_to_string(other.weight)}')
        uppers = [bound for bound in (self.upper, other.upper) if bound is not None]
        upper = min(uppers) if uppers else None
        lower = min(self.lower, other.lower)
        if upper is not None:
            upper = max(upper, lower)
        slots = dict(self._slots)
        for k, vector in other._slots.items():
            slots[k] = slots[k] + vector if k in slots else vector
        return FilteredSpinor(self.weight, lower, upper, slots)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, FilteredSpinor) and self.weight == other.weight \
            and (self.lower, self.upper) == (other.lower, other.upper) \
            and self._slots == other._slots

    def to_dict(self) -> dict:
        return {
            'weight': scalar_to_string(self.weight),
            'window': [self.lower, self.upper],
            'slots': {str(k): str(vector) for k, vector in sorted(self._slots.items())}
        }

    def __str__(self):
        if self.is_zero:
            return '0'
        parts = []
        for k, vector in sorted(self._slots.items()):
            prefix = '' if k == 0 else ('x*' if k == 1 else f'x^{k}*')
            parts.append(f'{prefix}({vector})')
        return ' + '.join(parts)

    def __repr__(self):
        return f'<FilteredSpinor "{self}" in s({self.lower},{self.upper})>'


def y_lowering_factor(
    k: int,
    weight
) -> FracElement:
    '''
    The scalar by which y carries slot k of a spinor of the given total weight down to slot k-1:
    k for even k, and 2(e + (k-1)/2) for odd k, where e = weight - k + n/2 + 1 is the eigenvalue of
    h on the atoms in slot k.
    '''

    if k % 2 == 0:
        return sym(k)
    eigenvalue = eigenvalue_of_weight(sym(weight) - k)
    return sym(2 * (eigenvalue + (k - 1) // 2))

def act_x(psi: FilteredSpinor) -> FilteredSpinor:
    '''
    Multiplication by x: every slot moves up by one and the weight rises by one.
    '''

    upper = None if psi.upper is None else psi.upper + 1
    return FilteredSpinor(psi.weight + 1, psi.lower + 1, upper,
        {k + 1: vector for k, vector in psi.slots.items()})

def act_y(psi: FilteredSpinor) -> FilteredSpinor:
    '''
    The action of y: s(p,q)[W] -> s(max(p-1,0), q-1)[W-1]. Slot 0 atoms gain a power of y; a
    slot k > 0 keeps (-1)^k y v_k in place and deposits its lowering term in slot k-1.
    '''

    lower = max(psi.lower - 1, 0)
    upper = None if psi.upper is None else max(psi.upper - 1, lower)
    slots = {}

    def deposit(k, vector):
        slots[k] = slots[k] + vector if k in slots else vector

    for k, vector in psi.slots.items():
        raised = vector.apply_y()
        deposit(k, -raised if k % 2 else raised)
        if k > 0:
            deposit(k - 1, vector.scale(y_lowering_factor(k, psi.weight)))

    return FilteredSpinor(psi.weight - 1, lower, upper, slots)

def act_h(psi: FilteredSpinor) -> FilteredSpinor:
    '''
    The action of h, which is the scalar W + (n+2)/2 on all of s(p,q)[W].
    '''

    return psi.scale(eigenvalue_of_weight(psi.weight))

def x_inverse_shift(psi: FilteredSpinor) -> FilteredSpinor:
    '''
    Division by x: every slot moves down by one and the weight drops by one. Slot 0 must be empty.
    '''

    if not psi.slot(0).is_zero:
        raise NotDivisible(f'{psi} has a nonzero x^0 term and is not a multiple of x')
    lower = max(psi.lower - 1, 0)
    upper = None if psi.upper is None else max(psi.upper - 1, lower)
    return FilteredSpinor(psi.weight - 1, lower, upper,
        {k - 1: vector for k, vector in psi.slots.items()})

def shift(
    psi: FilteredSpinor,
    k: int
) -> FilteredSpinor:
    '''
    Multiplies by x^k, where negative k divides.
    '''

    for _ in range(abs(k)):
        psi = act_x(psi) if k > 0 else x_inverse_shift(psi)
    return psi

def y_as_x_inverse(psi: FilteredSpinor) -> FilteredSpinor:
    '''
    Computes x^-1 psi on the single-slot module s(p,p+1)[W] from the action of y:

        p = 2k:   x^-1 = (1/p) y
        p = 2k+1: x^-1 = (1/2) (h - k)^-1 y

    Raises ExceptionalWeight when h - k vanishes, i.e. at W = k - n/2.
    '''

    p = psi.lower
    if p < 1 or psi.upper != p + 1:
        raise EngineError(f'x^-1 through y needs a single slot p >= 1, got s({psi.lower},{psi.upper})')

    lowered = act_y(psi).slot(p - 1)
    if p % 2 == 0:
        factor = sym(Fraction(1, p))
    else:
        k = (p - 1) // 2
        shifted = sym(eigenvalue_of_weight(psi.weight - 1) - k)
        if shifted == 0:
            raise ExceptionalWeight(
                f'h - {k} vanishes on s({p - 1},{p})[{scalar_to_string(psi.weight - 1)}]')
        factor = sym(1) / (2 * shifted)

    return FilteredSpinor(psi.weight - 1, p - 1, p, {p - 1: lowered.scale(factor)})

def invert_y(
    phi: FilteredSpinor,
    lower: int,
    upper: int,
    weight
) -> tuple[FilteredSpinor, list[FracElement]]:
    '''
    Solves act_y(psi) = phi for psi in s(lower, upper)[weight] by back-substitution from the
    lowest slot up, given phi in s(lower-1, upper-1)[weight-1]. Returns psi and the list of
    weight-dependent factors that were divided by, in the order met.
    '''

    weight = sym(weight)
    if lower < 1 or upper <= lower:
        raise EngineError(f'invert_y needs 1 <= lower < upper, got [{lower}, {upper})')
    if phi.weight != weight - 1:
        raise WeightMismatch(f'Right-hand side has weight {scalar_to_string(phi.weight)}, '
            f'expected {scalar_to_string(weight - 1)}')

    psi = FilteredSpinor(weight, lower, upper)
    denominators = []
    for k in range(lower, upper):
        residual = phi.slot(k - 1) - act_y(psi).slot(k - 1)
        factor = y_lowering_factor(k, weight)
        if factor == 0:
            if residual.is_zero:
                continue
            raise ExceptionalWeight(f'y is not invertible on slot {k} at weight '
                f'{scalar_to_string(weight)}')
        if factor.diff(W) != 0:
            denominators.append(factor / factor.diff(W))
        psi = psi + FilteredSpinor(weight, lower, upper, {k: residual.scale(sym(1) / factor)})
    return psi, denominators

def generic_right_hand_side(
    lower: int,
    upper: int,
    weight
) -> FilteredSpinor:
    '''
    An element of s(lower-1, upper-1)[weight-1] with an independent free symbol in every slot.
    '''

    weight = sym(weight)
    slots = {}
    for k in range(lower - 1, upper - 1):
        symbol = SpinorSymbol(f'phi{k}', weight - 1 - k)
        slots[k] = AtomVector.single(Atom(symbol))
    return FilteredSpinor(weight - 1, lower - 1, upper - 1, slots)

def weight_roots(factors: list[FracElement]) -> set[FracElement]:
    '''
    The values of w (as functions of n) at which any of the factors vanishes.
    '''

    w_symbol = SCALARS.symbols[1]
    roots = set()
    for factor in factors:
        for root in solve(factor.numer.as_expr(), w_symbol):
            roots.add(SCALARS.from_expr(root))
    return roots

def exceptional_weights(
    p: int,
    q: int
) -> set[FracElement]:
    '''
    The weights w at which y: s(p,q)[w] -> s(p-1,q-1)[w-1] fails to be invertible, found as the
    roots of the denominators of the generic back-substitution inverse.
    '''

    if not 0 < p < q:
        raise EngineError(f'Exceptional weights need 0 < p < q, got p={p}, q={q}')
    _, denominators = invert_y(generic_right_hand_side(p, q, W), p, q, W)
    roots = weight_roots(denominators)
    logging.debug(f'Exceptional weights of s({p},{q}): {sorted(scalar_to_string(r) for r in roots)}')
    return roots

def floor_formula_weights(
    p: int,
    q: int
) -> set[FracElement]:
    '''
    The set {floor(p/2) - n/2, ..., floor(q/2) - n/2 - 1}.
    '''

    return {sym(sym(j) - HALF_N) for j in range(p // 2, q // 2)}
