'''
Formal extension problems on the weighted modules and the invariant operators they produce.

Even case: extend Psi = x sigma in s(1,2)[w] to psi = x sigma + sum_(k>=2) x^k phi_k with
y^2 psi = 0 order by order. The correction in slot k enters slot k-2 of y^2 psi with the factor
4j(w + n/2 - j), j = floor(k/2), so at w = p - n/2 the first unsolvable step is slot 2p-2 and the
leftover defect defines L_2p. R_2p is x y^(2p) psi mod O(x^2).

Odd case: extend sigma to psi = sigma + sum_(k>=1) x^k phi_k with y psi = 0. Odd steps k = 2j+1
divide by 2(w + n/2 - j - 1), so at w = p - n/2 + 1 the defect first survives in slot 2p and
defines L_(2p+1). R_(2p+1) is y^(2p+1) applied to the preferred representative x(sigma + x phi_1).
'''

import logging

from enum import Enum
from fractions import Fraction
from math import factorial

from ambient_dirac.base import (
    Base,
    EngineError,
    ExceptionalWeight,
    NotProportional,
    Parity
)
from ambient_dirac.weighted import (
    HALF_N,
    W,
    Atom,
    AtomVector,
    FilteredSpinor,
    SpinorSymbol,
    act_x,
    act_y,
    scalar_to_fraction,
    scalar_to_string,
    sym,
    y_lowering_factor
)


class OperatorKind(Enum):
    '''
    The four invariant operators.
    '''

    L_EVEN = 'L_even'
    R_EVEN = 'R_even'
    L_ODD  = 'L_odd'
    R_ODD  = 'R_odd'


def critical_weight(
    parity: Parity,
    p: int
):
    '''
    The weight at which the extension problem of the given parity is obstructed at order p:
    p - n/2 for the even problem and p - n/2 + 1 for the odd one.
    '''

    if p < 1:
        raise EngineError(f'p must be a positive integer, got {p}')
    return sym(sym(p) - HALF_N + (1 if parity == Parity.ODD else 0))

def make_symbol(
    weight = W,
    name: str = 'sigma'
) -> SpinorSymbol:
    '''
    The cone datum sigma for a problem of total weight `weight`; sigma itself has weight one less.
    '''

    return SpinorSymbol(name, sym(weight) - 1)


class ExtensionResult(Base):
    '''
    Outcome of a formal extension run.

        - parity: Which extension problem was solved
        - weight: The total weight w of Psi
        - representative: The solution psi found, truncated after its last solved slot
        - defect: y^2 psi (even) or y psi (odd) of the representative
        - solvable_to: The defect vanishes in every slot below this one
        - obstruction: The surviving defect in slot `obstruction_slot`, or None
        - denominators: Weight-dependent factors divided by along the way, normalized to w + ...
    '''

    def __init__(self,
        parity: Parity,
        weight,
        representative: FilteredSpinor,
        defect: FilteredSpinor,
        solvable_to: int,
        obstruction: AtomVector = None,
        obstruction_slot: int = None,
        denominators: list = None,
        **kwargs
    ):
        super().__init__(**kwargs)
        self.parity = parity
        self.weight = weight
        self.representative = representative
        self.defect = defect
        self.solvable_to = solvable_to
        self.obstruction = obstruction
        self.obstruction_slot = obstruction_slot
        self.denominators = denominators or []

    @property
    def obstructed(self) -> bool:
        return self.obstruction is not None

    def raw_obstruction(self) -> FilteredSpinor | None:
        '''
        The first surviving defect term shifted down to slot 0.
        '''

        if not self.obstructed:
            return None
        slot = self.obstruction_slot
        return FilteredSpinor(self.defect.weight - slot, 0, 1, {0: self.obstruction})

    def top_obstruction(self) -> FilteredSpinor | None:
        '''
        The first surviving defect term moved to slot 1, as an element of s(1,2). This is the value
        of the L operator on Psi.
        '''

        if not self.obstructed:
            return None
        slot = self.obstruction_slot
        return FilteredSpinor(self.defect.weight - slot + 1, 1, 2, {1: self.obstruction})

    def to_dict(self) -> dict:
        base = super().to_dict()
        base.update({
            'parity': self.parity.name.lower(),
            'weight': scalar_to_string(self.weight),
            'representative': str(self.representative),
            'solvable_to': self.solvable_to,
            'obstruction': str(self.top_obstruction()) if self.obstructed else None,
            'obstruction_slot': self.obstruction_slot,
            'denominators': [scalar_to_string(d) for d in self.denominators]
        })
        return base


def _normalized(factor):
    factor = sym(factor)
    slope = factor.diff(W)
    return None if slope == 0 else factor / slope

def _extend(
    parity: Parity,
    sigma: SpinorSymbol,
    max_order: int,
    lift: FilteredSpinor | None
) -> ExtensionResult:
    weight = sigma.weight + 1
    if parity == Parity.EVEN:
        # psi has total weight w and starts in slot 1; y^2 links slot k to slot k - 2
        psi = FilteredSpinor.from_atom(Atom(sigma), 1)
        lower, first, steps = 1, 2, 2
    else:
        # psi has total weight w - 1 and starts in slot 0; y links slot k to slot k - 1
        psi = FilteredSpinor.from_atom(Atom(sigma), 0)
        lower, first, steps = 0, 1, 1
    if lift is not None:
        if lift.lower <= lower:
            raise EngineError(f'A lift must start above slot {lower}, got s({lift.lower},{lift.upper})')
        psi = psi + lift.with_window(lift.lower, None)

    def defect_of(spinor):
        for _ in range(steps):
            spinor = act_y(spinor)
        return spinor

    denominators = []
    for k in range(first, max_order + 1):
        s = k - steps
        residual = defect_of(psi.with_window(lower, k + 1)).slot(s)
        if parity == Parity.EVEN:
            factor = y_lowering_factor(k, weight) * y_lowering_factor(k - 1, weight - 1)
        else:
            factor = y_lowering_factor(k, weight - 1)

        if factor == 0:
            if residual.is_zero:
                continue
            representative = psi.with_window(lower, k + 1)
            logging.debug(f'{parity.name.title()} extension obstructed in defect slot {s}: {residual}')
            return ExtensionResult(parity, weight, representative, defect_of(representative), s,
                obstruction=residual, obstruction_slot=s, denominators=denominators)

        normalized = _normalized(factor)
        if normalized is not None and normalized not in denominators:
            denominators.append(normalized)
        correction = FilteredSpinor(psi.weight, k, None, {k: residual.scale(-sym(1) / factor)})
        psi = psi + correction
        logging.debug(f'{parity.name.title()} extension slot {k}: {correction}')

    representative = psi.with_window(lower, max_order + 1)
    return ExtensionResult(parity, weight, representative, defect_of(representative),
        max_order + 1 - steps, denominators=denominators)

def even_extend(
    sigma: SpinorSymbol,
    max_order: int = 8,
    lift: FilteredSpinor = None
) -> ExtensionResult:
    '''
    Solves y^2 psi = 0 for psi = x sigma + x^2 phi_2 + ... + x^max_order phi_max_order, correcting
    every slot k >= 2 of either parity. At w = p - n/2 the run stops at the first slot that
    cannot be corrected and reports the obstruction.

        - sigma: The cone datum; its weight is w - 1
        - max_order: The highest power of x to solve for
        - lift: Optional terms of x^2 and higher added to x sigma before solving, which represent
            the same element of s(1,2)
    '''

    return _extend(Parity.EVEN, sigma, max_order, lift)

def odd_extend(
    sigma: SpinorSymbol,
    max_order: int = 8,
    lift: FilteredSpinor = None
) -> ExtensionResult:
    '''
    Solves y psi = 0 for psi = sigma + x phi_1 + ... + x^max_order phi_max_order. Even steps always
    succeed; odd steps divide by 2(w + n/2 - j - 1) and at w = p - n/2 + 1 the run stops with the
    obstruction in slot 2p of y psi.

        - sigma: The datum x^-1 Psi; its weight is w - 1
        - max_order: The highest power of x to solve for
        - lift: Optional terms of x^1 and higher added to sigma before solving
    '''

    return _extend(Parity.ODD, sigma, max_order, lift)

def preferred_representative(
    sigma: SpinorSymbol,
    lift: FilteredSpinor = None
) -> FilteredSpinor:
    '''
    Returns x psi_0 in s(1,3)[w], where psi_0 = sigma + x phi_1 is the representative with
    y psi_0 = 0 mod O(x).
    '''

    result = odd_extend(sigma, max_order=1, lift=lift)
    if result.obstructed:
        raise ExceptionalWeight(
            f'The first odd step is not solvable at weight {scalar_to_string(result.weight)}')
    return act_x(result.representative.with_window(0, 2))


class InvariantOperator(Base):
    '''
    The value of one of the invariant operators on Psi, an element of s(1,2).

        - kind: Which operator
        - p: The order parameter
        - value: A FilteredSpinor with only slot 1
    '''

    def __init__(self,
        kind: OperatorKind,
        p: int,
        value: FilteredSpinor,
        **kwargs
    ):
        super().__init__(**kwargs)
        if not value.slot(0).is_zero:
            raise EngineError(f'{kind.value} value {value} has a slot-0 term')
        self.kind = kind
        self.p = p
        self.value = value

    @property
    def order(self) -> int:
        return 2 * self.p + (1 if self.kind in (OperatorKind.L_ODD, OperatorKind.R_ODD) else 0)

    def to_dict(self) -> dict:
        base = super().to_dict()
        base.update({
            'kind': self.kind.value,
            'p': self.p,
            'order': self.order,
            'weight': scalar_to_string(self.value.weight),
            'value': str(self.value)
        })
        return base

    def __str__(self):
        return str(self.value)


def op_L(
    parity: Parity,
    p: int,
    sigma: SpinorSymbol = None,
    lift: FilteredSpinor = None
) -> InvariantOperator:
    '''
    L_2p (even) or L_(2p+1) (odd): the obstruction of the extension problem at its critical weight.
    '''

    weight = critical_weight(parity, p)
    sigma = sigma or make_symbol(weight)
    if parity == Parity.EVEN:
        result = even_extend(sigma, max_order=2 * p, lift=lift)
        kind = OperatorKind.L_EVEN
    else:
        result = odd_extend(sigma, max_order=2 * p + 1, lift=lift)
        kind = OperatorKind.L_ODD
    if not result.obstructed:
        raise EngineError(f'No obstruction for {kind.value} at p={p}')
    return InvariantOperator(kind, p, result.top_obstruction(), name=f'{kind.value}({p})')

def op_R(
    parity: Parity,
    p: int,
    sigma: SpinorSymbol = None,
    representative: FilteredSpinor = None
) -> InvariantOperator:
    '''
    R_2p = x y^(2p) psi mod O(x^2) for any representative psi of x sigma, or
    R_(2p+1) = y^(2p+1) psi mod O(x^2) on the preferred representative. A different representative
    may be supplied to check that the value does not depend on it.
    '''

    weight = critical_weight(parity, p)
    sigma = sigma or make_symbol(weight)
    if parity == Parity.EVEN:
        psi = representative or FilteredSpinor.from_atom(Atom(sigma), 1)
        image = psi.with_window(1, 2 * p + 2)
        for _ in range(2 * p):
            image = act_y(image)
        value = act_x(image).with_window(1, 2)
        kind = OperatorKind.R_EVEN
    else:
        psi = representative or preferred_representative(sigma)
        image = psi.with_window(1, 2 * p + 3)
        for _ in range(2 * p + 1):
            image = act_y(image)
        if not image.slot(0).is_zero:
            raise EngineError(f'y^{2 * p + 1} of the preferred representative is not O(x): {image}')
        value = image.with_window(1, 2)
        kind = OperatorKind.R_ODD
    return InvariantOperator(kind, p, value, name=f'{kind.value}({p})')

def proportionality_constant(
    parity: Parity,
    p: int
) -> Fraction:
    '''
    Returns the rational c with R = c L, checking that the two values are parallel and that c is a
    nonzero number independent of n.
    '''

    L = op_L(parity, p).value.slot(1)
    R = op_R(parity, p).value.slot(1)
    if L.is_zero:
        raise NotProportional(f'L vanishes for {parity.name.lower()} p={p}')
    atom = L.atoms[0]
    ratio = R.coefficient(atom) / L.coefficient(atom)
    if ratio == 0 or R != L.scale(ratio):
        raise NotProportional(f'R = {R} is not a nonzero multiple of L = {L}')
    constant = scalar_to_fraction(ratio)
    if constant is None:
        raise NotProportional(f'R/L = {scalar_to_string(ratio)} depends on n or w')
    logging.debug(f'{parity.name.title()} p={p}: R = {constant} L')
    return constant


# Closed forms observed for the certified values; reports compare against these as notes

def even_constant_formula(p: int) -> Fraction:
    return Fraction((-1) ** (p - 1) * 4 ** (p - 1) * factorial(p - 1) ** 2)

def odd_constant_formula(p: int) -> Fraction:
    return Fraction((-1) ** (p + 1) * (p + 1) * 4 ** p * factorial(p) * factorial(p - 1))

def even_R_formula(p: int) -> Fraction:
    '''
    Coefficient of x y^(2p-1) sigma in R_2p
    '''

    return Fraction(2 * p)

def odd_L_formula(p: int) -> Fraction:
    '''
    Coefficient of x y^(2p+1) sigma in L_(2p+1)
    '''

    return Fraction((-1) ** p, 4 ** p * factorial(p) ** 2)

def odd_R_formula(p: int) -> Fraction:
    '''
    Coefficient of x y^(2p+1) sigma in R_(2p+1)
    '''

    return Fraction(-(p + 1), p)
