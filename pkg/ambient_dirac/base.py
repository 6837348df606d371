'''
Contains the shared vocabulary of the engine: configuration constants, statuses, error types and
the record base class that reports and solver results build on.
'''

import json
import logging
import random

from enum import Enum
from fractions import Fraction
from pathlib import Path


# Signatures (r, s) exercised by the flat-space suites when none is requested explicitly.
DEFAULT_SIGNATURES = [ (1, 1), (2, 1), (2, 2), (3, 2) ]
DEFAULT_SEED = 0
DEFAULT_PMAX = 5
# The kernel/image suite walks every signature with r, s >= 1 up to this ambient dimension.
KERNEL_MAX_DIMENSION = 8
# Random rational coefficients are drawn as a/b with |a| <= COEFFICIENT_BOUND, 1 <= b <= COEFFICIENT_BOUND
COEFFICIENT_BOUND = 5
VERSIONS_FILE = Path(__file__).resolve().parent.parent / 'versions.json'
PACKAGE_NAME = 'ambient_dirac'


# Helper functions go here

def get_version() -> str:
    '''
    Returns the engine version recorded in versions.json, which is stamped onto every report. Falls
    back to "0.0.0" when the file is not shipped alongside the package.
    '''

    try:
        with open(VERSIONS_FILE, 'r', encoding='utf-8') as fh:
            versions = json.load(fh)
        return versions[PACKAGE_NAME]['version']
    except (OSError, KeyError, ValueError):
        logging.debug(f'No usable version entry in {VERSIONS_FILE}')
        return '0.0.0'

def random_rational(
    rng: random.Random,
    allow_zero: bool = True
) -> Fraction:
    '''
    A random a/b with |a| and b bounded by COEFFICIENT_BOUND
    '''

    while True:
        value = Fraction(rng.randint(-COEFFICIENT_BOUND, COEFFICIENT_BOUND),
                         rng.randint(1, COEFFICIENT_BOUND))
        if allow_zero or value != 0:
            return value


# Enums and helper classes go here

class Parity(Enum):
    '''
    The Z/2 grading of the superalgebra. x and y are odd, h is even. Also used to select between
    the even-power and odd-power constructions of the invariant operators.
    '''

    EVEN = 0
    ODD  = 1

    @staticmethod
    def from_string(value: str):
        '''
        Accepts "even" or "odd" in any case, as typed on the command line.
        '''

        try:
            return Parity[value.upper()]
        except KeyError:
            raise UsageError(f'Parity must be "even" or "odd", not "{value}"')

    def __add__(self, other):
        return Parity((self.value + other.value) % 2)


class CaseStatus(Enum):
    '''
    The outcome of a single verification case.

        - PASS: Both sides were computed and agree exactly.
        - FAIL: Both sides were computed and disagree. Any FAIL makes the whole run fail.
        - FLAGGED: The engine-certified value disagrees with a displayed formula it was compared
            against. The mathematics is certified; the display is recorded as a discrepancy.
    '''

    PASS    = 'pass'
    FAIL    = 'fail'
    FLAGGED = 'flagged'


class ErrorLevel(Enum):
    '''
    Different levels of problems that can arise while computing.

        - DEBUG: Used only for emitting debugging information
        - WARNING: The input is meaningful but the requested computation cannot proceed, such as
            inverting an operator at one of its exceptional weights.
        - IMPOSSIBLE: The input is not meaningful at all (wrong dimension, malformed expression),
            or a computation contradicted a theorem the engine relies on.
    '''

    DEBUG      = 0
    WARNING    = 1
    IMPOSSIBLE = 2


class EngineError(Exception):
    '''
    Base class for any kind of error raised by the engine
    '''

    level = ErrorLevel.IMPOSSIBLE

    def __init__(self,
        message: str = '',
        level: ErrorLevel = None,
        **kwargs
    ):
        super().__init__(message, **kwargs)
        self.message = message
        if level is not None:
            self.level = level

    def to_dict(self) -> dict:
        '''
        Returns a dict representation of this object
        '''

        return {
            'error': type(self).__name__,
            'level': self.level.name,
            'message': self.message
        }


class MixedParity(EngineError):
    '''
    A super-commutator was requested on an element that is neither purely even nor purely odd.
    '''


class UnsupportedSignature(EngineError):
    '''
    The requested metric signature has fewer than two generators or a negative count.
    '''


class DimensionMismatch(EngineError):
    '''
    A spinor or vector does not match the ambient dimension or spinor dimension of the signature.
    '''


class NotNull(EngineError):
    '''
    A vector was required to be null for the metric but is not.
    '''


class ZeroVector(EngineError):
    '''
    A nonzero vector was required.
    '''


class NotDivisible(EngineError):
    '''
    x^-1 was applied to a filtered spinor that is not a multiple of x.
    '''


class WeightMismatch(EngineError):
    '''
    An atom was placed in a filtration slot whose weight does not match it.
    '''


class ExceptionalWeight(EngineError):
    '''
    An eigenvalue that must be inverted vanishes at the requested weight.
    '''

    level = ErrorLevel.WARNING


class NotProportional(EngineError):
    '''
    Two operator values that a theorem declares proportional are not parallel.
    '''


class ExprSyntaxError(EngineError):
    '''
    An expression could not be parsed. `position` is the zero-based offset of the offending
    character in the source text.
    '''

    def __init__(self,
        message: str = '',
        position: int = 0,
        **kwargs
    ):
        super().__init__(f'{message} at position {position}', **kwargs)
        self.position = position

    def to_dict(self) -> dict:
        base = super().to_dict()
        base.update({
            'position': self.position
        })
        return base


class UsageError(EngineError):
    '''
    The command line could not be understood.
    '''


# Classes defining basic record types go here

class Base(object):
    '''
    Base object from which to build all result records.

        - name: A user-friendly name for the object
        - tags: A dictionary of arbitrary key:value pairs used as additional descriptors
    '''

    def __init__(self,
        name: str = '',
        tags: dict[str, str] = None,
        **kwargs
    ):
        self.name = name
        self.tags = tags or {}

    def to_dict(self) -> dict:
        '''
        Returns a dict representation of this object
        '''

        return {
            'name': self.name,
            'tags': self.tags
        }

    def __repr__(self):
        return f'<{type(self).__name__} "{self.name}">'
