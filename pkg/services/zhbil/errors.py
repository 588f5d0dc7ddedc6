'''Exceptions raised by the zhbil service.'''


class ZhBilError(Exception):
    '''Base class of every error raised by this package.'''


class InvalidParameterError(ZhBilError, ValueError):
    '''A ring, shape, exponent vector or other parameter is not acceptable.'''


class DimensionMismatchError(InvalidParameterError):
    '''Matrices are not conformable or live over different rings.'''


class ComponentIndexError(InvalidParameterError, IndexError):
    '''A prime component index is outside [0, t).'''


class ElementIsZeroError(InvalidParameterError):
    '''The requested element is zero in Z_h.'''


class BudgetExceededError(ZhBilError):
    '''An enumeration would exceed its configured budget.'''

    def __init__(self, what, size, budget):
        super().__init__(
            '{} needs {} steps, budget is {}'.format(what, size, budget))
        self.what = what
        self.size = size
        self.budget = budget


class VerificationError(ZhBilError):
    '''A checked statement or construction did not hold.'''


class TheoremViolationError(VerificationError):
    '''An input contradicts a structural theorem, e.g. an unclassifiable
    maximum clique.'''


class ConstructionInvalidError(VerificationError):
    '''A constructed object failed its own verification gate.'''


class FamilyError(ZhBilError, ValueError):
    '''A matrix family does not satisfy the precondition of an operation.'''


class NotIntersectingError(FamilyError):
    '''Some pair of members differs by a matrix of inner rank above r.'''


class NotMaximumCliqueError(FamilyError):
    '''The family is not a clique of size h^(nr).'''
