"""Exception hierarchy.

Everything raised on purpose derives from :class:`FrirError`; the CLI maps
:class:`InputError` subclasses to exit code 2 and the rest to exit code 4.
"""

from __future__ import annotations


class FrirError(Exception):
    pass


class InputError(FrirError):
    """Malformed or physically invalid user input."""


class InvalidEnsemble(InputError):
    pass


class QOutOfRange(InputError):
    pass


class SingularOperator(FrirError):
    pass


class NotPsd(FrirError):
    pass


class DegenerateEnsemble(FrirError):
    pass


class SingularRho0(DegenerateEnsemble):
    pass


class CompletenessViolation(FrirError):
    pass


class QOutOfInterval(FrirError):
    pass


class EpsilonOutOfRange(FrirError):
    pass


class DomainError(FrirError):
    pass


class BracketFailure(FrirError):
    pass


class NotApplicable(FrirError):
    pass


class InvalidPovm(FrirError):
    pass


class ConsistencyError(FrirError):
    """Two independent routes to the same quantity disagree."""


class RegimeError(FrirError):
    pass
