"""Exception hierarchy.

Every domain error derives from :class:`QclabError`, which is itself a
``ValueError`` so callers that only care about "bad input" can catch the
builtin.  The CLI maps any ``QclabError`` to exit code 1 and reports the
class name as the error kind.
"""

from __future__ import annotations


class QclabError(ValueError):
    """Base class for all domain errors raised by qclab."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class NotHermitian(QclabError):
    pass


class DimensionMismatch(QclabError):
    pass


class BadIndex(QclabError):
    pass


class UnknownGate(QclabError):
    pass


class BadParamCount(QclabError):
    pass


class TooLarge(QclabError):
    pass


class LengthMismatch(QclabError):
    pass


class BadLabel(QclabError):
    pass


class NotPowerOfTwo(QclabError):
    pass


class AllIdentity(QclabError):
    pass


class NotNormalized(QclabError):
    pass


class BadPartition(QclabError):
    pass


class WrongSize(QclabError):
    pass


class BadOracle(QclabError):
    pass


class BadBitstring(QclabError):
    pass


class NotCoprime(QclabError):
    pass


class IsPrime(QclabError):
    pass


class IsEven(QclabError):
    pass


class IsPrimePower(QclabError):
    pass


class Exhausted(QclabError):
    pass


class UnsupportedSize(QclabError):
    pass


class ParamCountMismatch(QclabError):
    pass


class UncorrectableSyndrome(QclabError):
    pass


class TruncationLeakage(QclabError):
    pass


class UnknownIdentity(QclabError):
    pass


class BadFormat(QclabError):
    """Malformed circuit or Hamiltonian file."""
