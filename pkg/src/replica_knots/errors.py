"""Exception types shared across the package.

The CLI maps these onto exit codes, so every error a user can trigger
derives from :class:`ReplicaKnotsError`.
"""


class ReplicaKnotsError(Exception):
    """Base class for all package errors."""


class CapExceeded(ReplicaKnotsError):
    """An enumeration or memo budget would be exceeded."""


class NoConvergence(ReplicaKnotsError):
    """A numerical iteration failed at the largest allowed precision."""


class InvalidCoupling(ReplicaKnotsError, ValueError):
    pass


class EvenParameter(ReplicaKnotsError, ValueError):
    pass


class NonSymmetrizable(ReplicaKnotsError, ValueError):
    """Determinant cannot be written as a polynomial in z = t^1/2 - t^-1/2."""


class NotPalindromic(ReplicaKnotsError, ValueError):
    pass


class OffCircle(ReplicaKnotsError, ValueError):
    pass


class InsufficientData(ReplicaKnotsError, ValueError):
    pass


class MultiComponent(ReplicaKnotsError, ValueError):
    """Ladder traversal closes up into more than one component."""


class NegativeFloor(ReplicaKnotsError, ValueError):
    pass


class ConservationViolated(ReplicaKnotsError, ValueError):
    pass


class Unsupported(ReplicaKnotsError, NotImplementedError):
    pass


class MalformedDiagram(ReplicaKnotsError, ValueError):
    pass


class UnknownKnot(ReplicaKnotsError, KeyError):
    pass


class UnknownTarget(ReplicaKnotsError, KeyError):
    pass
