"""Exception types shared across the package."""


class ImpactZetaError(Exception):
    """Base class for all errors raised by this package."""


class NotDivisible(ImpactZetaError):
    """Exact polynomial division left a nonzero remainder."""


class NonUnitDenominator(ImpactZetaError):
    """Series expansion needs a denominator with constant term 1."""


class UnknownVertex(ImpactZetaError):
    """A vertex address is not part of the tree it was used with."""


class LimitExceeded(ImpactZetaError):
    """A truncated tree would exceed the configured vertex cap."""


class RadiusTooSmall(ImpactZetaError):
    """The truncated tree does not reach the requested layer."""


class TruncationInsufficient(ImpactZetaError):
    """A counted sphere would touch the truncation boundary."""


class UnsupportedHeight(ImpactZetaError):
    """Closed-form walk counts are only defined off the basin."""


class ArityMismatch(ImpactZetaError):
    """A type vector has the wrong number of components for the case."""


class UnsupportedPrime(ImpactZetaError):
    """The requested residue characteristic is not supported."""


class PrecisionTooSmall(ImpactZetaError):
    """The working precision cannot certify the requested computation."""


class NotAUnit(ImpactZetaError):
    """Inversion was requested for a non-invertible element."""


class PrecisionExhausted(ImpactZetaError):
    """A valuation ran into the guard margin of the working precision."""


class NotInOrderUnit(ImpactZetaError):
    """The element is not a unit of the requested order."""


class EnumerationOverflow(ImpactZetaError):
    """An enumeration would exceed the configured size cap."""


class NotAnIdeal(ImpactZetaError):
    """The lattice is not closed under the module action."""


class OutsideTruncation(ImpactZetaError):
    """A lattice class falls outside the truncated tree it was located in."""
