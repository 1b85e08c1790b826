"""Exception hierarchy for hqeuler."""

from typing import Optional, Tuple


class HQEulerError(Exception):
    """Base class for all hqeuler errors."""


class InvalidContext(HQEulerError, ValueError):
    """The q-context violates 0 < |q| < 1 or has an unusable precision."""


class NonIntegerExponentInExactMode(HQEulerError, ValueError):
    """A power of q would leave the rationals."""


class NonIntegerXInExactMode(NonIntegerExponentInExactMode):
    """A polynomial argument is not on the exponent lattice of the base."""


class MixedVariants(HQEulerError, TypeError):
    """An exact rational met an arbitrary-precision float (or vice versa)."""


class EvenModulus(HQEulerError, ValueError):
    """Characters are only defined here for odd moduli."""


class NotOddPrime(HQEulerError, ValueError):
    """The quadratic character needs an odd prime."""


class InvalidCharacter(HQEulerError, ValueError):
    """A value table does not describe a Dirichlet character."""


class NotMultiplicative(InvalidCharacter):
    """chi(a*b) != chi(a)*chi(b) for some units a, b."""

    def __init__(self, message: str, witness: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.witness = witness


class WrongZeroPattern(InvalidCharacter):
    """The table vanishes on a unit or is nonzero off the units."""


class NonUnitValue(InvalidCharacter):
    """A value on a unit is not a root of unity."""


class ExactModeUnsupported(HQEulerError, ValueError):
    """The requested characters are not rational-valued."""


class DivergentSeries(HQEulerError, ValueError):
    """The defining multiple series does not converge absolutely (h < r)."""


class TruncationTooCoarse(HQEulerError, ValueError):
    """The tail bound of a truncated series exceeds the tolerance."""


class ComplexityGuard(HQEulerError, ValueError):
    """A brute-force sum would exceed the term budget."""


class UnsupportedDomain(HQEulerError, ValueError):
    """Arguments outside the supported half-line or base range."""


class OddnessViolation(HQEulerError, ValueError):
    """Symmetry identities require odd w1 and w2."""


class ConfigError(HQEulerError, ValueError):
    """A grid config or CLI literal could not be parsed."""
