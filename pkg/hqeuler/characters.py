"""Dirichlet characters of odd modulus."""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Dict, List, Sequence, Tuple

from sympy.ntheory import factorint, isprime, primitive_root

from .errors import (
    ConfigError,
    EvenModulus,
    ExactModeUnsupported,
    HQEulerError,
    InvalidCharacter,
    NonUnitValue,
    NotMultiplicative,
    NotOddPrime,
    WrongZeroPattern,
)
from .numerics import QContext, Scalar, is_numeric, parse_complex

logger = logging.getLogger(__name__)

DEFAULT_TABLE_TOLERANCE = 1e-20


@dataclass(frozen=True)
class DirichletCharacter:
    """
    A character chi mod d given by its value table on residues 0..d-1.

    Rational characters store plain ints (-1, 0, 1); complex ones store
    mpmath ``mpc`` values. Evaluation at m >= d reduces m mod d.
    """
    modulus: int
    values: Tuple[Scalar, ...]
    is_principal: bool = False
    is_rational: bool = False
    label: str = field(default="", compare=False)

    def __call__(self, m: int) -> Scalar:
        return self.values[m % self.modulus]

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            raise InvalidCharacter("characters of different moduli cannot be multiplied")
        values = tuple(_normalise(a * b) for a, b in zip(self.values, other.values))
        return DirichletCharacter(
            modulus=self.modulus,
            values=values,
            is_principal=_principal_flag(self.modulus, values),
            is_rational=_rational_flag(values),
            label=f"{self.label}*{other.label}",
        )

    def __str__(self) -> str:
        if self.label:
            return self.label
        return f"{self.modulus}:" + ",".join(str(v) for v in self.values)


def _normalise(value):
    """Collapse integral rationals to ints so rational tables stay exact."""
    if isinstance(value, Rational) and Fraction(value).denominator == 1:
        return int(value)
    return value


def _units(d: int) -> List[int]:
    return [a for a in range(d) if gcd(a, d) == 1]


def _principal_flag(d: int, values: Sequence[Scalar]) -> bool:
    return all(values[a] == 1 for a in _units(d))


def _rational_flag(values: Sequence[Scalar]) -> bool:
    return all(isinstance(v, int) and v in (-1, 0, 1) for v in values)


def _check_modulus(d: int) -> None:
    if not isinstance(d, int) or d < 1:
        raise InvalidCharacter(f"modulus must be a positive integer, got {d!r}")
    if d % 2 == 0:
        raise EvenModulus(f"modulus {d} is even; only odd moduli are supported")


def _exponent(d: int) -> int:
    """Exponent of (Z/dZ)* for odd d (lcm of the cyclic factor orders)."""
    result = 1
    for p, k in factorint(d).items():
        order = (p - 1) * p ** (k - 1)
        result = result * order // gcd(result, order)
    return result


def _close(a: Scalar, b: Scalar, tolerance: float) -> bool:
    if is_numeric(a) or is_numeric(b):
        return abs(a - b) <= tolerance
    return a == b


def principal(d: int) -> DirichletCharacter:
    """The principal character mod d (identically 1 for d = 1)."""
    _check_modulus(d)
    values = tuple(1 if gcd(a, d) == 1 else 0 for a in range(d))
    return DirichletCharacter(d, values, is_principal=True, is_rational=True,
                              label=f"principal:{d}")


def quadratic(p: int) -> DirichletCharacter:
    """The Legendre symbol mod an odd prime p, via Euler's criterion."""
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise NotOddPrime(f"{p!r} is not an odd prime")
    values = []
    for a in range(p):
        residue = pow(a, (p - 1) // 2, p)
        values.append(-1 if residue == p - 1 else residue)
    return DirichletCharacter(p, tuple(values), is_principal=False, is_rational=True,
                              label=f"quadratic:{p}")


def from_table(
    d: int,
    values: Sequence[Scalar],
    tolerance: float = DEFAULT_TABLE_TOLERANCE,
    label: str = "",
) -> DirichletCharacter:
    """
    Validate a value table and build the character.

    Raises:
        EvenModulus, WrongZeroPattern, NonUnitValue, NotMultiplicative
    """
    _check_modulus(d)
    if len(values) != d:
        raise InvalidCharacter(f"expected {d} values, got {len(values)}")
    table = tuple(_normalise(v) for v in values)

    for a, v in enumerate(table):
        is_unit = gcd(a, d) == 1
        vanishes = _close(v, 0, tolerance)
        if is_unit == vanishes:
            raise WrongZeroPattern(
                f"chi({a}) = {v}: values must vanish exactly off the units mod {d}"
            )
    units = _units(d)
    for a in units:
        v = table[a]
        if is_numeric(v):
            if abs(abs(v) - 1) > tolerance:
                raise NonUnitValue(f"|chi({a})| = {abs(v)} is not 1")
        elif v not in (1, -1):
            raise NonUnitValue(f"chi({a}) = {v} is not a rational root of unity")

    for i, a in enumerate(units):
        for b in units[i:]:
            if not _close(table[(a * b) % d], table[a] * table[b], tolerance):
                raise NotMultiplicative(
                    f"chi({a}*{b}) != chi({a})*chi({b}) mod {d}", witness=(a, b)
                )

    exponent = _exponent(d)
    for a in units:
        if not _close(table[a] ** exponent, 1, tolerance * exponent):
            raise NonUnitValue(f"chi({a}) is not a root of unity of order dividing {exponent}")

    return DirichletCharacter(
        modulus=d,
        values=table,
        is_principal=_principal_flag(d, table),
        is_rational=_rational_flag(table),
        label=label,
    )


def _discrete_logs(modulus: int, generator: int) -> Dict[int, int]:
    logs = {}
    value = 1
    for k in range(modulus):
        if value in logs:
            break
        logs[value] = k
        value = value * generator % modulus
    return logs


def _root_of_unity(phase: Fraction, ctx: QContext) -> Scalar:
    """exp(2*pi*i*phase); exact for phases in (1/2)Z."""
    phase = phase % 1
    if phase == 0:
        return 1
    if phase == Fraction(1, 2):
        return -1
    if ctx.is_exact:
        raise ExactModeUnsupported(f"root of unity of order {phase.denominator} is not rational")
    mp = ctx.mp
    return mp.expjpi(mp.mpf(2 * phase.numerator) / phase.denominator)


def enumerate_characters(d: int, ctx: QContext) -> List[DirichletCharacter]:
    """
    All phi(d) characters mod d, principal first.

    (Z/dZ)* is split by CRT into cyclic groups (Z/p^kZ)*, each with a
    primitive root; a character is a vector of exponents, one per factor.
    """
    _check_modulus(d)
    if ctx.is_exact and _exponent(d) > 2:
        raise ExactModeUnsupported(
            f"characters mod {d} are not all rational; use numeric mode"
        )

    components = []
    for p, k in sorted(factorint(d).items()):
        prime_power = p ** k
        order = (p - 1) * p ** (k - 1)
        generator = int(primitive_root(prime_power))
        components.append((prime_power, order, _discrete_logs(prime_power, generator)))

    units = _units(d)
    characters = []
    for exponents in itertools.product(*(range(order) for _, order, _ in components)):
        values = [0] * d
        for a in units:
            phase = sum(
                (Fraction(e * logs[a % prime_power], order)
                 for e, (prime_power, order, logs) in zip(exponents, components)),
                Fraction(0),
            )
            values[a] = _root_of_unity(phase, ctx)
        index = len(characters)
        characters.append(DirichletCharacter(
            modulus=d,
            values=tuple(values),
            is_principal=index == 0,
            is_rational=_rational_flag(values),
            label=f"enum:{d}:{index}",
        ))

    logger.debug("enumerated %d characters mod %d", len(characters), d)
    return characters


LITERAL_TABLE_TOLERANCE = 1e-12


def parse_character(text: str, ctx: QContext) -> DirichletCharacter:
    """
    Read a character literal.

    Accepted forms are ``principal:d``, ``quadratic:p``, ``enum:d:k`` (the
    k-th member of :func:`enumerate_characters`) and an explicit table
    ``d:v0,v1,...`` whose entries are integers or ``re+imi`` complex values.

    Raises:
        ConfigError: the literal is malformed
        InvalidCharacter: the table fails validation
    """
    text = text.strip()
    kind, _, rest = text.partition(":")
    if not rest:
        raise ConfigError(f"malformed character literal {text!r}")
    try:
        if kind == "principal":
            return principal(int(rest))
        if kind == "quadratic":
            return quadratic(int(rest))
        if kind == "enum":
            d_text, _, k_text = rest.partition(":")
            d, k = int(d_text), int(k_text)
            characters = enumerate_characters(d, ctx)
            if not 0 <= k < len(characters):
                raise ConfigError(f"enum:{d}:{k}: there are {len(characters)} characters mod {d}")
            return characters[k]
        d = int(kind)
    except ValueError as e:
        if isinstance(e, HQEulerError):
            raise
        raise ConfigError(f"malformed character literal {text!r}: {e}")

    values = []
    for entry in rest.split(","):
        entry = entry.strip()
        if entry.lstrip("+-").isdigit():
            values.append(int(entry))
        elif ctx.is_exact:
            raise ConfigError(f"complex value {entry!r} in {text!r} needs numeric mode")
        else:
            values.append(parse_complex(entry, ctx))
    return from_table(d, values, tolerance=LITERAL_TABLE_TOLERANCE, label=text)
