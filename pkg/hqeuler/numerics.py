"""Scalar tower (exact rationals / mpmath floats) and q-bracket primitives.

Exact scalars are ``fractions.Fraction`` values, numeric scalars are mpmath
``mpf``/``mpc`` values owned by an ``MPContext`` of the configured precision.
Every other module receives a :class:`QContext` and never mixes the two.
"""

import logging
import re
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Any, Optional, Tuple, Union

from mpmath.ctx_mp import MPContext

from .errors import (
    ConfigError,
    InvalidContext,
    MixedVariants,
    NonIntegerExponentInExactMode,
)

logger = logging.getLogger(__name__)

# Fraction for exact mode, mpf/mpc for numeric mode.
Scalar = Any

DEFAULT_PRECISION = 256
DEFAULT_TOLERANCE = 1e-30
MIN_PRECISION = 64


class Mode(Enum):
    """Arithmetic mode of a context."""
    EXACT = "exact"
    NUMERIC = "numeric"


@lru_cache(maxsize=None)
def mp_context(precision: int) -> MPContext:
    """Shared mpmath context for a working precision in bits."""
    ctx = MPContext()
    ctx.prec = precision
    return ctx


def is_numeric(value: Any) -> bool:
    """True for mpmath floats and complex numbers (of any context)."""
    return hasattr(value, "_mpf_") or hasattr(value, "_mpc_")


def is_exact(value: Any) -> bool:
    return isinstance(value, Rational) and not isinstance(value, bool)


@dataclass(frozen=True)
class QContext:
    """
    The base q, the arithmetic mode and the numeric knobs.

    ``q`` is the generator; the *base* of the context is ``q**lattice``.
    Rescaled contexts (base ``q**w``) keep the generator so that powers of
    the base at rational exponents with denominator ``w`` stay rational.
    """
    q: Scalar
    mode: Mode = Mode.EXACT
    tolerance: float = DEFAULT_TOLERANCE
    precision: int = DEFAULT_PRECISION
    lattice: int = 1

    def __post_init__(self):
        if not isinstance(self.lattice, int) or self.lattice < 1:
            raise InvalidContext(f"lattice must be a positive integer, got {self.lattice!r}")
        if self.tolerance < 0:
            raise InvalidContext("tolerance must be nonnegative")

        if self.mode is Mode.EXACT:
            if is_numeric(self.q) or isinstance(self.q, (float, complex)):
                raise InvalidContext("exact mode needs a rational q")
            try:
                q = Fraction(self.q)
            except (TypeError, ValueError) as e:
                raise InvalidContext(f"cannot read q={self.q!r} as a rational: {e}")
        else:
            if self.precision < MIN_PRECISION:
                raise InvalidContext(
                    f"precision must be at least {MIN_PRECISION} bits, got {self.precision}"
                )
            q = self.lift(self.q)

        if q == 0 or abs(q) >= 1:
            raise InvalidContext(f"q must satisfy 0 < |q| < 1, got {q}")
        object.__setattr__(self, "q", q)

    @classmethod
    def exact(cls, q, lattice: int = 1) -> "QContext":
        return cls(q=q, mode=Mode.EXACT, lattice=lattice)

    @classmethod
    def numeric(
        cls,
        q,
        precision: int = DEFAULT_PRECISION,
        tolerance: float = DEFAULT_TOLERANCE,
        lattice: int = 1,
    ) -> "QContext":
        return cls(q=q, mode=Mode.NUMERIC, tolerance=tolerance,
                   precision=precision, lattice=lattice)

    @property
    def mp(self) -> MPContext:
        return mp_context(self.precision)

    @property
    def is_exact(self) -> bool:
        return self.mode is Mode.EXACT

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.is_exact else self.mp.mpf(0)

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.is_exact else self.mp.mpf(1)

    @property
    def base(self) -> Scalar:
        """The effective q of this context, ``q**lattice``."""
        return self.q ** self.lattice

    def with_lattice(self, w: int) -> "QContext":
        """Context whose base is ``base**w``."""
        return replace(self, lattice=self.lattice * w)

    def as_numeric(
        self,
        precision: Optional[int] = None,
        tolerance: Optional[float] = None,
    ) -> "QContext":
        """The same base embedded into big floats."""
        return QContext(
            q=self.q,
            mode=Mode.NUMERIC,
            tolerance=self.tolerance if tolerance is None else tolerance,
            precision=self.precision if precision is None else precision,
            lattice=self.lattice,
        )

    def lift(self, value: Any) -> Scalar:
        """Coerce ints, fractions, strings or foreign mpmath values into this context."""
        if self.is_exact:
            if is_numeric(value) or isinstance(value, (float, complex)):
                raise MixedVariants(f"numeric value {value!r} in an exact context")
            return Fraction(value)
        mp = self.mp
        if isinstance(value, Rational):
            return mp.mpf(value.numerator) / value.denominator
        if isinstance(value, str) and "/" in value:
            frac = Fraction(value)
            return mp.mpf(frac.numerator) / frac.denominator
        return mp.convert(value)

    def ratio(self, numerator: int, denominator: int) -> Scalar:
        if self.is_exact:
            return Fraction(numerator, denominator)
        return self.mp.mpf(numerator) / denominator

    def on_lattice(self, exponent: Any) -> bool:
        """Whether ``base**exponent`` is a rational power of the generator."""
        if not self.is_exact:
            return True
        if not is_exact(exponent):
            return False
        return (Fraction(exponent) * self.lattice).denominator == 1

    def power(self, exponent: Any) -> Scalar:
        """``base**exponent``; exact mode requires ``exponent*lattice`` integral."""
        if self.is_exact:
            if not self.on_lattice(exponent):
                raise NonIntegerExponentInExactMode(
                    f"q^({exponent}) with base q^{self.lattice} is not rational"
                )
            return self.q ** int(Fraction(exponent) * self.lattice)
        if isinstance(exponent, int):
            return self.q ** (exponent * self.lattice)
        return self.mp.power(self.q, self.lift(exponent) * self.lattice)

    @property
    def digits(self) -> int:
        """Decimal digits carried by the working precision."""
        return max(1, int(self.precision * 0.30103))


def _require_variant(value: Any, ctx: QContext) -> None:
    if isinstance(value, int) and not isinstance(value, bool):
        return
    if ctx.is_exact and not is_exact(value):
        raise MixedVariants(f"expected an exact rational, got {value!r}")
    if not ctx.is_exact and not is_numeric(value):
        raise MixedVariants(f"expected a big float, got {value!r}")


def q_pow(e: int, ctx: QContext) -> Scalar:
    """``q**e`` in the base of ``ctx`` for any integer ``e``."""
    if int(e) != e:
        raise NonIntegerExponentInExactMode(f"q_pow takes integer exponents, got {e!r}")
    return ctx.power(int(e))


def q_number(x: Any, ctx: QContext) -> Scalar:
    """The q-bracket ``[x]_q = (1 - q**x) / (1 - q)``."""
    if x == 0:
        return ctx.zero
    return (ctx.one - ctx.power(x)) / (ctx.one - ctx.base)


def scalar_eq(a: Scalar, b: Scalar, ctx: QContext, slack: Any = 0) -> bool:
    """
    Mode-appropriate equality.

    Exact mode compares reduced rationals; numeric mode accepts
    ``|a - b| <= tolerance * max(1, |a|, |b|) + slack``.
    """
    _require_variant(a, ctx)
    _require_variant(b, ctx)
    if ctx.is_exact:
        return Fraction(a) == Fraction(b)
    mp = ctx.mp
    a, b = mp.convert(a), mp.convert(b)
    scale = max(mp.mpf(1), abs(a), abs(b))
    return abs(a - b) <= mp.mpf(ctx.tolerance) * scale + slack


def render_scalar(value: Scalar, ctx: QContext, digits: Optional[int] = None) -> str:
    """Exact scalars as ``num/den`` (``num`` when integral), numeric ones as decimals."""
    if ctx.is_exact:
        return str(Fraction(value))
    mp = ctx.mp
    digits = digits or ctx.digits
    value = mp.convert(value)
    if hasattr(value, "_mpc_"):
        re_part, im_part = value.real, value.imag
        if im_part == 0:
            return mp.nstr(re_part, digits)
        sign = "-" if im_part < 0 else "+"
        return f"{mp.nstr(re_part, digits)}{sign}{mp.nstr(abs(im_part), digits)}i"
    return mp.nstr(value, digits)


_NUMERIC_LITERAL = re.compile(r"^(?P<value>[^@]+)@(?P<bits>\d+)$")
_COMPLEX_LITERAL = re.compile(
    r"^(?P<re>[+-]?[0-9.]+(?:[eE][+-]?\d+)?)?(?P<im>[+-][0-9.]*(?:[eE][+-]?\d+)?)i$"
)


def parse_literal(text: str) -> Tuple[Union[Fraction, str], Mode, Optional[int]]:
    """
    Read a scalar literal.

    ``"a/b"`` or an integer is exact; ``"0.25@256"`` is numeric at 256 bits;
    a bare decimal such as ``"0.25"`` is numeric at the default precision.
    Numeric values come back as strings so the caller can lift them at the
    right precision.
    """
    text = text.strip()
    match = _NUMERIC_LITERAL.match(text)
    if match:
        return match.group("value"), Mode.NUMERIC, int(match.group("bits"))
    if re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        try:
            return Fraction(text), Mode.EXACT, None
        except ZeroDivisionError:
            raise ConfigError(f"zero denominator in {text!r}")
    try:
        float(text)
    except ValueError:
        raise ConfigError(f"not a scalar literal: {text!r}")
    return text, Mode.NUMERIC, None


def parse_complex(text: str, ctx: QContext) -> Scalar:
    """Read ``"2"``, ``"-0.5"`` or ``"3+1i"`` style complex literals into ``ctx``."""
    text = text.strip().replace(" ", "")
    match = _COMPLEX_LITERAL.match(text)
    if not match:
        try:
            return ctx.lift(text)
        except (ValueError, TypeError) as e:
            raise ConfigError(f"not a complex literal: {text!r} ({e})")
    if ctx.is_exact:
        raise MixedVariants("complex literals need a numeric context")
    mp = ctx.mp
    im_text = match.group("im")
    if im_text in ("+", "-"):
        im_text += "1"
    re_part = mp.mpf(match.group("re")) if match.group("re") else mp.mpf(0)
    return mp.mpc(re_part, mp.mpf(im_text))


def context_from_literal(
    literal: str,
    mode: Optional[str] = None,
    precision: int = DEFAULT_PRECISION,
    tolerance: float = DEFAULT_TOLERANCE,
) -> QContext:
    """
    Build a context from a q literal.

    The literal fixes the mode (``"1/2"`` exact, ``"0.3"`` or ``"0.3@128"``
    numeric) unless ``mode`` overrides it; a ``@bits`` suffix overrides
    ``precision``.
    """
    value, literal_mode, bits = parse_literal(str(literal))
    mode = Mode(mode) if mode else literal_mode
    if mode is Mode.EXACT:
        if literal_mode is not Mode.EXACT:
            raise ConfigError(f"q={literal} is not a rational literal")
        return QContext.exact(value)
    return QContext.numeric(str(value), precision=bits or precision, tolerance=tolerance)


def lift_argument(value: Any, ctx: QContext) -> Any:
    """
    Read a polynomial argument (int, ``"a/b"``, decimal) into ``ctx``.

    Ints pass through unchanged; exact contexts accept rational literals only.
    """
    if isinstance(value, int):
        return value
    if ctx.is_exact:
        if isinstance(value, str):
            literal, mode, _ = parse_literal(value)
            if mode is not Mode.EXACT:
                raise ConfigError(f"{value!r} is not a rational literal")
            return literal
        if isinstance(value, float):
            raise ConfigError(f"{value!r} is not a rational literal")
        return value
    return ctx.lift(value)
