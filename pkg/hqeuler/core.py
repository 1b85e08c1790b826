"""(h,q)-Euler polynomials attached to a character, alternating q-power sums
and the classical (q -> 1) generalized Euler polynomials."""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Any, List, Optional, Sequence, Tuple

from .characters import DirichletCharacter
from .errors import (
    ComplexityGuard,
    DivergentSeries,
    InvalidCharacter,
    NonIntegerXInExactMode,
    TruncationTooCoarse,
    UnsupportedDomain,
)
from .numerics import QContext, Scalar, is_numeric, q_number

logger = logging.getLogger(__name__)

NAIVE_TERM_LIMIT = 10 ** 8


@dataclass(frozen=True)
class EulerParams:
    """The (h, r) pair: integer weight h, order r >= 1."""
    h: int
    r: int = 1

    def __post_init__(self):
        if not isinstance(self.h, int):
            raise ValueError(f"h must be an integer, got {self.h!r}")
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"r must be a positive integer, got {self.r!r}")

    def exponents(self, shift: int = 0) -> List[int]:
        """The per-index exponents h - l + 1 + shift for l = 1..r."""
        return [self.h - l + 1 + shift for l in range(1, self.r + 1)]


@dataclass(frozen=True)
class SeriesTruncation:
    """Each summation index runs over 0..per_index_limit-1."""
    per_index_limit: int
    tail_bound: Optional[Any] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.per_index_limit, int) or self.per_index_limit < 1:
            raise ValueError("per_index_limit must be a positive integer")


@dataclass(frozen=True)
class SeriesEstimate:
    """A truncated series value with a rigorous bound on the dropped mass."""
    value: Scalar
    tail_bound: Scalar
    per_index_limit: int

    @property
    def truncation(self) -> SeriesTruncation:
        return SeriesTruncation(self.per_index_limit, self.tail_bound)


def _check_character(chi: DirichletCharacter, ctx: QContext) -> None:
    if not isinstance(chi, DirichletCharacter):
        raise InvalidCharacter(f"expected a DirichletCharacter, got {type(chi).__name__}")
    if ctx.is_exact and any(is_numeric(v) for v in chi.values):
        raise InvalidCharacter(f"character {chi} has complex values; use numeric mode")


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def alternating_weights(
    chi: DirichletCharacter, length: int, exponent: int, ctx: QContext
) -> List[Scalar]:
    """``[(-1)**j * chi(j) * base**(exponent*j) for j in range(length)]``."""
    step = ctx.power(exponent)
    weights = []
    power = ctx.one
    for j in range(length):
        weights.append(_sign(j) * ctx.lift(chi(j)) * power)
        power = power * step
    return weights


def convolve(a: Sequence[Scalar], b: Sequence[Scalar], ctx: QContext) -> List[Scalar]:
    """Cauchy product of two coefficient lists, fixed summation order."""
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


@lru_cache(maxsize=1024)
def multiple_weights(
    chi: DirichletCharacter,
    params: EulerParams,
    length: int,
    ctx: QContext,
    shift: int = 0,
) -> Tuple[Scalar, ...]:
    """
    Coefficients W[T] of the r-fold sum over the cube [0, length)^r grouped
    by T = j_1 + ... + j_r, each index weighted by
    (-1)^j chi(j) base^((h-l+1+shift) j).
    """
    result = None
    for exponent in params.exponents(shift):
        weights = alternating_weights(chi, length, exponent, ctx)
        result = weights if result is None else convolve(result, weights, ctx)
    return tuple(result)


@lru_cache(maxsize=4096)
def twisted_geometric(chi: DirichletCharacter, c: int, ctx: QContext) -> Scalar:
    """
    Abel-regularised sum over m >= 0 of chi(m) (-1)^m base^(c m).

    Splitting m = a + d k (d odd) gives
    sum_{a<d} chi(a) (-1)^a base^(c a) / (1 + base^(d c)).
    """
    d = chi.modulus
    numerator = sum(alternating_weights(chi, d, c, ctx), ctx.zero)
    return numerator / (ctx.one + ctx.power(d * c))


def _character_product(chi: DirichletCharacter, params: EulerParams, j: int, ctx: QContext) -> Scalar:
    product = ctx.one
    for exponent in params.exponents(j):
        product = product * twisted_geometric(chi, exponent, ctx)
    return product


def _require_argument(x: Any, ctx: QContext) -> Scalar:
    if not ctx.on_lattice(x):
        raise NonIntegerXInExactMode(
            f"x = {x} is not on the exponent lattice 1/{ctx.lattice} of the exact base"
        )
    return ctx.lift(x)


@lru_cache(maxsize=65536)
def _euler_poly(n: int, x: Scalar, chi: DirichletCharacter, params: EulerParams, ctx: QContext) -> Scalar:
    total = ctx.zero
    for j in range(n + 1):
        term = comb(n, j) * ctx.power(j * x) * _character_product(chi, params, j, ctx)
        total = total - term if j % 2 else total + term
    return q_number(2, ctx) ** params.r * total / (ctx.one - ctx.base) ** n


def euler_poly(
    n: int,
    x: Any,
    chi: DirichletCharacter,
    params: EulerParams,
    ctx: QContext,
) -> Scalar:
    """
    E_{n,chi,q}^{(h,r)}(x) by the finite closed form

        [2]_q^r (1-q)^(-n) sum_j C(n,j) (-1)^j q^(j x) prod_l T_l(j),

    where T_l(j) is :func:`twisted_geometric` at c = h - l + 1 + j. For h < r
    this is the regularised value; it agrees with the defining series where
    that converges.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    _check_character(chi, ctx)
    x = _require_argument(x, ctx)
    return _euler_poly(n, x, chi, params, ctx)


def euler_number(n: int, chi: DirichletCharacter, params: EulerParams, ctx: QContext) -> Scalar:
    """The (h,q)-extension of the generalized higher-order Euler numbers, E_n(0)."""
    return euler_poly(n, 0, chi, params, ctx)


def cube_tail(params: EulerParams, per_index_limit: int, ctx: QContext) -> Scalar:
    """
    Bound on the mass of alternating character weights outside the cube
    [0, M)^r: sum over l of (tail of index l) * prod of the other full sums.
    """
    mp = ctx.mp
    rho = abs(ctx.lift(ctx.base))
    full, tails = [], []
    for exponent in params.exponents():
        ratio = rho ** exponent
        full.append(1 / (1 - ratio))
        tails.append(ratio ** per_index_limit / (1 - ratio))
    bound = mp.mpf(0)
    for l, tail in enumerate(tails):
        term = tail
        for other, total in enumerate(full):
            if other != l:
                term *= total
        bound += term
    return bound


def _require_convergent(params: EulerParams, ctx: QContext) -> None:
    if ctx.is_exact:
        raise UnsupportedDomain("truncated series are evaluated in numeric mode only")
    if params.h < params.r:
        raise DivergentSeries(
            f"h={params.h} < r={params.r}: the multiple series does not converge absolutely"
        )


def euler_poly_series_oracle(
    n: int,
    x: Any,
    chi: DirichletCharacter,
    params: EulerParams,
    ctx: QContext,
    trunc: SeriesTruncation,
) -> SeriesEstimate:
    """
    Direct truncated evaluation of the defining r-fold series

        [2]_q^r sum_{m in [0,M)^r} q^(sum (h-l+1) m_l) (-1)^(sum m) prod chi(m_l) [x + sum m]_q^n.
    """
    _require_convergent(params, ctx)
    _check_character(chi, ctx)
    mp = ctx.mp
    x = ctx.lift(x)
    limit = trunc.per_index_limit
    weights = multiple_weights(chi, params, limit, ctx)

    total = ctx.zero
    for shift, weight in enumerate(weights):
        if weight == 0:
            continue
        total += weight * q_number(x + shift, ctx) ** n
    two_r = q_number(2, ctx) ** params.r

    rho = abs(ctx.lift(ctx.base))
    bracket_bound = (1 + max(mp.mpf(1), rho ** mp.re(x))) / abs(1 - ctx.lift(ctx.base))
    tail = abs(two_r) * bracket_bound ** n * cube_tail(params, limit, ctx)
    if tail > ctx.tolerance:
        raise TruncationTooCoarse(
            f"tail bound {mp.nstr(tail, 5)} exceeds tolerance {ctx.tolerance} at M={limit}"
        )
    logger.debug("series oracle n=%d M=%d tail=%s", n, limit, mp.nstr(tail, 5))
    return SeriesEstimate(two_r * total, tail, limit)


def _check_power_sum_args(n: int, i: int, w: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    if not isinstance(i, int) or not 0 <= i <= n:
        raise ValueError(f"i must lie in 0..{n}, got {i!r}")
    if not isinstance(w, int) or w < 1:
        raise ValueError(f"w must be a positive integer, got {w!r}")


def power_sum_naive(
    n: int,
    i: int,
    w: int,
    chi: DirichletCharacter,
    params: EulerParams,
    ctx: QContext,
) -> Scalar:
    """
    S_{n,i,q}^{(h,r)}(w|chi) as the literal r-fold sum over [0, w)^r of
    (-1)^(sum j) q^(sum (h-l+n-i+1) j_l) [j_1+...+j_r]_q^i prod chi(j_l),
    with [0]_q^0 = 1.
    """
    _check_power_sum_args(n, i, w)
    _check_character(chi, ctx)
    if w ** params.r > NAIVE_TERM_LIMIT:
        raise ComplexityGuard(f"{w}^{params.r} terms exceed the naive limit {NAIVE_TERM_LIMIT}")

    per_index = [alternating_weights(chi, w, exponent, ctx)
                 for exponent in params.exponents(n - i)]
    total = ctx.zero
    for js in itertools.product(range(w), repeat=params.r):
        weight = ctx.one
        for l, j in enumerate(js):
            weight = weight * per_index[l][j]
            if weight == 0:
                break
        if weight == 0:
            continue
        total += weight * q_number(sum(js), ctx) ** i
    return total


def power_sum_factored(
    n: int,
    i: int,
    w: int,
    chi: DirichletCharacter,
    params: EulerParams,
    ctx: QContext,
) -> Scalar:
    """
    Same value as :func:`power_sum_naive` in O((i+1) r w) operations.

    Expanding [J]_q^i = (1-q)^(-i) sum_t C(i,t) (-1)^t q^(t J) turns the r-fold
    sum into a product of one-dimensional sums for every t.
    """
    _check_power_sum_args(n, i, w)
    _check_character(chi, ctx)
    total = ctx.zero
    for t in range(i + 1):
        product = ctx.one
        for exponent in params.exponents(n - i + t):
            product = product * sum(alternating_weights(chi, w, exponent, ctx), ctx.zero)
        term = comb(i, t) * product
        total = total - term if t % 2 else total + term
    return total / (ctx.one - ctx.base) ** i


def _classical_order_one(n: int, point: Scalar, chi: DirichletCharacter, ctx: QContext) -> List[Scalar]:
    d = chi.modulus
    values = [ctx.lift(chi(a)) for a in range(d)]
    sequence: List[Scalar] = []
    for k in range(n + 1):
        driving = sum((_sign(a) * values[a] * (a + point) ** k for a in range(d)), ctx.zero)
        correction = sum((comb(k, j) * d ** (k - j) * sequence[j] for j in range(k)), ctx.zero)
        sequence.append((2 * driving - correction) / 2)
    return sequence


def classical_euler_poly(
    n: int,
    x: Any,
    chi: DirichletCharacter,
    r: int,
    ctx: QContext,
) -> Scalar:
    """
    The q -> 1 limit E_{n,chi}^{(r)}(x).

    Order one comes from (e^(dt) + 1) G(t) = 2 sum_a chi(a) (-1)^a e^((a+x)t);
    order r convolves the order-one numbers (r - 1) times with the order-one
    polynomials at x. ``ctx`` only fixes the arithmetic; its q is unused.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")
    _check_character(chi, ctx)
    x = ctx.lift(x)
    polys = _classical_order_one(n, x, chi, ctx)
    if r > 1:
        numbers = _classical_order_one(n, ctx.zero, chi, ctx)
        for _ in range(r - 1):
            polys = [
                sum((comb(m, k) * numbers[k] * polys[m - k] for k in range(m + 1)), ctx.zero)
                for m in range(n + 1)
            ]
    return polys[n]


def addition_expand(
    n: int,
    x: Any,
    y: Any,
    chi: DirichletCharacter,
    params: EulerParams,
    ctx: QContext,
) -> Scalar:
    """sum_i C(n,i) q^(x i) E_i(y) [x]_q^(n-i), the expanded form of E_n(x+y)."""
    x = _require_argument(x, ctx)
    bracket = q_number(x, ctx)
    total = ctx.zero
    for i in range(n + 1):
        total += comb(n, i) * ctx.power(i * x) * euler_poly(i, y, chi, params, ctx) * bracket ** (n - i)
    return total
