"""Dirichlet-type multiple (h,q)-l-function by truncated multiple series."""

import logging
from dataclasses import dataclass
from typing import Any, Optional

from .characters import DirichletCharacter
from .core import (
    EulerParams,
    SeriesEstimate,
    SeriesTruncation,
    _require_convergent,
    cube_tail,
    multiple_weights,
)
from .errors import TruncationTooCoarse, UnsupportedDomain
from .identities.base import GridPoint, IdentityId, IdentityReport, make_report, require_odd
from .numerics import QContext, Scalar, q_number

logger = logging.getLogger(__name__)

MAX_PER_INDEX_LIMIT = 1 << 14


@dataclass(frozen=True)
class LQuery:
    """Arguments of one l-function evaluation."""
    s: Any
    x: Any
    chi: DirichletCharacter
    params: EulerParams
    trunc: SeriesTruncation


def _real_base(ctx: QContext) -> Scalar:
    base = ctx.lift(ctx.base)
    if hasattr(base, "_mpc_"):
        if base.imag != 0:
            raise UnsupportedDomain("the l-function is evaluated for real 0 < q < 1 only")
        base = base.real
    if not 0 < base < 1:
        raise UnsupportedDomain(f"the l-function is evaluated for real 0 < q < 1 only, got q={base}")
    return base


def _real_argument(x: Any, ctx: QContext) -> Scalar:
    x = ctx.lift(x)
    if hasattr(x, "_mpc_"):
        if x.imag != 0:
            raise UnsupportedDomain("x must be real")
        x = x.real
    if x <= 0:
        raise UnsupportedDomain(f"x must be positive, got {x}")
    return x


def l_tail_bound(params: EulerParams, per_index_limit: int, s: Any, x: Any, ctx: QContext) -> Scalar:
    """
    Rigorous bound on the dropped mass of the truncated l-series.

    For 0 < q < 1 the brackets [T + x]_q range over [[x]_q, 1/(1-q)), so
    |[T + x]_q^(-s)| is bounded by the larger endpoint value of b^(-Re s).
    """
    mp = ctx.mp
    base = _real_base(ctx)
    x = _real_argument(x, ctx)
    s = ctx.lift(s)
    exponent = -mp.re(s)
    low, high = q_number(x, ctx), 1 / (1 - base)
    bracket_bound = max(mp.power(low, exponent), mp.power(high, exponent))
    two_r = q_number(2, ctx) ** params.r
    return abs(two_r) * bracket_bound * cube_tail(params, per_index_limit, ctx)


def choose_truncation(
    params: EulerParams,
    s: Any,
    x: Any,
    ctx: QContext,
    target: Optional[float] = None,
) -> SeriesTruncation:
    """Smallest per-index limit whose tail bound is at most ``target`` (default: tolerance)."""
    _require_convergent(params, ctx)
    target = ctx.tolerance if target is None else target

    limit = 1
    while l_tail_bound(params, limit, s, x, ctx) > target:
        limit *= 2
        if limit > MAX_PER_INDEX_LIMIT:
            raise TruncationTooCoarse(
                f"no per-index limit up to {MAX_PER_INDEX_LIMIT} reaches tail {target}"
            )
    low, high = limit // 2, limit
    while high - low > 1:
        middle = (low + high) // 2
        if l_tail_bound(params, middle, s, x, ctx) > target:
            low = middle
        else:
            high = middle
    bound = l_tail_bound(params, high, s, x, ctx)
    logger.debug("chose per-index limit %d (tail %s)", high, ctx.mp.nstr(bound, 5))
    return SeriesTruncation(high, bound)


def l_multiple(query: LQuery, ctx: QContext) -> SeriesEstimate:
    """
    Truncated value of

        [2]_q^r sum_m q^(sum (h-l+1) m_l) prod chi(m_l) (-1)^(sum m) / [m_1+...+m_r+x]_q^s

    over the cube [0, M)^r, with the principal branch of the power.

    Raises:
        DivergentSeries: h < r
        UnsupportedDomain: x <= 0, q outside (0, 1) or exact mode
        TruncationTooCoarse: tail bound above the tolerance
    """
    _require_convergent(query.params, ctx)
    mp = ctx.mp
    x = _real_argument(query.x, ctx)
    s = ctx.lift(query.s)
    limit = query.trunc.per_index_limit

    tail = l_tail_bound(query.params, limit, s, x, ctx)
    if tail > ctx.tolerance:
        raise TruncationTooCoarse(
            f"tail bound {mp.nstr(tail, 5)} exceeds tolerance {ctx.tolerance} at M={limit}"
        )

    weights = multiple_weights(query.chi, query.params, limit, ctx)
    total = ctx.zero
    for shift, weight in enumerate(weights):
        if weight == 0:
            continue
        total += weight * mp.power(q_number(x + shift, ctx), -s)
    value = q_number(2, ctx) ** query.params.r * total
    return SeriesEstimate(value, tail, limit)


def theorem_l_side(
    s: Any,
    x: Any,
    wa: int,
    wb: int,
    chi: DirichletCharacter,
    params: EulerParams,
    ctx: QContext,
    trunc: Optional[SeriesTruncation] = None,
) -> SeriesEstimate:
    """
    [2]_{q^wb}^r [wb]_q^s sum_{j in [0, wa d)^r} (-1)^(sum j) prod chi(j_l)
        q^(wb sum (h-l+1) j_l) l_{q^wa}(s, wb x + (wb/wa) sum j).

    The tail of the result accumulates every l-evaluation's tail times
    the absolute value of its weight.
    """
    mp = ctx.mp
    outer = ctx.with_lattice(wb)
    inner = ctx.with_lattice(wa)
    s = ctx.lift(s)
    x = ctx.lift(x)
    weights = multiple_weights(chi, params, wa * chi.modulus, outer)
    if trunc is None:
        trunc = choose_truncation(params, s, wb * x, inner)

    prefactor = q_number(2, outer) ** params.r * mp.power(q_number(wb, ctx), s)
    total = ctx.zero
    tail = mp.mpf(0)
    for shift, weight in enumerate(weights):
        if weight == 0:
            continue
        argument = wb * x + ctx.ratio(wb * shift, wa)
        estimate = l_multiple(LQuery(s, argument, chi, params, trunc), inner)
        total += weight * estimate.value
        tail += abs(weight) * estimate.tail_bound
    return SeriesEstimate(prefactor * total, abs(prefactor) * tail, trunc.per_index_limit)


def check_theorem_L(
    s: Any,
    x: Any,
    w1: int,
    w2: int,
    chi: DirichletCharacter,
    params: EulerParams,
    ctx: QContext,
    trunc: Optional[SeriesTruncation] = None,
) -> IdentityReport:
    """Both sides of the l-function symmetry in (w1, w2) and their residual."""
    require_odd(w1, w2)
    lhs = theorem_l_side(s, x, w1, w2, chi, params, ctx, trunc)
    rhs = theorem_l_side(s, x, w2, w1, chi, params, ctx, trunc)
    point = GridPoint(
        chi=chi, params=params, ctx=ctx, x=x, w1=w1, w2=w2, s=ctx.lift(s),
        truncation=trunc.per_index_limit if trunc else None,
    )
    return make_report(IdentityId.THM21, point, ("s", "x", "w1", "w2"), lhs, rhs)
