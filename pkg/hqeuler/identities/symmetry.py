"""Symmetry identities in two odd parameters w1, w2."""

from math import comb
from typing import Any, Tuple

from .. import lseries
from ..characters import DirichletCharacter
from ..core import EulerParams, SeriesEstimate, SeriesTruncation, euler_poly, multiple_weights, power_sum_factored
from ..numerics import Mode, QContext, Scalar, lift_argument, q_number
from .base import GridPoint, Identity, IdentityId, IdentityReport, require_odd


def euler_symmetric_side(
    n: int,
    x: Any,
    wa: int,
    wb: int,
    chi: DirichletCharacter,
    params: EulerParams,
    ctx: QContext,
) -> Scalar:
    """
    [2]_{q^wb}^r [wa]_q^n sum_{j in [0, wa d)^r} (-1)^(sum j) prod chi(j_l)
        q^(wb sum (h-l+1) j_l) E_{n,chi,q^wa}(wb x + (wb/wa) sum j).

    The r-fold sum is grouped by J = sum j; the argument has denominator wa
    and is evaluated exactly in the context with base q^wa.
    """
    outer = ctx.with_lattice(wb)
    inner = ctx.with_lattice(wa)
    weights = multiple_weights(chi, params, wa * chi.modulus, outer)
    total = ctx.zero
    for shift, weight in enumerate(weights):
        if weight == 0:
            continue
        argument = wb * x + ctx.ratio(wb * shift, wa)
        total += weight * euler_poly(n, argument, chi, params, inner)
    return q_number(2, outer) ** params.r * q_number(wa, ctx) ** n * total


def power_sum_symmetric_side(
    n: int,
    x: Any,
    wa: int,
    wb: int,
    chi: DirichletCharacter,
    params: EulerParams,
    ctx: QContext,
) -> Scalar:
    """
    [2]_{q^wb}^r sum_i C(n,i) [wa]_q^(n-i) [wb]_q^i E_{n-i,chi,q^wa}(wb x) S_{n,i,q^wb}(wa d|chi).
    """
    outer = ctx.with_lattice(wb)
    inner = ctx.with_lattice(wa)
    bracket_a, bracket_b = q_number(wa, ctx), q_number(wb, ctx)
    total = ctx.zero
    for i in range(n + 1):
        value = euler_poly(n - i, wb * x, chi, params, inner)
        power_sum = power_sum_factored(n, i, wa * chi.modulus, chi, params, outer)
        total += comb(n, i) * bracket_a ** (n - i) * bracket_b ** i * value * power_sum
    return q_number(2, outer) ** params.r * total


class _TwoParameterIdentity(Identity):

    def applies(self, point: GridPoint) -> bool:
        require_odd(point.w1, point.w2)
        return True


class EulerSymmetryIdentity(_TwoParameterIdentity):
    """Symmetry of the character-weighted sums of E_{n,chi,q^w1} in (w1, w2)."""

    @property
    def identity_id(self) -> IdentityId:
        return IdentityId.THM22

    @property
    def name(self) -> str:
        return "Euler Polynomial Symmetry"

    @property
    def description(self) -> str:
        return "Weighted sums of E_{n,chi,q^w1} at shifted arguments are symmetric in w1 and w2"

    @property
    def parameters(self) -> Tuple[str, ...]:
        return ("n", "x", "w1", "w2")

    def lhs(self, point: GridPoint) -> Scalar:
        return euler_symmetric_side(point.n, point.x, point.w1, point.w2,
                                    point.chi, point.params, point.ctx)

    def rhs(self, point: GridPoint) -> Scalar:
        return euler_symmetric_side(point.n, point.x, point.w2, point.w1,
                                    point.chi, point.params, point.ctx)


class PowerSumSymmetryIdentity(_TwoParameterIdentity):
    """Symmetry of the expansion over alternating generalized q-power sums."""

    @property
    def identity_id(self) -> IdentityId:
        return IdentityId.THM23

    @property
    def name(self) -> str:
        return "Power Sum Symmetry"

    @property
    def description(self) -> str:
        return "Binomial sums of E_{n-i,chi,q^w1}(w2 x) S_{n,i,q^w2}(w1 d) are symmetric in w1 and w2"

    @property
    def parameters(self) -> Tuple[str, ...]:
        return ("n", "x", "w1", "w2")

    def lhs(self, point: GridPoint) -> Scalar:
        return power_sum_symmetric_side(point.n, point.x, point.w1, point.w2,
                                        point.chi, point.params, point.ctx)

    def rhs(self, point: GridPoint) -> Scalar:
        return power_sum_symmetric_side(point.n, point.x, point.w2, point.w1,
                                        point.chi, point.params, point.ctx)


class PowerSumBridgeIdentity(_TwoParameterIdentity):
    """The Euler-sum side equals its power-sum expansion for the same (w1, w2)."""

    @property
    def identity_id(self) -> IdentityId:
        return IdentityId.BRIDGE_27

    @property
    def name(self) -> str:
        return "Power Sum Bridge"

    @property
    def description(self) -> str:
        return "Expanding the shifted E_{n,chi,q^w1} by the addition law yields the power-sum form"

    @property
    def parameters(self) -> Tuple[str, ...]:
        return ("n", "x", "w1", "w2")

    def lhs(self, point: GridPoint) -> Scalar:
        return euler_symmetric_side(point.n, point.x, point.w1, point.w2,
                                    point.chi, point.params, point.ctx)

    def rhs(self, point: GridPoint) -> Scalar:
        return power_sum_symmetric_side(point.n, point.x, point.w1, point.w2,
                                        point.chi, point.params, point.ctx)


class LFunctionSymmetryIdentity(_TwoParameterIdentity):
    """Numeric symmetry of character-weighted sums of the multiple l-function."""

    @property
    def identity_id(self) -> IdentityId:
        return IdentityId.THM21

    @property
    def name(self) -> str:
        return "l-Function Symmetry"

    @property
    def description(self) -> str:
        return "Weighted sums of l_{q^w1,r}(s, w2 x + (w2/w1) sum j) are symmetric in w1 and w2"

    @property
    def parameters(self) -> Tuple[str, ...]:
        return ("s", "x", "w1", "w2")

    @property
    def modes(self) -> Tuple[Mode, ...]:
        return (Mode.NUMERIC,)

    def applies(self, point: GridPoint) -> bool:
        super().applies(point)
        return (
            not point.ctx.is_exact
            and point.s is not None
            and point.params.h >= point.params.r
        )

    def _truncation(self, point: GridPoint):
        if point.truncation is None:
            return None
        return SeriesTruncation(point.truncation)

    def lhs(self, point: GridPoint) -> SeriesEstimate:
        return lseries.theorem_l_side(point.s, point.x, point.w1, point.w2, point.chi,
                                      point.params, point.ctx, self._truncation(point))

    def rhs(self, point: GridPoint) -> SeriesEstimate:
        return lseries.theorem_l_side(point.s, point.x, point.w2, point.w1, point.chi,
                                      point.params, point.ctx, self._truncation(point))


def check_thm22(n: int, x, w1: int, w2: int, chi: DirichletCharacter,
                params: EulerParams, ctx: QContext) -> IdentityReport:
    require_odd(w1, w2)
    x = lift_argument(x, ctx)
    point = GridPoint(chi=chi, params=params, ctx=ctx, n=n, x=x, w1=w1, w2=w2)
    return EulerSymmetryIdentity().check(point)


def check_thm23(n: int, x, w1: int, w2: int, chi: DirichletCharacter,
                params: EulerParams, ctx: QContext) -> IdentityReport:
    require_odd(w1, w2)
    x = lift_argument(x, ctx)
    point = GridPoint(chi=chi, params=params, ctx=ctx, n=n, x=x, w1=w1, w2=w2)
    return PowerSumSymmetryIdentity().check(point)


def check_bridge(n: int, x, w1: int, w2: int, chi: DirichletCharacter,
                 params: EulerParams, ctx: QContext) -> IdentityReport:
    require_odd(w1, w2)
    x = lift_argument(x, ctx)
    point = GridPoint(chi=chi, params=params, ctx=ctx, n=n, x=x, w1=w1, w2=w2)
    return PowerSumBridgeIdentity().check(point)
