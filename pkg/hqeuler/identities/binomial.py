"""Two-index binomial symmetry obtained from the shifted generating function."""

from math import comb
from typing import Tuple

from ..characters import DirichletCharacter
from ..core import EulerParams, euler_poly
from ..numerics import QContext, Scalar, lift_argument, q_number
from .base import GridPoint, Identity, IdentityId, IdentityReport


class BinomialSymmetryIdentity(Identity):
    """
    sum_k C(m,k) q^(k x) E_{n+k}(y) [x]_q^(m-k)
        = sum_k C(n,k) q^(-k x) E_{m+k}(x+y) [-x]_q^(n-k)
    """

    @property
    def identity_id(self) -> IdentityId:
        return IdentityId.THM24

    @property
    def name(self) -> str:
        return "Binomial Symmetry"

    @property
    def description(self) -> str:
        return "Exchanging the roles of m and n moves the shift x from one argument to the other"

    @property
    def parameters(self) -> Tuple[str, ...]:
        return ("m", "n", "x", "y")

    def lhs(self, point: GridPoint) -> Scalar:
        ctx = point.ctx
        bracket = q_number(point.x, ctx)
        total = ctx.zero
        for k in range(point.m + 1):
            value = euler_poly(point.n + k, point.y, point.chi, point.params, ctx)
            total += comb(point.m, k) * ctx.power(k * point.x) * value * bracket ** (point.m - k)
        return total

    def rhs(self, point: GridPoint) -> Scalar:
        ctx = point.ctx
        bracket = q_number(-point.x, ctx)
        total = ctx.zero
        for k in range(point.n + 1):
            value = euler_poly(point.m + k, point.x + point.y, point.chi, point.params, ctx)
            total += comb(point.n, k) * ctx.power(-k * point.x) * value * bracket ** (point.n - k)
        return total


def check_thm24(m: int, n: int, x, y, chi: DirichletCharacter, params: EulerParams, ctx: QContext) -> IdentityReport:
    x, y = lift_argument(x, ctx), lift_argument(y, ctx)
    point = GridPoint(chi=chi, params=params, ctx=ctx, m=m, n=n, x=x, y=y)
    return BinomialSymmetryIdentity().check(point)
