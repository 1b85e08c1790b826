"""Umbral and addition expansions of the (h,q)-Euler polynomials."""

from math import comb
from typing import Tuple

from ..characters import DirichletCharacter
from ..core import EulerParams, addition_expand, euler_poly
from ..numerics import QContext, Scalar, lift_argument, q_number
from .base import GridPoint, Identity, IdentityId, IdentityReport


class UmbralIdentity(Identity):
    """E_n(x) = sum_l C(n,l) q^(l x) E_l [x]_q^(n-l)."""

    @property
    def identity_id(self) -> IdentityId:
        return IdentityId.UMBRAL_16

    @property
    def name(self) -> str:
        return "Umbral Expansion"

    @property
    def description(self) -> str:
        return "E_n(x) equals (q^x E + [x]_q)^n with E^l replaced by the Euler number E_l"

    @property
    def parameters(self) -> Tuple[str, ...]:
        return ("n", "x")

    def lhs(self, point: GridPoint) -> Scalar:
        return euler_poly(point.n, point.x, point.chi, point.params, point.ctx)

    def rhs(self, point: GridPoint) -> Scalar:
        ctx = point.ctx
        bracket = q_number(point.x, ctx)
        total = ctx.zero
        for l in range(point.n + 1):
            number = euler_poly(l, 0, point.chi, point.params, ctx)
            total += comb(point.n, l) * ctx.power(l * point.x) * number * bracket ** (point.n - l)
        return total


class AdditionIdentity(Identity):
    """E_n(x+y) = sum_i C(n,i) q^(x i) E_i(y) [x]_q^(n-i)."""

    @property
    def identity_id(self) -> IdentityId:
        return IdentityId.ADDITION_24

    @property
    def name(self) -> str:
        return "Addition Theorem"

    @property
    def description(self) -> str:
        return "E_n(x+y) expands over E_i(y) with q-shifted binomial weights"

    @property
    def parameters(self) -> Tuple[str, ...]:
        return ("n", "x", "y")

    def lhs(self, point: GridPoint) -> Scalar:
        return euler_poly(point.n, point.x + point.y, point.chi, point.params, point.ctx)

    def rhs(self, point: GridPoint) -> Scalar:
        return addition_expand(point.n, point.x, point.y, point.chi, point.params, point.ctx)


def check_umbral(n: int, x, chi: DirichletCharacter, params: EulerParams, ctx: QContext) -> IdentityReport:
    x = lift_argument(x, ctx)
    point = GridPoint(chi=chi, params=params, ctx=ctx, n=n, x=x)
    return UmbralIdentity().check(point)


def check_addition(n: int, x, y, chi: DirichletCharacter, params: EulerParams, ctx: QContext) -> IdentityReport:
    x, y = lift_argument(x, ctx), lift_argument(y, ctx)
    point = GridPoint(chi=chi, params=params, ctx=ctx, n=n, x=x, y=y)
    return AdditionIdentity().check(point)
