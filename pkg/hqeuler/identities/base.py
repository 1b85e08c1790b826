"""Base classes for identity checks."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

from ..characters import DirichletCharacter
from ..core import EulerParams, SeriesEstimate
from ..errors import OddnessViolation
from ..numerics import Mode, QContext, Scalar, render_scalar, scalar_eq


class IdentityId(Enum):
    """Identifiers of the checked identities."""
    UMBRAL_16 = "umbral"
    ADDITION_24 = "addition"
    THM22 = "symmetry-euler"
    THM23 = "symmetry-power-sum"
    BRIDGE_27 = "power-sum-bridge"
    THM24 = "binomial-symmetry"
    THM21 = "symmetry-l"


class Mutation(Enum):
    """Deliberate single-factor perturbations of the left side."""
    NONE = "none"
    SCALE = "lhs"
    SHIFT_WEIGHT = "weight"
    NEGATE_CHARACTER = "character"


@dataclass(frozen=True)
class GridPoint:
    """One parameter tuple of a grid; fields an identity ignores keep their defaults."""
    chi: DirichletCharacter
    params: EulerParams
    ctx: QContext
    n: int = 0
    m: int = 0
    x: Any = 0
    y: Any = 0
    w1: int = 1
    w2: int = 1
    s: Any = None
    truncation: Optional[int] = None

    def describe(self, names: Sequence[str]) -> Dict[str, str]:
        described = {
            "q": str(self.ctx.q),
            "mode": self.ctx.mode.value,
            "chi": str(self.chi),
            "h": str(self.params.h),
            "r": str(self.params.r),
        }
        for name in names:
            value = getattr(self, name)
            described[name] = render_scalar(value, self.ctx) if name == "s" else str(value)
        return described


@dataclass
class IdentityReport:
    """Outcome of one identity check at one grid point."""
    identity_id: IdentityId
    lhs: Optional[Scalar]
    rhs: Optional[Scalar]
    residual: Optional[Scalar]
    params: Dict[str, str]
    passed: bool
    mode: Mode
    tail_bound: Optional[Scalar] = None
    error: Optional[str] = None
    mutation: Mutation = Mutation.NONE

    def sort_key(self) -> Tuple:
        return (self.identity_id.value,) + tuple(sorted(self.params.items()))


def require_odd(w1: int, w2: int) -> None:
    for name, w in (("w1", w1), ("w2", w2)):
        if not isinstance(w, int) or w < 1 or w % 2 == 0:
            raise OddnessViolation(f"{name} must be an odd positive integer, got {w!r}")


def make_report(
    identity_id: IdentityId,
    point: GridPoint,
    names: Sequence[str],
    lhs: Any,
    rhs: Any,
    mutation: Mutation = Mutation.NONE,
) -> IdentityReport:
    """Compare two sides; series estimates widen the numeric comparison by their tails."""
    ctx = point.ctx
    slack = 0
    tail = None
    if isinstance(lhs, SeriesEstimate) or isinstance(rhs, SeriesEstimate):
        tail = sum(side.tail_bound for side in (lhs, rhs) if isinstance(side, SeriesEstimate))
        slack = tail
    lhs_value = lhs.value if isinstance(lhs, SeriesEstimate) else lhs
    rhs_value = rhs.value if isinstance(rhs, SeriesEstimate) else rhs
    return IdentityReport(
        identity_id=identity_id,
        lhs=lhs_value,
        rhs=rhs_value,
        residual=lhs_value - rhs_value,
        params=point.describe(names),
        passed=scalar_eq(lhs_value, rhs_value, ctx, slack),
        mode=ctx.mode,
        tail_bound=tail,
        mutation=mutation,
    )


def _negated_character(chi: DirichletCharacter) -> DirichletCharacter:
    d = chi.modulus
    values = tuple(
        v if a % d == 1 % d else -v
        for a, v in enumerate(chi.values)
    )
    return replace(chi, values=values, is_principal=False, label=f"-{chi.label}")


class Identity(ABC):
    """Base class for all identities."""

    def __init__(self):
        self.enabled = True

    @property
    @abstractmethod
    def identity_id(self) -> IdentityId:
        """Unique identifier for the identity."""
        pass

    @property
    @abstractmethod
    def name(self) -> str:
        """Human-readable name."""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        """What equality is asserted."""
        pass

    @property
    @abstractmethod
    def parameters(self) -> Tuple[str, ...]:
        """GridPoint fields the identity depends on (besides chi, h, r, q)."""
        pass

    @property
    def modes(self) -> Tuple[Mode, ...]:
        """Arithmetic modes the identity is checked in."""
        return (Mode.EXACT, Mode.NUMERIC)

    def applies(self, point: GridPoint) -> bool:
        """Whether the point lies in the identity's domain."""
        return True

    @abstractmethod
    def lhs(self, point: GridPoint) -> Any:
        pass

    @abstractmethod
    def rhs(self, point: GridPoint) -> Any:
        pass

    def check(self, point: GridPoint, mutation: Mutation = Mutation.NONE) -> IdentityReport:
        """
        Evaluate both sides at a point and compare them.

        Args:
            point: The parameter tuple
            mutation: Optional perturbation applied to the left side only

        Returns:
            The report for this point
        """
        lhs_point = point
        if mutation is Mutation.SHIFT_WEIGHT:
            lhs_point = replace(point, params=EulerParams(point.params.h + 1, point.params.r))
        elif mutation is Mutation.NEGATE_CHARACTER:
            lhs_point = replace(point, chi=_negated_character(point.chi))

        lhs = self.lhs(lhs_point)
        rhs = self.rhs(point)
        if mutation is Mutation.SCALE:
            factor = point.ctx.one + point.ctx.base
            if isinstance(lhs, SeriesEstimate):
                lhs = replace(lhs, value=lhs.value * factor)
            else:
                lhs = lhs * factor
        return make_report(self.identity_id, point, self.parameters, lhs, rhs, mutation)

    def create_failure(self, point: GridPoint, error: Exception) -> IdentityReport:
        """Report for a point whose evaluation raised."""
        return IdentityReport(
            identity_id=self.identity_id,
            lhs=None,
            rhs=None,
            residual=None,
            params=point.describe(self.parameters),
            passed=False,
            mode=point.ctx.mode,
            error=f"{type(error).__name__}: {error}",
        )
