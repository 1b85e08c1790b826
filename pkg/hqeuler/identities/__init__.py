"""Identities module for hqeuler."""

from .base import GridPoint, Identity, IdentityId, IdentityReport, Mutation
from . import expansion
from . import binomial
from . import symmetry
from .expansion import check_addition, check_umbral
from .binomial import check_thm24
from .symmetry import check_bridge, check_thm22, check_thm23


def all_identities():
    """Fresh instances of every registered identity, in registry order."""
    return [
        expansion.UmbralIdentity(),
        expansion.AdditionIdentity(),
        symmetry.EulerSymmetryIdentity(),
        symmetry.PowerSumSymmetryIdentity(),
        symmetry.PowerSumBridgeIdentity(),
        binomial.BinomialSymmetryIdentity(),
        symmetry.LFunctionSymmetryIdentity(),
    ]


__all__ = [
    "GridPoint",
    "Identity",
    "IdentityId",
    "IdentityReport",
    "Mutation",
    "all_identities",
    "check_addition",
    "check_bridge",
    "check_thm22",
    "check_thm23",
    "check_thm24",
    "check_umbral",
    "expansion",
    "binomial",
    "symmetry",
]
