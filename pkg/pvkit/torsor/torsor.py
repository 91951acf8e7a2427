"""
Differential GL_n-torsors carried by their derivation matrix.

A system Y' = A Y and the torsor whose coordinate ring F[GL_n] has derivation
X_ij -> (A X)_ij determine each other, and gauge witnesses are the
isomorphisms on both sides.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from pvkit.diffmod.galois import DiagGroup, diag_group, rational_solution_rank1
from pvkit.diffmod.linsys import GaugeWitness, LinSys, gauge, is_gauge_witness
from pvkit.exceptions import DimensionMismatchError
from pvkit.fieldcore.matrix import RatMatrix

logger = logging.getLogger(__name__)

GL_PRESENTATION = "gl"
PGL_ADJOINT_PRESENTATION = "pgl_adjoint"


@dataclass(frozen=True)
class DiffTorsorGLn:
    A: RatMatrix
    presentation: str = GL_PRESENTATION

    def __post_init__(self):
        if not self.A.is_square:
            raise DimensionMismatchError(f"torsor matrix must be square, got {self.A.shape}")

    @property
    def n(self) -> int:
        return self.A.nrows


@dataclass(frozen=True)
class SplitReport:
    """Splitting degree of a torsor, exact when group is known, otherwise an upper bound."""

    group: Optional[DiagGroup]
    degree: int
    is_bound: bool
    minimal_field_note: str

    def __post_init__(self):
        if self.group is not None and not self.is_bound and self.degree != self.group.dimension():
            raise ValueError("exact splitting degree must equal the group dimension")
        if self.group is None and not self.is_bound:
            raise ValueError("a report without a group must be flagged as a bound")

    def to_dict(self) -> dict:
        return {
            "group": self.group.to_dict() if self.group is not None else None,
            "degree": self.degree,
            "is_bound": self.is_bound,
            "minimal_field_note": self.minimal_field_note,
        }


def from_module(M: LinSys) -> DiffTorsorGLn:
    return DiffTorsorGLn(M.A)


def to_module(Y: DiffTorsorGLn) -> LinSys:
    return LinSys(Y.A)


def torsor_iso_check(Y: DiffTorsorGLn, Z: DiffTorsorGLn, P: GaugeWitness) -> bool:
    """Whether x -> P x is a torsor isomorphism from Y to Z."""
    if Y.n != Z.n or P.n != Y.n:
        raise DimensionMismatchError(f"torsors of size {Y.n} and {Z.n} with witness of size {P.n}")
    return is_gauge_witness(Y.A, Z.A, P)


def is_trivial_torsor(Y: DiffTorsorGLn, P: Optional[GaugeWitness] = None) -> Optional[bool]:
    """True or False when decidable here, None for undecided."""
    if P is not None:
        return gauge(Y.A, P).is_zero()
    if Y.A.is_zero():
        return True
    if Y.n == 1:
        return rational_solution_rank1(Y.A[0, 0]) is not None
    if Y.A.is_diagonal():
        return diag_group(Y.A.diagonal()).is_trivial()
    logger.warning(f"triviality of a non-diagonal torsor of rank {Y.n} is undecided")
    return None


def _field_note(group: DiagGroup) -> str:
    if group.is_trivial():
        return "F itself: the torsor is trivial"
    parts = []
    if group.torus_rank:
        parts.append(f"{group.torus_rank} algebraically independent exponential(s)")
    if group.finite_factors:
        roots = ", ".join(str(d) for d in group.finite_factors)
        parts.append(f"radicals of orders {roots}")
    return "F adjoined with " + " and ".join(parts)


def splitting_report(Y: DiffTorsorGLn) -> SplitReport:
    if Y.A.is_diagonal():
        group = diag_group(Y.A.diagonal())
        return SplitReport(group, group.dimension(), False, _field_note(group))
    bound = Y.n * Y.n
    logger.info(f"splitting degree of a non-diagonal torsor bounded by dim GL_{Y.n} = {bound}")
    return SplitReport(None, bound, True, f"bounded by dim GL_{Y.n}; no minimal field constructed")
