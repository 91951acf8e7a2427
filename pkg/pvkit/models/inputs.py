"""
Input file models.

Every numeric entry is a rational-function expression string in x and zeta
(for example "1/(2*x)" or "zeta*x^2 - 1"); entries are parsed once the
cyclotomic level of the job is known.
"""

from enum import Enum
from typing import List, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

MatrixEntries = List[List[str]]


def _check_rectangular(entries: MatrixEntries) -> MatrixEntries:
    if not entries:
        raise ValueError("matrix must have at least one row")
    width = len(entries[0])
    if width == 0 or any(len(row) != width for row in entries):
        raise ValueError("matrix rows must be nonempty and of equal length")
    return entries


class MatrixFile(BaseModel):
    """A square or rectangular matrix over F."""

    zeta_level: Optional[int] = Field(None, ge=1, description="Cyclotomic level N of the constants field")
    n: Optional[int] = Field(None, ge=1, description="Declared size, checked against the entries")
    entries: MatrixEntries = Field(..., description="Rows of expression strings")
    traceless: Optional[bool] = Field(None, description="Require the matrix to be traceless as given")

    @field_validator("entries")
    @classmethod
    def entries_rectangular(cls, v: MatrixEntries) -> MatrixEntries:
        return _check_rectangular(v)

    @model_validator(mode="after")
    def size_matches(self) -> "MatrixFile":
        if self.n is not None and (len(self.entries) != self.n or len(self.entries[0]) != self.n):
            raise ValueError(f"declared n = {self.n} does not match the entries")
        return self


class GroupSpec(BaseModel):
    """Either a cyclic group mu_k or an explicit Cayley table."""

    cyclic: Optional[int] = Field(None, ge=1, description="Order k of the cyclic group mu_k")
    labels: Optional[List[str]] = None
    table: Optional[List[List[int]]] = None

    @model_validator(mode="after")
    def one_presentation(self) -> "GroupSpec":
        explicit = self.labels is not None or self.table is not None
        if (self.cyclic is None) == (not explicit):
            raise ValueError("give either 'cyclic' or both 'labels' and 'table'")
        if explicit and (self.labels is None or self.table is None):
            raise ValueError("an explicit group needs both 'labels' and 'table'")
        return self


class HopfKind(str, Enum):
    KUMMER = "kummer"
    SPLIT = "split"
    TABLES = "tables"


class CoactionOverride(str, Enum):
    TRIVIAL = "trivial"
    ZERO = "zero"


class HopfTables(BaseModel):
    mult: List[List[List[str]]] = Field(..., description="mult[i][j] = coordinates of e_i * e_j")
    derivation: MatrixEntries = Field(..., description="E with delta(e_j) = sum_i E[i][j] e_i")
    coaction: List[MatrixEntries] = Field(..., description="One matrix rho_g per group element")


class HopfFile(BaseModel):
    """A finite Hopf-Galois extension, as a recipe or as explicit tables."""

    name: Optional[str] = None
    zeta_level: Optional[int] = Field(None, ge=1)
    kind: HopfKind
    degree: Optional[int] = Field(None, ge=1, description="k for a Kummer extension")
    group: Optional[GroupSpec] = None
    coaction_override: Optional[CoactionOverride] = None
    tables: Optional[HopfTables] = None

    @model_validator(mode="after")
    def recipe_complete(self) -> "HopfFile":
        if self.kind == HopfKind.KUMMER and self.degree is None:
            raise ValueError("a Kummer extension needs 'degree'")
        if self.kind == HopfKind.SPLIT and self.group is None:
            raise ValueError("a split extension needs 'group'")
        if self.kind == HopfKind.TABLES and (self.group is None or self.tables is None):
            raise ValueError("an extension given by tables needs 'group' and 'tables'")
        return self


class StructureMapSpec(BaseModel):
    signature: List[int] = Field(..., min_length=4, max_length=4)
    matrix: MatrixEntries

    @field_validator("signature")
    @classmethod
    def nonnegative(cls, v: List[int]) -> List[int]:
        if any(s < 0 for s in v):
            raise ValueError("signature entries must be nonnegative")
        return v


class PhiObjectFile(BaseModel):
    """A Phi-object over F: derivation matrix in the connection convention plus structure maps."""

    zeta_level: Optional[int] = Field(None, ge=1)
    derivation: MatrixEntries
    hopf_group: Optional[GroupSpec] = Field(None, description="Group whose function algebra H enters the signatures")
    structure_maps: List[StructureMapSpec] = Field(default_factory=list)

    @field_validator("derivation")
    @classmethod
    def derivation_rectangular(cls, v: MatrixEntries) -> MatrixEntries:
        return _check_rectangular(v)


class TargetSpec(BaseModel):
    kind: str = Field(..., description="gl, gm, mu, ga or torus")
    rank: int = Field(1, ge=1)
    order: Optional[int] = Field(None, ge=1)


class ActionData(BaseModel):
    exponents: Optional[List[List[List[int]]]] = None
    scalars: Optional[List[str]] = None
    conjugators: Optional[List[MatrixEntries]] = None


class ActionFile(BaseModel):
    """A finite group acting on the constant points of a target group."""

    zeta_level: Optional[int] = Field(None, ge=1)
    group: GroupSpec
    target: TargetSpec
    action: Optional[ActionData] = None


CocycleValue = Union[str, MatrixEntries]


class CocycleFile(BaseModel):
    """Cocycle values listed in group element order; a bare string is a 1 x 1 value."""

    zeta_level: Optional[int] = Field(None, ge=1)
    values: List[CocycleValue] = Field(..., min_length=1)


class TwistFile(BaseModel):
    zeta_level: Optional[int] = Field(None, ge=1)
    extension: Union[str, HopfFile] = Field(..., description="Bundled fixture name or inline extension")
    base: Optional[PhiObjectFile] = Field(None, description="Defaults to the trivial object of the cocycle's rank")
    cocycle: List[CocycleValue] = Field(..., min_length=1)


class UntwistFile(BaseModel):
    zeta_level: Optional[int] = Field(None, ge=1)
    extension: Union[str, HopfFile]
    base: Optional[PhiObjectFile] = Field(None, description="Defaults to the trivial object of the twisted rank")
    twisted: PhiObjectFile
    iso: MatrixEntries = Field(..., description="Phi_S-isomorphism twisted (x) S -> base (x) S")
