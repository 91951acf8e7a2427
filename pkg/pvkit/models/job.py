"""
Job description for a single CLI run.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator


class JobCommand(str, Enum):
    """Commands understood by the job service"""
    GAUGE_CHECK = "gauge-check"
    RANK1_CLASSIFY = "rank1-classify"
    DIAG_GROUP = "diag-group"
    TORSOR_ISO = "torsor-iso"
    SPLIT_REPORT = "split-report"
    HOPF_CHECK = "hopf-check"
    DESCENT_ROUNDTRIP = "descent-roundtrip"
    H1_ENUMERATE = "h1-enumerate"
    H1_CHECK = "h1-check"
    H1_TWIST = "h1-twist"
    H1_UNTWIST = "h1-untwist"
    DCSA_CHECK_ISO = "dcsa-check-iso"
    DCSA_ADJOINT = "dcsa-adjoint"
    DCSA_SPLIT_DEGREE = "dcsa-split-degree"


# (minimum input files, minimum when a fixture is supplied, accepts --expr, accepts --fixture)
_REQUIREMENTS = {
    JobCommand.GAUGE_CHECK: (3, 3, False, False),
    JobCommand.RANK1_CLASSIFY: (1, 1, True, False),
    JobCommand.DIAG_GROUP: (1, 1, True, False),
    JobCommand.TORSOR_ISO: (3, 3, False, False),
    JobCommand.SPLIT_REPORT: (1, 1, False, False),
    JobCommand.HOPF_CHECK: (1, 0, False, True),
    JobCommand.DESCENT_ROUNDTRIP: (2, 1, False, True),
    JobCommand.H1_ENUMERATE: (1, 0, False, True),
    JobCommand.H1_CHECK: (2, 1, False, True),
    JobCommand.H1_TWIST: (1, 1, False, False),
    JobCommand.H1_UNTWIST: (1, 1, False, False),
    JobCommand.DCSA_CHECK_ISO: (3, 3, False, False),
    JobCommand.DCSA_ADJOINT: (1, 1, False, False),
    JobCommand.DCSA_SPLIT_DEGREE: (1, 1, False, False),
}


class Job(BaseModel):
    command: JobCommand
    inputs: List[str] = Field(default_factory=list, description="Input file paths in command order")
    fixtures: List[str] = Field(default_factory=list, description="Bundled fixture names")
    exprs: List[str] = Field(default_factory=list, description="Inline expressions")
    zeta_level: Optional[int] = Field(None, ge=1, description="Cyclotomic level requested on the command line")
    json_only: bool = False

    @model_validator(mode="after")
    def required_inputs_present(self) -> "Job":
        min_inputs, min_with_fixture, takes_expr, takes_fixture = _REQUIREMENTS[self.command]
        if self.exprs and not takes_expr:
            raise ValueError(f"{self.command.value} does not accept --expr")
        if self.fixtures and not takes_fixture:
            raise ValueError(f"{self.command.value} does not accept --fixture")
        if len(self.fixtures) > 1:
            raise ValueError("at most one --fixture may be given")
        if self.exprs:
            if self.inputs:
                raise ValueError("give either --expr or --input, not both")
            if self.command == JobCommand.RANK1_CLASSIFY and len(self.exprs) != 1:
                raise ValueError("rank1-classify takes exactly one --expr")
            return self
        needed = min_with_fixture if self.fixtures else min_inputs
        if len(self.inputs) < needed:
            raise ValueError(f"{self.command.value} needs at least {needed} --input file(s), got {len(self.inputs)}")
        return self
