"""
Models module
"""

from .inputs import (
    ActionData,
    ActionFile,
    CoactionOverride,
    CocycleFile,
    GroupSpec,
    HopfFile,
    HopfKind,
    HopfTables,
    MatrixFile,
    PhiObjectFile,
    StructureMapSpec,
    TargetSpec,
    TwistFile,
    UntwistFile,
)
from .job import Job, JobCommand

__all__ = [
    "ActionData",
    "ActionFile",
    "CoactionOverride",
    "CocycleFile",
    "GroupSpec",
    "HopfFile",
    "HopfKind",
    "HopfTables",
    "MatrixFile",
    "PhiObjectFile",
    "StructureMapSpec",
    "TargetSpec",
    "TwistFile",
    "UntwistFile",
    "Job",
    "JobCommand",
]
