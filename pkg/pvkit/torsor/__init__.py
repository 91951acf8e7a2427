"""
Differential GL_n-torsors.
"""

from .torsor import (
    GL_PRESENTATION,
    PGL_ADJOINT_PRESENTATION,
    DiffTorsorGLn,
    SplitReport,
    from_module,
    is_trivial_torsor,
    splitting_report,
    to_module,
    torsor_iso_check,
)

__all__ = [
    "GL_PRESENTATION",
    "PGL_ADJOINT_PRESENTATION",
    "DiffTorsorGLn",
    "SplitReport",
    "from_module",
    "is_trivial_torsor",
    "splitting_report",
    "to_module",
    "torsor_iso_check",
]
