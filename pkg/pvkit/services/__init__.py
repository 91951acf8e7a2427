"""
Services module
"""

from .job_service import JobService
from .loader import InputLoader, read_json, validate_document
from .report_formatter import Report, ReportFormatter

__all__ = [
    "JobService",
    "InputLoader",
    "read_json",
    "validate_document",
    "Report",
    "ReportFormatter",
]
