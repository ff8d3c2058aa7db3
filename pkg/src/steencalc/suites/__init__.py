"""Named property suites run by `steencalc steenrod verify`."""

from .suite_base import CaseFailure, SuiteBase, SuiteCase, SuiteReport, SuiteSettings
from .suite_factory import SuiteFactory

__all__ = [
    "CaseFailure",
    "SuiteBase",
    "SuiteCase",
    "SuiteFactory",
    "SuiteReport",
    "SuiteSettings",
]
