from __future__ import annotations

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any

from ..errors import PropertyViolation

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteSettings:
    """Case counts taken from the configuration; plain data so it crosses process boundaries."""

    random_cases: int = 200
    cartan_pairs: int = 500
    milnor_pairs: int = 100
    fiber_pairs: int = 50

    @classmethod
    def from_config(cls, config: Any) -> SuiteSettings:
        return cls(
            random_cases=config.random_cases,
            cartan_pairs=config.cartan_pairs,
            milnor_pairs=config.milnor_pairs,
            fiber_pairs=config.fiber_pairs,
        )


@dataclass(frozen=True)
class SuiteCase:
    """One independent unit of work; params are JSON-friendly."""

    index: int
    label: str
    params: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class CaseFailure:
    index: int
    label: str
    message: str
    inputs: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "case": self.label,
            "message": self.message,
            "inputs": self.inputs,
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int = 0
    failures: list[CaseFailure] = field(default_factory=list)
    failure_count: int = 0
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_json(self, timing: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "failure_count": self.failure_count,
            "failures": [f.to_json() for f in self.failures],
        }
        if timing:
            data["wall_time"] = round(self.wall_time, 3)
        return data


def case_rng(seed: int, index: int) -> random.Random:
    """Per-case generator, independent of how cases are scheduled."""
    return random.Random(seed * 1_000_003 + index)


class SuiteBase(ABC):
    """
    A named property suite: a deterministic list of cases and a checker per case.
    """

    def __init__(self, settings: SuiteSettings | None = None) -> None:
        self.settings = settings or SuiteSettings()

    @property
    @abstractmethod
    def name(self) -> str:
        """Registry name of the suite."""

    @abstractmethod
    def cases(self, seed: int) -> list[SuiteCase]:
        """All cases for a seed."""

    @abstractmethod
    def run_case(self, case: SuiteCase, rng: random.Random) -> None:
        """Check one case; raise PropertyViolation on failure."""

    @staticmethod
    def expect(condition: bool, message: str, **inputs: Any) -> None:
        """Raise PropertyViolation with the offending inputs unless condition holds."""
        if not condition:
            raise PropertyViolation(message, {k: _plain(v) for k, v in inputs.items()})

    def _make_cases(self, params: list[tuple[str, dict[str, Any]]]) -> list[SuiteCase]:
        return [SuiteCase(i, label, p) for i, (label, p) in enumerate(params)]


def _plain(value: Any) -> Any:
    if isinstance(value, bool | int | float | str) or value is None:
        return value
    if isinstance(value, list | tuple):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return str(value)
