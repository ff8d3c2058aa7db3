import logging

from ..errors import InputError
from .class_suites import BClassSuite, MuSuite, OmegaSuite
from .milnor_suites import AnticommuteSuite, SteinbergSuite
from .steenrod_suites import (
    BSteenrodSuite,
    CartanSuite,
    CorcalcSuite,
    ExternalSuite,
    LucasSuite,
    PrxDivisibilitySuite,
    PthPowerSuite,
    PullbackSuite,
    PushforwardSuite,
)
from .suite_base import SuiteBase, SuiteSettings
from .torsor_suites import DeformationSuite, FibersSuite, TorsorEquivalenceSuite, TwistSuite

_LOGGER = logging.getLogger(__name__)

_SUITES: dict[str, type[SuiteBase]] = {
    "lucas": LucasSuite,
    "pthpower": PthPowerSuite,
    "cartan": CartanSuite,
    "prx-divisibility": PrxDivisibilitySuite,
    "bclass": BClassSuite,
    "omega": OmegaSuite,
    "mu": MuSuite,
    "corcalc": CorcalcSuite,
    "pullback": PullbackSuite,
    "pushforward": PushforwardSuite,
    "bsteenrod": BSteenrodSuite,
    "external": ExternalSuite,
    "torsor-equivalence": TorsorEquivalenceSuite,
    "deformation": DeformationSuite,
    "fibers": FibersSuite,
    "anticommute": AnticommuteSuite,
    "steinberg": SteinbergSuite,
    "twist": TwistSuite,
}


class SuiteFactory:
    """Factory for creating property suites by name."""

    @staticmethod
    def create_suite(name: str, settings: SuiteSettings | None = None) -> SuiteBase:
        """
        Create the suite registered under a name.

        Args:
            name: Suite name, e.g. 'pthpower' or 'torsor-equivalence'
            settings: Case counts; defaults to the acceptance sizes

        Returns:
            SuiteBase instance

        Raises:
            InputError: If no suite has that name
        """
        suite_cls = _SUITES.get(name.strip())
        if suite_cls is None:
            raise InputError(f"Unknown suite: {name}")
        _LOGGER.debug("Creating suite %s", name)
        return suite_cls(settings)

    @staticmethod
    def get_supported_suites() -> list[str]:
        """Return suite names in run order."""
        return list(_SUITES)

    @staticmethod
    def is_suite_supported(name: str) -> bool:
        return name in _SUITES
