import logging
import time
from concurrent.futures import ProcessPoolExecutor

from .config import Config
from .errors import PropertyViolation, SteencalcError
from .report_log import ReportLog
from .suites.suite_base import CaseFailure, SuiteCase, SuiteReport, SuiteSettings, case_rng
from .suites.suite_factory import SuiteFactory

_LOGGER = logging.getLogger(__name__)


def _run_case(name: str, settings: SuiteSettings, seed: int, case: SuiteCase) -> CaseFailure | None:
    """Run one case in the current process; the suite is rebuilt so only plain data is pickled."""
    suite = SuiteFactory.create_suite(name, settings)
    try:
        suite.run_case(case, case_rng(seed, case.index))
    except PropertyViolation as exc:
        return CaseFailure(case.index, case.label, str(exc), exc.inputs)
    except (SteencalcError, AssertionError) as exc:
        _LOGGER.debug("case %s of %s raised %r", case.label, name, exc)
        return CaseFailure(case.index, case.label, f"{type(exc).__name__}: {exc}")
    return None


class SuiteRunner:
    """
    Run named property suites and aggregate their cases into reports.
    """

    def __init__(self, config: Config, report_log: ReportLog | None = None) -> None:
        self.config = config
        self.settings = SuiteSettings.from_config(config)
        if report_log is None and config.report_db:
            report_log = ReportLog(config.report_db)
        self.report_log = report_log

    def run(self, name: str, seed: int | None = None) -> SuiteReport:
        """Run every case of one suite; the report depends only on name and seed."""
        seed = self.config.seed if seed is None else seed
        suite = SuiteFactory.create_suite(name, self.settings)
        cases = suite.cases(seed)
        _LOGGER.info("suite %s: %d cases, seed %d", name, len(cases), seed)
        start = time.perf_counter()
        outcomes = self._execute(name, seed, cases)
        failures = sorted((f for f in outcomes if f is not None), key=lambda f: f.index)
        report = SuiteReport(
            suite=name,
            seed=seed,
            cases=len(cases),
            failures=failures[: self.config.max_failures],
            failure_count=len(failures),
            wall_time=time.perf_counter() - start,
        )
        _LOGGER.info(
            "suite %s finished: %d/%d failing in %.2fs",
            name,
            report.failure_count,
            report.cases,
            report.wall_time,
        )
        if self.report_log is not None:
            self.report_log.log_report(report)
        return report

    def run_all(self, seed: int | None = None) -> list[SuiteReport]:
        return [self.run(name, seed) for name in SuiteFactory.get_supported_suites()]

    def _execute(
        self, name: str, seed: int, cases: list[SuiteCase]
    ) -> list[CaseFailure | None]:
        workers = self.config.workers
        if workers <= 1 or len(cases) <= 1:
            return [_run_case(name, self.settings, seed, case) for case in cases]
        n = len(cases)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_case, [name] * n, [self.settings] * n, [seed] * n, cases))
