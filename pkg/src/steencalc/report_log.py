import datetime
import logging
import sqlite3
from typing import Any

from .suites.suite_base import SuiteReport

_LOGGER = logging.getLogger(__name__)


class ReportLog:
    """
    Keep a history of suite runs in SQLite.
    """

    def __init__(self, db_path: str = "steencalc_history.db"):
        self.db_path = db_path
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()
        cursor.execute(
            """
            CREATE TABLE IF NOT EXISTS reports (
                timestamp TEXT,
                suite TEXT,
                seed INTEGER,
                cases INTEGER,
                failures INTEGER,
                wall_time REAL
            )
        """
        )
        conn.commit()
        conn.close()

    def log_report(self, report: SuiteReport) -> None:
        """Persist one suite report."""
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()
        cursor.execute(
            "INSERT INTO reports (timestamp, suite, seed, cases, failures, wall_time) "
            "VALUES (?, ?, ?, ?, ?, ?)",
            (
                datetime.datetime.now(datetime.timezone.utc).isoformat(),
                report.suite,
                report.seed,
                report.cases,
                report.failure_count,
                report.wall_time,
            ),
        )
        conn.commit()
        conn.close()
        _LOGGER.info("stored %s report in %s", report.suite, self.db_path)

    def get_reports(self) -> list[dict[str, Any]]:
        """Fetch all stored runs, oldest first."""
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()
        cursor.execute(
            "SELECT timestamp, suite, seed, cases, failures, wall_time "
            "FROM reports ORDER BY timestamp"
        )
        rows = cursor.fetchall()
        conn.close()

        return [
            {
                "timestamp": ts,
                "suite": suite,
                "seed": seed,
                "cases": cases,
                "failures": failures,
                "wall_time": wall,
            }
            for ts, suite, seed, cases, failures, wall in rows
        ]

    def export_db(self) -> str:
        """Return path to the SQLite database file."""
        return self.db_path
