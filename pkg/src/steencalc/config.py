import os

import yaml


class Config:
    """
    Load steencalc settings from a YAML file; a missing file means defaults.
    """

    def __init__(self, path: str | None = None):
        default_path = os.getenv("STEENCALC_CONFIG_FILE", "steencalc.yaml")
        config_path = path or default_path
        try:
            with open(config_path) as f:
                self._cfg = yaml.safe_load(f) or {}
        except FileNotFoundError:
            self._cfg = {}
        self._seed_override: int | None = None

    def override_seed(self, seed: int | None) -> None:
        """Seed given on the command line; STEENCALC_SEED still wins."""
        self._seed_override = seed

    @property
    def seed(self) -> int:
        """RNG seed for property suites."""
        env = os.getenv("STEENCALC_SEED")
        if env:
            return int(env)
        if self._seed_override is not None:
            return self._seed_override
        return int(self._cfg.get("seed", 0))

    @property
    def workers(self) -> int:
        """Worker processes for suite cases; 1 runs in-process."""
        return max(1, int(self._cfg.get("workers", 1)))

    @workers.setter
    def workers(self, value: int) -> None:
        self._cfg["workers"] = int(value)

    @property
    def log_level(self) -> str:
        return str(self._cfg.get("log_level", "WARNING")).upper()

    @property
    def report_db(self) -> str:
        """SQLite file for suite history; empty disables it."""
        return str(self._cfg.get("report_db", "") or "")

    @property
    def random_cases(self) -> int:
        """Random classes or bundles per preset."""
        return int(self._cfg.get("random_cases", 200))

    @property
    def cartan_pairs(self) -> int:
        return int(self._cfg.get("cartan_pairs", 500))

    @property
    def milnor_pairs(self) -> int:
        return int(self._cfg.get("milnor_pairs", 100))

    @property
    def fiber_pairs(self) -> int:
        return int(self._cfg.get("fiber_pairs", 50))

    @property
    def max_failures(self) -> int:
        """Failures kept per report."""
        return int(self._cfg.get("max_failures", 10))
