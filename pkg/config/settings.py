import os
from pathlib import Path
from typing import Optional
from dotenv import load_dotenv
load_dotenv()


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, default))


class Settings:
    """Configuration defaults for the clique-root toolkit.
    Every value can be overridden from the environment (or a .env file) and,
    at invocation time, by the matching CLI flag."""

    def __init__(self):
        # Root isolation
        self.PRECISION_BITS = _env_int('CLIQUE_PRECISION_BITS', 60)
        self.COMPARE_TOLERANCE_BITS = _env_int('CLIQUE_COMPARE_TOLERANCE_BITS', 50)

        # Reproducibility
        self.SEED = _env_int('CLIQUE_SEED', 0)

        # Enumeration / generation caps
        self.ENUM_CAP = _env_int('CLIQUE_ENUM_CAP', 100000)
        self.REGULAR_MAX_ATTEMPTS = _env_int('CLIQUE_REGULAR_MAX_ATTEMPTS', 1000)
        self.JACOBI_MAX_SWEEPS = _env_int('CLIQUE_JACOBI_MAX_SWEEPS', 100)

        # Homomorphism search
        self.HOM_MAX_VERTICES = _env_int('CLIQUE_HOM_MAX_VERTICES', 10)
        self.HOM_NODE_CAP = _env_int('CLIQUE_HOM_NODE_CAP', 2000000)
        self.HOM_TIME_CAP_MS = _env_int('CLIQUE_HOM_TIME_CAP_MS', 60000)

        # Selftest
        self.SELFTEST_WORKERS = _env_int('CLIQUE_SELFTEST_WORKERS', 1)

        # Logging
        self.LOG_LEVEL = os.getenv('CLIQUE_LOG_LEVEL', 'WARNING').upper()
        self.LOG_FILE: Optional[str] = os.getenv('CLIQUE_LOG_FILE') or None
        self.STRUCTURED_LOG_FILE = os.getenv('CLIQUE_STRUCTURED_LOG_FILE', 'logs/audit.jsonl')

        self._validate()

    def _validate(self):
        """validate ranges of numeric configuration."""
        problems = []
        if not 20 <= self.PRECISION_BITS <= 200:
            problems.append(f"CLIQUE_PRECISION_BITS={self.PRECISION_BITS} (allowed 20..200)")
        if self.COMPARE_TOLERANCE_BITS < 1:
            problems.append(f"CLIQUE_COMPARE_TOLERANCE_BITS={self.COMPARE_TOLERANCE_BITS}")
        for name in ('ENUM_CAP', 'REGULAR_MAX_ATTEMPTS', 'JACOBI_MAX_SWEEPS', 'HOM_MAX_VERTICES', 'SELFTEST_WORKERS'):
            if getattr(self, name) < 1:
                problems.append(f"CLIQUE_{name}={getattr(self, name)} (must be positive)")
        for name in ('HOM_NODE_CAP', 'HOM_TIME_CAP_MS'):
            if getattr(self, name) < 0:
                problems.append(f"CLIQUE_{name}={getattr(self, name)} (must be nonnegative)")

        if problems:
            raise ValueError(f"Invalid configuration: {', '.join(problems)}")

    def get_search_config(self) -> dict:
        """limits handed to the homomorphism searcher."""
        return {
            'max_vertices': self.HOM_MAX_VERTICES,
            'max_nodes': self.HOM_NODE_CAP,
            'max_ms': self.HOM_TIME_CAP_MS,
        }

    def get_root_config(self) -> dict:
        """precision knobs handed to the root isolator."""
        return {
            'precision_bits': self.PRECISION_BITS,
            'tolerance_bits': self.COMPARE_TOLERANCE_BITS,
        }

    def ensure_log_directory(self):
        """create log directories if they dont exist."""
        if self.LOG_FILE:
            Path(self.LOG_FILE).parent.mkdir(parents=True, exist_ok=True)
        Path(self.STRUCTURED_LOG_FILE).parent.mkdir(parents=True, exist_ok=True)


settings = Settings()
