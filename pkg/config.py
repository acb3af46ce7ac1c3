"""Toolkit settings read from the environment.

Precedence, highest first: command-line flags (applied in cli_io), process
environment, a ``.env`` file beside this module, built-in defaults. Values are
read on every access, so tests can change the environment between calls.

    from config import config
    trials = config.TRIALS
"""

import os
from pathlib import Path
from typing import Dict


def read_env_file(path: Path) -> Dict[str, str]:
    """KEY=VALUE pairs of a dotenv file; blank lines and # comments are skipped."""
    pairs: Dict[str, str] = {}
    if not path.exists():
        return pairs
    for raw in path.read_text(encoding='utf-8').splitlines():
        entry = raw.strip()
        if entry and not entry.startswith('#') and '=' in entry:
            name, _, text = entry.partition('=')
            pairs[name.strip()] = text.strip()
    return pairs


class Config:
    """Sampling, oracle and runtime settings."""

    def __init__(self, env_file: Path = Path(__file__).parent / '.env'):
        for name, text in read_env_file(env_file).items():
            os.environ.setdefault(name, text)

    # ========================================================================
    # SAMPLING CONFIGURATION
    # ========================================================================

    @property
    def SAMPLING_PRIME(self) -> int:
        """Prime field for generic sampling (Monte Carlo regime)."""
        return int(os.getenv('QM_PRIME', '10007'))

    @property
    def TRIALS(self) -> int:
        """Number of generic samples per component."""
        return int(os.getenv('QM_TRIALS', '5'))

    @property
    def SEED(self) -> int:
        return int(os.getenv('QM_SEED', '0'))

    @property
    def MAX_RETRIES(self) -> int:
        """Rejection-sampling bound before FieldTooSmall."""
        return int(os.getenv('QM_MAX_RETRIES', '100'))

    @property
    def SPLIT_ATTEMPTS(self) -> int:
        """Random endomorphisms tried per summand by the Krull-Schmidt engine."""
        return int(os.getenv('QM_SPLIT_ATTEMPTS', '8'))

    # ========================================================================
    # ORACLE CONFIGURATION
    # ========================================================================

    @property
    def ORACLE_PRIME(self) -> int:
        """Small prime for exhaustive submodule enumeration: 2, 3 or 5."""
        return int(os.getenv('QM_ORACLE_PRIME', '5'))

    @property
    def ORACLE_MAX_DIM(self) -> int:
        """Largest total dimension the oracle enumerates."""
        return int(os.getenv('QM_ORACLE_MAX_DIM', '8'))

    @property
    def ORACLE_MAX_SUBSPACES(self) -> int:
        """Cap on the number of vertex subspaces the oracle may visit."""
        return int(os.getenv('QM_ORACLE_MAX_SUBSPACES', '200000'))

    @property
    def SPECIALIZATION_SAMPLES(self) -> int:
        """Oracle-field samples drawn when specializing a generic summand."""
        return int(os.getenv('QM_SPECIALIZATION_SAMPLES', '24'))

    # ========================================================================
    # RUNTIME CONFIGURATION
    # ========================================================================

    @property
    def WORKERS(self) -> int:
        """Threads used for per-component work."""
        return max(1, int(os.getenv('QM_WORKERS', '1')))

    @property
    def LOG_LEVEL(self) -> str:
        """Logging level."""
        return os.getenv('LOG_LEVEL', 'warning').lower()

    # ========================================================================
    # UTILITY METHODS
    # ========================================================================

    def summary(self) -> dict:
        """Return a dictionary of current configuration values."""
        return {
            'sampling_prime': self.SAMPLING_PRIME,
            'trials': self.TRIALS,
            'seed': self.SEED,
            'max_retries': self.MAX_RETRIES,
            'split_attempts': self.SPLIT_ATTEMPTS,
            'oracle_prime': self.ORACLE_PRIME,
            'oracle_max_dim': self.ORACLE_MAX_DIM,
            'oracle_max_subspaces': self.ORACLE_MAX_SUBSPACES,
            'specialization_samples': self.SPECIALIZATION_SAMPLES,
            'workers': self.WORKERS,
            'log_level': self.LOG_LEVEL,
        }


config = Config()


def override_config(**settings):
    """Set environment variables, e.g. override_config(QM_PRIME=101, QM_TRIALS=2)."""
    os.environ.update({name: str(value) for name, value in settings.items()})
