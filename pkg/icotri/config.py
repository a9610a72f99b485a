"""
Configuration management for icotri.

Supports loading configuration from environment variables, dictionaries, or YAML files.
"""

import os
from typing import Dict, Any, Optional, List
from dotenv import load_dotenv

# Load .env file if it exists
load_dotenv()

REPORT_FORMATS = ("text", "json")


def _env_flag(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in ("1", "true", "yes", "on")


class VerifierConfig:
    """
    Configuration for the verification harness.

    Supports multiple ways to load configuration:
    - Environment variables
    - Dictionary
    - YAML file
    """

    def __init__(
        self,
        seed: int = 0,
        jobs: Optional[int] = None,
        flip_budget: int = 10_000,
        output_format: str = "text",
        log_json: bool = False,
        timings: bool = False
    ):
        """
        Initialize verifier configuration.

        Args:
            seed: Seed for the flip-reduction heuristic
            jobs: Worker-pool size (default: number of logical cores)
            flip_budget: Maximum number of moves per link reduction
            output_format: Report format ("text" or "json")
            log_json: Emit structured logs as JSON
            timings: Include elapsed seconds in reports (breaks byte-identical output)
        """
        self.seed = seed
        self.jobs = jobs if jobs is not None else (os.cpu_count() or 1)
        self.flip_budget = flip_budget
        self.output_format = output_format
        self.log_json = log_json
        self.timings = timings

    @classmethod
    def from_env(cls) -> 'VerifierConfig':
        """
        Create configuration from environment variables.

        Environment variables:
            ICOTRI_SEED: Flip-reduction seed
            ICOTRI_JOBS: Worker-pool size
            ICOTRI_FLIP_BUDGET: Move budget per link reduction
            ICOTRI_FORMAT: Report format (text/json)
            ICOTRI_LOG_JSON: Emit JSON logs when truthy
            ICOTRI_TIMINGS: Include elapsed seconds when truthy
        """
        jobs_str = os.getenv("ICOTRI_JOBS")
        return cls(
            seed=int(os.getenv("ICOTRI_SEED", "0")),
            jobs=int(jobs_str) if jobs_str else None,
            flip_budget=int(os.getenv("ICOTRI_FLIP_BUDGET", "10000")),
            output_format=os.getenv("ICOTRI_FORMAT", "text"),
            log_json=_env_flag("ICOTRI_LOG_JSON"),
            timings=_env_flag("ICOTRI_TIMINGS")
        )

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> 'VerifierConfig':
        """
        Create configuration from dictionary.

        Args:
            config_dict: Configuration dictionary
        """
        return cls(**config_dict)

    @classmethod
    def from_yaml(cls, yaml_path: str) -> 'VerifierConfig':
        """
        Create configuration from YAML file.

        Args:
            yaml_path: Path to YAML configuration file
        """
        try:
            import yaml
        except ImportError:
            raise ImportError(
                "PyYAML is required for YAML config. Install with: pip install pyyaml"
            )

        with open(yaml_path, 'r') as f:
            config_dict = yaml.safe_load(f) or {}

        # Flatten nested structure if needed
        if 'icotri' in config_dict:
            config_dict = config_dict['icotri']

        return cls.from_dict(config_dict)

    def override(self, **kwargs) -> 'VerifierConfig':
        """Return a copy with every non-None keyword applied (CLI flags win)."""
        values = self.to_dict()
        values.update({k: v for k, v in kwargs.items() if v is not None})
        return VerifierConfig(**values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "jobs": self.jobs,
            "flip_budget": self.flip_budget,
            "output_format": self.output_format,
            "log_json": self.log_json,
            "timings": self.timings,
        }

    def validate(self) -> List[str]:
        """
        Validate configuration and return list of errors.

        Returns:
            List of error messages (empty if valid)
        """
        errors = []

        if self.jobs < 1:
            errors.append("jobs must be at least 1")

        if self.flip_budget < 1:
            errors.append("flip_budget must be at least 1")

        if self.output_format not in REPORT_FORMATS:
            errors.append(f"output_format must be one of {', '.join(REPORT_FORMATS)}")

        return errors
