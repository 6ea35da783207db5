import os
import logging
import sys
from dataclasses import dataclass, replace
from typing import List, Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

ELIGIBILITY_MODES = ("strict", "nonstrict")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def load_settings(path: str = ".env") -> bool:
    """Load PERIPLECTIC_* settings from a .env file into the environment"""
    if not os.path.exists(path):
        logger.info(f"{path} not found; using environment and defaults")
        return False
    return load_dotenv(path, override=False)


def _int_env(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring {name}={raw!r}: not an integer")
        return default


# Load the settings
load_settings()


@dataclass
class Config:
    """Run settings for the linkage tools"""
    p: int = 3
    n: int = 2
    eligibility_mode: str = "nonstrict"
    excursion_cap: Optional[int] = None
    budget: int = 200_000
    cache_path: Optional[str] = None
    log_level: str = "WARNING"
    box_margin_top: Optional[int] = None
    box_margin_bottom: Optional[int] = None

    @classmethod
    def from_env(cls) -> "Config":
        return cls(
            eligibility_mode=os.getenv("PERIPLECTIC_ELIGIBILITY_MODE", "nonstrict").strip().lower(),
            excursion_cap=_int_env("PERIPLECTIC_EXCURSION_CAP", None),
            budget=_int_env("PERIPLECTIC_BUDGET", 200_000),
            cache_path=os.getenv("PERIPLECTIC_CACHE_PATH", "").strip() or None,
            log_level=os.getenv("PERIPLECTIC_LOG_LEVEL", "WARNING").strip().upper(),
            box_margin_top=_int_env("PERIPLECTIC_BOX_MARGIN_TOP", None),
            box_margin_bottom=_int_env("PERIPLECTIC_BOX_MARGIN_BOTTOM", None),
        )

    @property
    def strict(self) -> bool:
        return self.eligibility_mode == "strict"

    def with_overrides(self, **fields) -> "Config":
        """Copy with every non-None field replaced"""
        return replace(self, **{key: value for key, value in fields.items() if value is not None})

    def problems(self) -> List[str]:
        found = []
        if self.p < 3 or any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1)):
            found.append("p")
        if self.n < 2:
            found.append("n")
        if self.budget < 1:
            found.append("budget")
        if self.eligibility_mode not in ELIGIBILITY_MODES:
            found.append("eligibility_mode")
        if self.excursion_cap is not None and self.excursion_cap < 0:
            found.append("excursion_cap")
        return found

    def is_valid(self) -> bool:
        """Check that every setting is usable"""
        return len(self.problems()) == 0

    def get_problems_help(self) -> str:
        """Explain how to fix each bad setting"""
        help_text = "Invalid settings. Please fix the following:\n\n"
        problems = self.problems()
        if "p" in problems:
            help_text += f"p={self.p}: must be an odd prime (3, 5, 7, ...)\n"
        if "n" in problems:
            help_text += f"n={self.n}: the rank must be at least 2\n"
        if "budget" in problems:
            help_text += f"budget={self.budget}: PERIPLECTIC_BUDGET or --budget must be at least 1\n"
        if "eligibility_mode" in problems:
            help_text += (f"eligibility_mode={self.eligibility_mode!r}: "
                          f"PERIPLECTIC_ELIGIBILITY_MODE must be strict or nonstrict\n")
        if "excursion_cap" in problems:
            help_text += f"excursion_cap={self.excursion_cap}: must not be negative\n"
        return help_text


def setup_logging(level: str = "WARNING") -> None:
    """Send log records to stderr so stdout stays pure JSON"""
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING),
                        format=LOG_FORMAT, stream=sys.stderr, force=True)


# Global config instance
config = Config.from_env()
