"""Environment-driven settings for searches, scans and step logging."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv


DEFAULT_MAX_NODES = 5_000_000
DEFAULT_EXTENSION_MAX_NODES = 2_000_000
DEFAULT_SCAN_WORKERS = 4


@dataclass(frozen=True)
class Settings:
    """Runtime knobs, read from the environment (and an optional ``.env`` file).

    Attributes
    ----------
    max_nodes:
        Node budget for exact searches (``TTONE_MAX_NODES``).
    extension_max_nodes:
        Node budget for each bounded extension inside a constructive colorer
        (``TTONE_EXTENSION_MAX_NODES``).
    scan_workers:
        Worker threads used when scanning or checking a corpus (``TTONE_SCAN_WORKERS``).
    step_logging:
        Whether the step logger writes files (``ENABLE_STEP_LOGGING``).
    log_dir:
        Root directory for step logs (``TTONE_LOG_DIR``).
    """

    max_nodes: int = DEFAULT_MAX_NODES
    extension_max_nodes: int = DEFAULT_EXTENSION_MAX_NODES
    scan_workers: int = DEFAULT_SCAN_WORKERS
    step_logging: bool = False
    log_dir: Path = Path("Logs")

    def __post_init__(self) -> None:
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be positive")
        if self.extension_max_nodes < 1:
            raise ValueError("extension_max_nodes must be positive")
        if self.scan_workers < 1:
            raise ValueError("scan_workers must be at least 1")

    def override(self, max_nodes: Optional[int] = None, scan_workers: Optional[int] = None) -> "Settings":
        return replace(
            self,
            max_nodes=self.max_nodes if max_nodes is None else max_nodes,
            scan_workers=self.scan_workers if scan_workers is None else scan_workers,
        )


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw.replace("_", ""))
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def load_settings(dotenv: bool = True) -> Settings:
    """Load settings from the environment, reading ``.env`` first when asked."""

    if dotenv:
        load_dotenv()
    return Settings(
        max_nodes=_int_env("TTONE_MAX_NODES", DEFAULT_MAX_NODES),
        extension_max_nodes=_int_env("TTONE_EXTENSION_MAX_NODES", DEFAULT_EXTENSION_MAX_NODES),
        scan_workers=_int_env("TTONE_SCAN_WORKERS", DEFAULT_SCAN_WORKERS),
        step_logging=os.getenv("ENABLE_STEP_LOGGING", "false").lower() == "true",
        log_dir=Path(os.getenv("TTONE_LOG_DIR", "Logs")),
    )
