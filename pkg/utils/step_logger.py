"""
Step-by-step logging for CLI runs.

Each run gets a timestamped directory with one numbered subdirectory per step:
- input.json, output.json
- metadata.json (timing plus whatever the caller adds)
- terminal_output.txt (lines captured for the step)
- diff_from_previous.txt (unified diff against the previous step's output)
- summary.md

Only active when step logging is switched on (Settings.step_logging, read from
ENABLE_STEP_LOGGING).
"""

from __future__ import annotations

import difflib
import io
import json
import os
import time
from datetime import datetime
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Optional

if TYPE_CHECKING:
    from ttone.config import Settings


class StepLogger:
    """
    Logger for the steps of one CLI run (a coloring's reductions, a scan's instances).

    Every public method is a no-op while the logger is disabled, so callers never
    need to check ``enabled`` themselves.
    """

    def __init__(self, run_name: str, enabled: Optional[bool] = None, log_dir: Optional[Path] = None):
        """
        Args:
            run_name: Name of the run, used as the directory under the log root
            enabled: Override enable check (default: read from env ENABLE_STEP_LOGGING)
            log_dir: Override log root (default: env TTONE_LOG_DIR or ``Logs``)
        """
        if enabled is None:
            enabled = os.getenv("ENABLE_STEP_LOGGING", "false").lower() == "true"

        self.enabled = enabled
        self.run_name = run_name
        self.log_root = Path(log_dir or os.getenv("TTONE_LOG_DIR", "Logs"))
        self.base_dir: Optional[Path] = None
        self.current_step_dir: Optional[Path] = None
        self.current_step_name: Optional[str] = None
        self.step_counter = 0
        self.previous_output: Any = None
        self.step_start_time: Optional[float] = None
        self.terminal_buffer = io.StringIO()

        if self.enabled:
            self._setup_directories()

    @classmethod
    def from_settings(cls, run_name: str, settings: "Settings") -> "StepLogger":
        return cls(run_name, enabled=settings.step_logging, log_dir=settings.log_dir)

    def _setup_directories(self) -> None:
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.base_dir = self.log_root / self.run_name / timestamp
        self.base_dir.mkdir(parents=True, exist_ok=True)
        print(f"[INFO] Step logging enabled: {self.base_dir}")

    def log_step_start(self, step_name: str, input_data: Any = None) -> None:
        if not self.enabled:
            return

        self.step_counter += 1
        dir_name = f"step_{self.step_counter:02d}_{step_name}"
        self.current_step_dir = self.base_dir / dir_name
        self.current_step_dir.mkdir(parents=True, exist_ok=True)
        self.current_step_name = step_name
        self.step_start_time = time.time()
        self.terminal_buffer = io.StringIO()

        if input_data is not None:
            self._write_json(self.current_step_dir / "input.json", input_data)

    def log_terminal_output(self, message: str) -> None:
        if not self.enabled or not self.current_step_dir:
            return

        self.terminal_buffer.write(message + "\n")

    def log_step_complete(self, output_data: Any, metadata: Optional[Dict[str, Any]] = None) -> None:
        """
        Close the current step.

        Args:
            output_data: JSON-serialisable result of the step
            metadata: Extra metadata; step name, elapsed seconds and a timestamp are added
        """
        if not self.enabled or not self.current_step_dir:
            return

        elapsed = time.time() - self.step_start_time if self.step_start_time else 0
        self._write_json(self.current_step_dir / "output.json", output_data)

        terminal_content = self.terminal_buffer.getvalue()
        if terminal_content:
            (self.current_step_dir / "terminal_output.txt").write_text(terminal_content, encoding="utf-8")

        metadata = dict(metadata or {})
        metadata["step_name"] = self.current_step_name
        metadata["elapsed_seconds"] = round(elapsed, 3)
        metadata["timestamp"] = datetime.now().isoformat()
        self._write_json(self.current_step_dir / "metadata.json", metadata)

        if self.previous_output is not None:
            self._save_diff(self.previous_output, output_data)
        self.previous_output = output_data

        self._write_summary(metadata)

    def log_step(self, step_name: str, input_data: Any, output_data: Any, metadata: Optional[Dict[str, Any]] = None) -> None:
        """Start and complete a step in one call."""

        self.log_step_start(step_name, input_data)
        self.log_step_complete(output_data, metadata)

    def log_final_output(self, final_data: Any) -> None:
        if not self.enabled:
            return

        final_dir = self.base_dir / "final_output"
        final_dir.mkdir(parents=True, exist_ok=True)
        self._write_json(final_dir / "final.json", final_data)
        (final_dir / "summary.md").write_text(self._create_final_summary(final_data), encoding="utf-8")

        print(f"[OK] Run log saved: {self.base_dir}")

    def _write_json(self, filepath: Path, data: Any) -> None:
        try:
            with filepath.open("w", encoding="utf-8") as f:
                json.dump(data, f, indent=2, ensure_ascii=False, default=str)
        except Exception as e:
            print(f"[WARN] Could not write {filepath.name}: {e}")

    def _save_diff(self, previous: Any, current: Any) -> None:
        try:
            prev_str = json.dumps(previous, indent=2, sort_keys=True, default=str)
            curr_str = json.dumps(current, indent=2, sort_keys=True, default=str)
            diff = difflib.unified_diff(
                prev_str.splitlines(keepends=True),
                curr_str.splitlines(keepends=True),
                fromfile="previous_step",
                tofile="current_step",
            )
            (self.current_step_dir / "diff_from_previous.txt").write_text("".join(diff), encoding="utf-8")
        except Exception as e:
            print(f"[WARN] Could not compute diff: {e}")

    def _write_summary(self, metadata: Dict[str, Any]) -> None:
        lines = [
            f"# {self.current_step_name.replace('_', ' ').title()}",
            "",
            f"Completed in {metadata['elapsed_seconds']:.3f}s",
        ]
        extra = {k: v for k, v in metadata.items() if k not in ("step_name", "elapsed_seconds", "timestamp")}
        if extra:
            lines += ["", "## Details"] + [f"- {key}: {value}" for key, value in sorted(extra.items())]
        (self.current_step_dir / "summary.md").write_text("\n".join(lines) + "\n", encoding="utf-8")

    def _create_final_summary(self, final_data: Any) -> str:
        lines = [
            f"# Run: {self.run_name}",
            "",
            f"Generated: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}",
            f"Steps logged: {self.step_counter}",
        ]
        if isinstance(final_data, dict):
            lines += ["", "## Result"] + [
                f"- {key}: {value}" for key, value in final_data.items() if not isinstance(value, (dict, list))
            ]
        lines += ["", "## Log Directory", f"`{self.base_dir}`"]
        return "\n".join(lines) + "\n"
