"""Shared pytest setup: repository root on sys.path and the hypothesis profile."""

import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from hypothesis import settings

settings.register_profile("ttone", deadline=None, max_examples=60)
settings.load_profile("ttone")
