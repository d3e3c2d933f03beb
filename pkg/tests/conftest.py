"""Pytest fixtures shared across the test-suite."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))


from twistk.io.workspace import Workspace  # noqa: E402

from .samples import RP2_GENERATOR_EDGES, rp2_generator, z2_in_z4  # noqa: E402


@pytest.fixture
def workspace(tmp_path: Path) -> Workspace:
    """Return a workspace rooted in an empty directory, so names resolve to bundled fixtures."""

    return Workspace(tmp_path)


@pytest.fixture
def bockstein():
    """Return the extension ``Z2 -> Z4 -> Z2`` and the generator of ``H^1(RP^2, Z2)`` over its quotient."""

    extension = z2_in_z4()
    return extension, rp2_generator(extension.Q)


__all__ = ["RP2_GENERATOR_EDGES", "bockstein", "workspace"]
