"""
Test configuration and fixtures for the q-sphere spectral triple plugin tests.
"""
import sys
from pathlib import Path

# Add project root to Python path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import importlib.util

import pytest

# Ensure tools package exists
import tools

from qsphere.hilbert import Truncation
from qsphere.qnum import QContext


def _load_tool(filename: str, module_name: str) -> None:
    """Make tools/<filename> importable as tools.<module_name> (hyphenated filenames)."""
    path = project_root / "tools" / filename
    if not path.exists():
        return
    spec = importlib.util.spec_from_file_location(f"tools.{module_name}", path)
    if spec and spec.loader:
        module = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(module)
        setattr(tools, module_name, module)
        sys.modules[f"tools.{module_name}"] = module


_load_tool("triple-verifier.py", "triple_verifier")
_load_tool("dirac-spectrum.py", "dirac_spectrum")
_load_tool("scan-to-csv.py", "scan_to_csv")
_load_tool("operator-export.py", "operator_export")


@pytest.fixture
def mock_runtime():
    """Mock runtime with provider settings."""
    from dify_plugin.entities.tool import ToolRuntime

    return ToolRuntime(
        credentials={
            "default_tolerance": "1e-9",
            "max_shells": "16",
        },
        user_id="test-user",
        session_id="test-session"
    )


@pytest.fixture
def mock_session():
    """Mock session for tool initialization."""
    from dify_plugin.core.runtime import Session

    return Session.empty_session()


@pytest.fixture
def ctx():
    return QContext(0.5)


@pytest.fixture
def trunc():
    return Truncation(6)


@pytest.fixture
def triple(ctx, trunc):
    from qsphere.operators import build_triple

    return build_triple(ctx, trunc)
