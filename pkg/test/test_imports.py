"""
Import order tests
각 진입점을 새 인터프리터에서 가장 먼저 import 해도 순환 import 가 없어야 합니다.
"""
import subprocess
import sys
from pathlib import Path

# Add parent directory to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import pytest

ENTRY_MODULES = [
    "app.engine.rootsys",
    "app.engine.alcove",
    "app.engine",
    "app.utils",
    "app.utils.serialize",
    "app.tasks",
    "app.cli",
    "app.main",
]


@pytest.mark.parametrize("module", ENTRY_MODULES)
def test_fresh_import(module):
    result = subprocess.run(
        [sys.executable, "-c", f"import {module}"],
        cwd=project_root,
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert result.returncode == 0, f"import {module} failed:\n{result.stderr}"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
