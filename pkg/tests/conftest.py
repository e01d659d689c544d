import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from slice_weaver import kernels  # noqa: E402

ACCEPTANCE_LINES: list[str] = []

BACKENDS = [pytest.param(kernels.numpy_impl, id="numpy")]
if kernels.numba_impl is not None:
    BACKENDS.append(pytest.param(kernels.numba_impl, id="numba"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def report_criterion():
    def record(number: int, name: str, passed: bool, detail: str) -> None:
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {name}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section(f"acceptance criteria (backend={kernels.BACKEND})")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
