from __future__ import annotations

import pytest

from adlab.generators import GeneratorSet


@pytest.fixture(scope="session")
def smooth23():
    return GeneratorSet.smooth([2, 3])


@pytest.fixture(scope="session")
def powers23():
    return GeneratorSet.power_union([2, 3])


@pytest.fixture(scope="session")
def smooth2():
    return GeneratorSet.smooth([2])


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'} - {detail}")
