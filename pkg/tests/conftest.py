import contextlib
import time

import pytest

_ACCEPTANCE: list[str] = []


class _Criterion:
    def __init__(self, number: int, title: str, budget: float | None):
        self.number = number
        self.title = title
        self.budget = budget
        self.details: list[str] = []

    def note(self, text: str) -> None:
        self.details.append(text)


@pytest.fixture
def criterion():
    """Context manager recording a PASS/FAIL line for one acceptance criterion.

    ``budget`` is a wall-clock limit in seconds, checked on exit.
    """

    @contextlib.contextmanager
    def run(number: int, title: str, budget: float | None = None):
        c = _Criterion(number, title, budget)
        start = time.perf_counter()
        try:
            yield c
            elapsed = time.perf_counter() - start
            if budget is not None:
                assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            _ACCEPTANCE.append(f"FAIL  #{number:<2} {title} ({elapsed:.2f}s): {exc}")
            raise
        extra = "; ".join(c.details)
        _ACCEPTANCE.append(
            f"PASS  #{number:<2} {title} ({elapsed:.2f}s{', ' + extra if extra else ''})"
        )

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("#")[1].split()[0])):
        terminalreporter.write_line(line)
