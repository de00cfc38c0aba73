import pytest

_ACCEPTANCE_LINES: list = []


@pytest.fixture
def acceptance_report():
    """Record one PASS/FAIL line per acceptance criterion, then assert it."""

    def report(criterion: str, title: str, passed: bool, detail: str = ""):
        line = f"{'PASS' if passed else 'FAIL'} criterion {criterion}: {title}"
        if detail:
            line += f" ({detail})"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert passed, line

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=_criterion_key):
            terminalreporter.write_line(line)


def _criterion_key(line: str):
    tag = line.split()[2].rstrip(":")
    digits = "".join(ch for ch in tag if ch.isdigit())
    return int(digits), tag[len(digits):]
