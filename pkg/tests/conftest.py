import helpers


def pytest_terminal_summary(terminalreporter):
    if not helpers.ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(helpers.ACCEPTANCE_LINES):
        terminalreporter.write_line(helpers.ACCEPTANCE_LINES[number])
