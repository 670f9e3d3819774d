def pytest_terminal_summary(terminalreporter):
    # one PASS/FAIL line per acceptance criterion, collected by test_acceptance
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
