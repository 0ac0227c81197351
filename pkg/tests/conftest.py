def pytest_terminal_summary(terminalreporter):
    # surface the acceptance PASS/FAIL lines after capture is torn down
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance report")
        for line in REPORT:
            terminalreporter.write_line(line)
