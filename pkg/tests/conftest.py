def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, format_line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance")
    for number in sorted(RESULTS):
        terminalreporter.write_line(format_line(number))
