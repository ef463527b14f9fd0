def pytest_terminal_summary(terminalreporter):
    from test_acceptance import OUTCOMES

    if not OUTCOMES:
        return
    terminalreporter.section("reproduction criteria")
    for outcome in sorted(OUTCOMES, key=lambda o: o.number):
        terminalreporter.write_line(outcome.headline())
