def pytest_terminal_summary(terminalreporter):
    from test_acceptance import OUTCOMES

    if OUTCOMES:
        terminalreporter.section("acceptance criteria")
        for o in sorted(OUTCOMES, key=lambda o: o.number):
            terminalreporter.write_line(o.line())
