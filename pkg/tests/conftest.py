import sys

from hypothesis import settings

# exact big-integer work has uneven timing; examples are bounded in size instead
settings.register_profile("qpath", deadline=None)
settings.load_profile("qpath")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        label, ok = mod.RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {label}")
