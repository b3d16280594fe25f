import pytest

from wittpoisson import GroupSpec, WittFunction

# Finite instances used throughout: name -> (modulus, values in enumeration order).
INSTANCES = {
    "z2": (2, [0, 1]),
    "z3_three": (3, [0, 1, -1]),
    "z3_two": (3, [0, 1, 1]),
    "z4": (4, [0, 1, 0, 1]),
    "z6_three": (6, [0, 1, -1, 0, 1, -1]),
    "z6_two": (6, [0, 1, 1, 0, 1, 1]),
}
EXPECTED_DIM = {"z2": 2, "z3_three": 1, "z3_two": 3, "z4": 4, "z6_three": 2, "z6_two": 6}


def cyclic_f(m, values):
    return WittFunction.from_table(GroupSpec.cyclic(m), values)


def witt_z():
    return WittFunction.additive(GroupSpec(1, ()), [1])


@pytest.fixture(params=sorted(INSTANCES))
def instance(request):
    m, values = INSTANCES[request.param]
    return request.param, cyclic_f(m, values)


# acceptance summary: one line per criterion at the end of the run
_ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    rest = name[len("test_criterion_"):]
    num = int(rest.split("_")[0])
    part = rest[rest.index("[") + 1 : -1] if "[" in rest else rest.split("_", 1)[1]
    _ACCEPTANCE.setdefault(num, []).append((part, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        parts = _ACCEPTANCE[num]
        ok = all(p for _, p in parts)
        failed = [name for name, p in parts if not p]
        extra = f"  (failing: {', '.join(failed)})" if failed else ""
        tr.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}{extra}")
