import numpy as np
import pytest

from localchan.states import random_mixed, random_pure, random_separable


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def random_states(rng, d, count):
    """Alternating pure / mixed states of dimension ``d``."""
    return [random_pure(d, rng) if i % 2 == 0 else random_mixed(d, None, rng)
            for i in range(count)]


def random_separables(rng, d1, d2, count):
    return [random_separable(d1, d2, int(rng.integers(1, 5)), rng) for _ in range(count)]


# -- acceptance summary --------------------------------------------------------

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1][len("test_criterion_"):]
        detail = dict(report.user_properties).get("detail", "")
        _ACCEPTANCE[name] = (report.outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[0])):
        outcome, detail = _ACCEPTANCE[name]
        num, _, label = name.partition("_")
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num} {status} {label}: {detail}")
