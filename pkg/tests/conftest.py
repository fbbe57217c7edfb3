import numpy as np
import pytest

from povmlab import catalog


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def tetra_sic():
    return catalog.builtin_sic("tetrahedral")


@pytest.fixture(scope="session")
def hesse_sic():
    return catalog.builtin_sic("hesse")


@pytest.fixture(scope="session")
def hoggar_sic():
    return catalog.builtin_sic("hoggar", path=catalog.hoggar_fiducial_path())


def rank1_state(effect):
    """Unit vector spanning a rank-1 effect."""
    return np.linalg.eigh(effect)[1][:, -1]


_ACCEPTANCE: list[str] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion; printed at the end of the run."""
    state = {}

    def record(label, detail=""):
        state["label"], state["detail"] = label, detail

    yield record
    if "label" in state:
        rep = getattr(request.node, "rep_call", None)
        ok = rep is not None and rep.passed
        _ACCEPTANCE.append(f"[{'PASS' if ok else 'FAIL'}] {state['label']}  {state['detail']}".rstrip())


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
