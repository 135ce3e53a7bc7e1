import numpy as np
import pytest

from uhankel.coeffs import UFunctionParams


def random_complex(rng, size=None, scale=1.0):
    return scale * (rng.uniform(-1, 1, size) + 1j * rng.uniform(-1, 1, size))


def random_disc(rng, radius=1.0):
    """Uniform point in the closed disc of given radius."""
    return radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())


def random_params(rng, lam=None):
    """Random (lambda, a2, c) with c inside the Schwarz body and |a2| <= 1 + lambda."""
    lam = rng.uniform(0.01, 1.0) if lam is None else lam
    c1 = random_disc(rng)
    c2 = random_disc(rng, 0.5 * (1 - abs(c1) ** 2))
    c3 = random_disc(rng, max(0.0, (1 - abs(c1) ** 2 - 4 * abs(c2) ** 2 / (1 + abs(c1))) / 3))
    return UFunctionParams.of(lam, random_disc(rng, 1 + lam), c1, c2, c3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title = mark.args
    failed = rep.failed or (rep.when == "call" and not rep.passed)
    prev = _ACCEPTANCE.get(number, (title, True))
    _ACCEPTANCE[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[number]
        terminalreporter.write_line(f"AC{number:<3d}{'PASS' if ok else 'FAIL'}  {title}")
