import math

import numpy as np
import pytest

from rkhs_continuation import ProblemInstance, analyze, bergman, paley_wiener, szego

ACCEPTANCE_LINES = []


def random_disk_points(rng, n, radius=0.8):
    r = radius * np.sqrt(rng.uniform(size=n))
    t = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return r * np.exp(1j * t)


def random_instances(seed=0, count=5):
    """Szego/Bergman instances with n = 2, 3, ... and |points| <= 0.8."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        kernel = szego() if i % 2 == 0 else bergman()
        n = 2 + i % 5
        pts = random_disk_points(rng, n + 1)
        out.append(ProblemInstance(kernel, tuple(pts[:-1]), pts[-1]))
    return out


@pytest.fixture
def one_point():
    inst = ProblemInstance(szego(), (0.0,), 0.5)
    gram, sd = analyze(inst)
    return inst, gram, sd


@pytest.fixture
def pw_kernel_regime():
    inst = ProblemInstance(paley_wiener(), (-2.0, -1.0, 1.0, 2.0), 0.0)
    gram, sd = analyze(inst)
    return inst, gram, sd


@pytest.fixture(scope="session")
def generic_instances():
    out = []
    for inst in random_instances(seed=0, count=5):
        gram, sd = analyze(inst)
        eps = 0.3 * math.sqrt(sd.phi_infinity)
        out.append((inst, gram, sd, eps))
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
