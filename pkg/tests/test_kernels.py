import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rkhs_continuation import (
    DomainError,
    DuplicatePointError,
    EmptyDataError,
    KernelSpec,
    ProblemInstance,
    bergman,
    gaussian,
    kernel_eval,
    paley_wiener,
    szego,
    validate_instance,
)
from rkhs_continuation.kernels import as_point


def test_szego_examples():
    assert kernel_eval(szego(), 0.5, 0.0) == 1.0
    assert kernel_eval(szego(), 0.5, 0.5) == pytest.approx(4.0 / 3.0, rel=1e-15)


def test_paley_wiener_zero_at_integer():
    assert abs(kernel_eval(paley_wiener(), 1.0, 0.0)) < 1e-15


def test_bergman_and_gaussian_closed_forms():
    assert kernel_eval(bergman(), 0.0, 0.3) == pytest.approx(1.0 / math.pi)
    assert kernel_eval(bergman(), 0.5, 0.5) == pytest.approx(1.0 / (math.pi * 0.75**2))
    val = kernel_eval(gaussian(2.0), 1.0 + 1j, 0.5)
    assert val == pytest.approx(np.exp(-2.0 * (0.5 + 1j) ** 2))


def test_paley_wiener_series_branch_is_continuous():
    k = paley_wiener(1.3)
    for d in (1e-7, 5e-7, 2e-6):
        direct = math.sin(math.pi * 1.3 * d) / (math.pi * d)
        assert kernel_eval(k, d, 0.0).real == pytest.approx(direct, rel=1e-14)
    assert kernel_eval(k, 0.2, 0.2) == pytest.approx(1.3)


def test_disk_domain_error():
    with pytest.raises(DomainError):
        kernel_eval(szego(), 1.5, 0.0)
    with pytest.raises(DomainError):
        kernel_eval(bergman(), 0.0, 1.0 - 1e-12)
    # entire-function kernels accept any finite point
    kernel_eval(paley_wiener(), 1.5 + 3j, -7.0)


def test_kernel_spec_rejects_bad_params():
    with pytest.raises(ValueError):
        KernelSpec("PaleyWiener", {"bandwidth": -1.0})
    with pytest.raises(ValueError):
        KernelSpec("Gaussian", {"width": 1.0})
    with pytest.raises(ValueError):
        KernelSpec("Matern")
    assert KernelSpec("Gaussian").params == {"gamma": 1.0}


def test_validate_instance():
    validate_instance(szego(), [0.0], 0.5)
    with pytest.raises(DuplicatePointError) as info:
        validate_instance(szego(), [0.0, 0.0], 0.5)
    assert info.value.pair == (0, 1)
    with pytest.raises(DuplicatePointError) as info:
        validate_instance(szego(), [0.1, 0.5], 0.5)
    assert info.value.pair == (1, "target")
    with pytest.raises(DomainError):
        validate_instance(szego(), [1.5], 0.0)
    with pytest.raises(EmptyDataError):
        validate_instance(szego(), [], 0.0)


def test_separation_threshold():
    validate_instance(szego(), [0.1, 0.1 + 1e-10], 0.5)
    with pytest.raises(DuplicatePointError):
        validate_instance(szego(), [0.1, 0.1 + 1e-13j], 0.5)


def test_as_point_accepts_pairs():
    assert as_point([0.25, -1.0]) == 0.25 - 1j
    with pytest.raises(DomainError):
        as_point(float("nan"))


def test_problem_instance_normalizes_points():
    inst = ProblemInstance(szego(), [[0.0, 0.1], 0.2], [0.5, 0.0])
    assert inst.points == (0.1j, 0.2 + 0j)
    assert inst.n == 2


KERNELS = [szego(), bergman(), paley_wiener(), paley_wiener(0.4), gaussian(0.7)]

disk_point = st.builds(
    lambda r, t: r * complex(math.cos(t), math.sin(t)),
    st.floats(0.0, 0.95),
    st.floats(0.0, 2 * math.pi),
)
plane_point = st.builds(complex, st.floats(-3, 3), st.floats(-1, 1))


def _point_strategy(kernel):
    return disk_point if kernel.on_disk else plane_point


@pytest.mark.parametrize("kernel", KERNELS, ids=lambda k: f"{k.family.value}")
def test_hermitian_symmetry_and_diagonal(kernel):
    @settings(max_examples=60, deadline=None)
    @given(_point_strategy(kernel), _point_strategy(kernel))
    def check(zeta, w):
        p = kernel_eval(kernel, zeta, w)
        q = kernel_eval(kernel, w, zeta)
        assert abs(p - np.conj(q)) <= 1e-14 * (1 + abs(p))
        d = kernel_eval(kernel, w, w)
        assert d.real > 0
        assert abs(d.imag) <= 1e-14 * d.real

    check()


@pytest.mark.parametrize("kernel", KERNELS, ids=lambda k: f"{k.family.value}")
def test_gram_matrices_are_psd(kernel):
    @settings(max_examples=40, deadline=None)
    @given(st.lists(_point_strategy(kernel), min_size=1, max_size=6))
    def check(pts):
        pts = np.asarray(pts, dtype=complex)
        M = kernel_eval(kernel, pts[None, :], pts[:, None])
        M = 0.5 * (M + M.conj().T)
        w = np.linalg.eigvalsh(M)
        assert w[0] >= -1e-10 * w[-1]

    check()


@settings(max_examples=50, deadline=None)
@given(st.floats(-50, 50))
def test_paley_wiener_diagonal_is_one_on_real_line(x):
    assert kernel_eval(paley_wiener(), x, x) == 1.0
