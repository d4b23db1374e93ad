"""Reproducing kernels of standard Hilbert spaces of analytic functions.

Convention: the kernel section at ``w`` is ``p_w(zeta) = p(zeta, w)`` and
reproduces point values through ``f(w) = (f, p_w)``. Every kernel here is
analytic in ``zeta`` and conjugate-analytic in ``w``.

Points are plain Python/numpy complex numbers.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError, DuplicatePointError, EmptyDataError

# disk kernels blow up at the unit circle
DISK_MARGIN = 1e-9
# max-norm separation below which two points count as equal
MIN_SEPARATION = 1e-12
# |pi * b * d| below which the sinc kernel switches to its Taylor series
SINC_SERIES_CUTOFF = 1e-6


class KernelFamily(str, enum.Enum):
    SZEGO_DISK = "SzegoDisk"
    BERGMAN_DISK = "BergmanDisk"
    PALEY_WIENER = "PaleyWiener"
    GAUSSIAN = "Gaussian"


_DEFAULT_PARAMS = {
    KernelFamily.SZEGO_DISK: {},
    KernelFamily.BERGMAN_DISK: {},
    KernelFamily.PALEY_WIENER: {"bandwidth": 1.0},
    KernelFamily.GAUSSIAN: {"gamma": 1.0},
}


@dataclass(frozen=True)
class KernelSpec:
    """A kernel family together with its (positive) parameters.

    Parameters
    ----------
    family : KernelFamily or str
        One of ``SzegoDisk``, ``BergmanDisk``, ``PaleyWiener``, ``Gaussian``.
    params : mapping, optional
        ``bandwidth`` for Paley-Wiener, ``gamma`` for the Gaussian kernel.
        Missing entries take the value 1.
    """

    family: KernelFamily
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        family = KernelFamily(self.family)
        allowed = _DEFAULT_PARAMS[family]
        params = dict(allowed)
        for key, value in dict(self.params).items():
            if key not in allowed:
                raise ValueError(f"{family.value} kernel has no parameter {key!r}")
            value = float(value)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"kernel parameter {key!r} must be positive, got {value}")
            params[key] = value
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", params)

    @property
    def on_disk(self) -> bool:
        return self.family in (KernelFamily.SZEGO_DISK, KernelFamily.BERGMAN_DISK)

    def to_dict(self) -> dict:
        return {"family": self.family.value, "params": dict(self.params)}


def szego() -> KernelSpec:
    return KernelSpec(KernelFamily.SZEGO_DISK)


def bergman() -> KernelSpec:
    return KernelSpec(KernelFamily.BERGMAN_DISK)


def paley_wiener(bandwidth: float = 1.0) -> KernelSpec:
    return KernelSpec(KernelFamily.PALEY_WIENER, {"bandwidth": bandwidth})


def gaussian(gamma: float = 1.0) -> KernelSpec:
    return KernelSpec(KernelFamily.GAUSSIAN, {"gamma": gamma})


def as_point(value) -> complex:
    """Convert a complex number or an ``[re, im]`` pair to ``complex``."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"a point needs exactly two coordinates, got {value!r}")
        value = complex(float(value[0]), float(value[1]))
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"point {z} is not finite")
    return z


def check_domain(kernel: KernelSpec, points) -> None:
    """Raise DomainError if any of ``points`` is outside the kernel's domain."""
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    if not np.all(np.isfinite(pts)):
        raise DomainError("non-finite point")
    if kernel.on_disk:
        bad = np.abs(pts) >= 1.0 - DISK_MARGIN
        if np.any(bad):
            z = pts[np.argmax(bad)]
            raise DomainError(f"point {z} lies outside the unit disk (|z| = {abs(z):.6g})")


def kernel_eval(kernel: KernelSpec, zeta, w):
    """Evaluate ``p(zeta, w)``; broadcasts over array arguments.

    Examples
    --------
    >>> kernel_eval(szego(), 0.5, 0.5)
    (1.3333333333333333+0j)
    """
    zeta_a = np.asarray(zeta, dtype=complex)
    w_a = np.asarray(w, dtype=complex)
    check_domain(kernel, zeta_a)
    check_domain(kernel, w_a)
    family = kernel.family
    if family is KernelFamily.SZEGO_DISK:
        out = 1.0 / (1.0 - zeta_a * np.conj(w_a))
    elif family is KernelFamily.BERGMAN_DISK:
        out = 1.0 / (np.pi * (1.0 - zeta_a * np.conj(w_a)) ** 2)
    elif family is KernelFamily.PALEY_WIENER:
        out = _sinc_kernel(zeta_a - np.conj(w_a), kernel.params["bandwidth"])
    else:
        d = zeta_a - np.conj(w_a)
        out = np.exp(-kernel.params["gamma"] * d * d)
    if out.ndim == 0:
        return complex(out)
    return out


def _sinc_kernel(d, b):
    x = np.pi * b * d
    small = np.abs(x) < SINC_SERIES_CUTOFF
    # avoid 0/0 in the masked-out entries
    safe = np.where(small, 1.0, d)
    direct = np.sin(np.pi * b * safe) / (np.pi * safe)
    series = b * (1.0 - x * x / 6.0)
    return np.where(small, series, direct)


def validate_instance(kernel: KernelSpec, points: Sequence, target) -> None:
    """Check that sample points and target form a valid problem.

    Raises EmptyDataError when there are no samples, DomainError when a point
    is outside the kernel domain and DuplicatePointError (naming the pair,
    with the target reported as ``"target"``) when two points coincide.
    """
    pts = [as_point(p) for p in points]
    if len(pts) == 0:
        raise EmptyDataError("at least one sample point is required")
    z = as_point(target)
    check_domain(kernel, pts + [z])
    labelled = list(enumerate(pts)) + [("target", z)]
    for i in range(len(labelled)):
        for j in range(i + 1, len(labelled)):
            (li, a), (lj, b) = labelled[i], labelled[j]
            if max(abs(a.real - b.real), abs(a.imag - b.imag)) <= MIN_SEPARATION:
                raise DuplicatePointError(
                    li, lj, f"points {li} and {lj} coincide (both at {a})"
                )


@dataclass(frozen=True)
class ProblemInstance:
    """Kernel, sample points ``z_1..z_n`` and target point ``z``."""

    kernel: KernelSpec
    points: tuple
    target: complex

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        z = as_point(self.target)
        validate_instance(self.kernel, pts, z)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "target", z)

    @property
    def n(self) -> int:
        return len(self.points)
