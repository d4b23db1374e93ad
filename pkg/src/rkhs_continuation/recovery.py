"""Optimal linear recovery of ``f(z)`` from noisy samples.

A linear algorithm estimates ``f(z)`` by ``sum_j c_j y_j`` where
``y_j = f(z_j) + delta_j`` and ``|delta| <= eps``. Its worst case over the
unit ball has the closed form ``||p_z - sum_j conj(c_j) p_{z_j}|| + eps |c|``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .continuation import ROOT_RTOL, THRESHOLD_RTOL, solve_eta
from .errors import DimensionError
from .spectral import GramData, Regime, SpectralData


@dataclass(frozen=True)
class RecoveryResult:
    c: np.ndarray
    E: float
    eps: float
    regime: Regime
    bound_only: bool = False

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "c": [[float(v.real), float(v.imag)] for v in self.c],
            "E": self.E,
            "regime": self.regime.value,
            "bound_only": self.bound_only,
        }


def worst_case_error(gram: GramData, c, eps: float) -> float:
    """Worst-case error ``E_z(eps, c)`` of the estimator with coefficients ``c``."""
    c = np.asarray(c, dtype=complex)
    if c.shape != (gram.n,):
        raise DimensionError(f"expected {gram.n} coefficients, got shape {c.shape}")
    if not eps >= 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    residual2 = (
        gram.pzz
        - 2.0 * np.dot(c, np.conj(gram.beta)).real
        + (np.conj(c) @ gram.G @ c).real
    )
    return math.sqrt(max(float(residual2), 0.0)) + eps * float(np.linalg.norm(c))


def optimal_coefficients(sd: SpectralData, gram: GramData, eps: float,
                         rtol: float = ROOT_RTOL) -> RecoveryResult:
    """Coefficients of the optimal linear algorithm, ``c = (G + eta I)^{-1} beta``.

    This is ridge-regularized interpolation of ``p_z`` with the
    regularization set to ``eta(eps)``, and equivalently ``c_j = conj(u(z_j))``
    for the unnormalized extremal function ``u``. Its worst-case error equals
    ``A_z(eps)``.

    Edge cases: with no information in the data (kernel regime) or an
    inactive data constraint the best estimator is 0. At eps = 0 and in the
    complete-stability regime ``c = G^+ beta``; in the latter ``E`` is only
    the bound ``eps |c|``.
    """
    eps = float(eps)
    n = gram.n
    if sd.regime in (Regime.KERNEL, Regime.DEGENERATE):
        c = np.zeros(n, dtype=complex)
        return RecoveryResult(c, math.sqrt(gram.pzz), eps, sd.regime)
    if sd.regime is Regime.COMPLETE_STABILITY:
        c = sd.pinv_beta()
        return RecoveryResult(c, eps * float(np.linalg.norm(c)), eps, sd.regime, bound_only=True)
    if eps == 0.0:
        c = sd.pinv_beta()
    elif eps * eps >= sd.phi_infinity * (1.0 - THRESHOLD_RTOL):
        c = np.zeros(n, dtype=complex)
    else:
        c = sd.resolvent_beta(solve_eta(sd, eps))
    return RecoveryResult(c, worst_case_error(gram, c, eps), eps, sd.regime)
