"""Worst-case continuation error ``A_z(eps)`` and its extremal function.

``A_z(eps) = sup{|f(z)| : ||f|| <= 1, [f] <= eps}`` where ``[f]`` is the l2
norm of the samples ``f(z_1), ..., f(z_n)``. In the generic regime the
supremum is attained by the normalized resolvent ``u = (K + eta)^{-1} p_z``
where ``eta = eta(eps)`` solves ``Phi(eta) = eps^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BracketError, ConvergenceError, RegimeError
from .kernels import ProblemInstance, kernel_eval
from .spectral import GramData, Regime, SpectralData

ROOT_RTOL = 1e-12
MAX_BISECTIONS = 200
BRACKET_CAP = 1e30
# eps^2 >= Phi(inf) * (1 - THRESHOLD_RTOL) is treated as saturated
THRESHOLD_RTOL = 1e-10


def phi(sd: SpectralData, eta: float) -> float:
    """Ratio ``[u]^2 / ||u||^2`` for the trial function ``u = (K + eta)^{-1} p_z``.

    Evaluated from the spectral data after multiplying through by ``eta^2``,
    which keeps the expression well scaled as ``eta -> 0``.
    """
    if not eta > 0:
        raise ValueError(f"eta must be positive, got {eta}")
    if math.isinf(eta):
        return sd.phi_infinity
    r = (eta / (sd.mu + eta)) ** 2
    num = float(np.sum(sd.mu * sd.weights * r))
    den = sd.a0 + float(np.sum(sd.weights * r))
    if den == 0.0:
        return 0.0
    return num / den


def eta_equation_residual(sd: SpectralData, eps: float, eta: float) -> float:
    """Relative residual of the polynomial form of the eta-equation.

    ``eta^2 sum (lam_j - eps^2) a_j / (lam_j + eta)^2 = eps^2 a0``
    """
    r = (eta / (sd.mu + eta)) ** 2
    e2 = eps * eps
    lhs = float(np.sum((sd.mu - e2) * sd.weights * r))
    rhs = e2 * sd.a0
    scale = float(np.sum(sd.mu * sd.weights * r)) + e2 * float(np.sum(sd.weights * r)) + rhs
    if scale == 0.0:
        return 0.0
    return abs(lhs - rhs) / scale


def _check_solvable(sd: SpectralData, eps: float) -> None:
    if sd.regime is not Regime.GENERIC:
        raise RegimeError(f"eta(eps) is only defined in the Generic regime, not {sd.regime.value}")
    if not eps > 0:
        raise RegimeError(f"eps must be positive, got {eps}")
    if eps * eps >= sd.phi_infinity * (1.0 - THRESHOLD_RTOL):
        raise RegimeError(
            f"eps^2 = {eps * eps:.6g} is not below Phi(inf) = {sd.phi_infinity:.6g}"
        )


def solve_eta(sd: SpectralData, eps: float, rtol: float = ROOT_RTOL) -> float:
    """Solve ``Phi(eta) = eps^2`` by bisection.

    ``Phi`` is strictly increasing from 0 to ``Phi(inf)``, so any bracket
    with a sign change contains the unique root. The bracket starts at
    ``[eps * A0 / (2 |beta|), 1]`` and is widened geometrically; bisection
    runs on ``log(eta)`` because the root may sit many decades away from 1.

    Raises
    ------
    RegimeError
        Not Generic, or ``eps^2`` not strictly below ``Phi(inf)``.
    BracketError
        The upper end of the bracket passes ``1e30``.
    ConvergenceError
        The relative residual ``|Phi - eps^2| / eps^2`` stays above ``rtol``.
    """
    _check_solvable(sd, eps)
    target = eps * eps
    lo = eps * math.sqrt(sd.a0) / (2.0 * math.sqrt(sd.beta_norm2))
    hi = 1.0
    if lo >= hi:
        lo, hi = hi, 2.0 * lo
    while phi(sd, lo) > target:
        lo *= 0.5
        if lo < 1e-300:
            raise BracketError("lower bracket underflow")
    while phi(sd, hi) < target:
        hi *= 2.0
        if hi > BRACKET_CAP:
            raise BracketError(f"bracket exceeded {BRACKET_CAP:g}")

    best, best_res = lo, abs(phi(sd, lo) - target)
    for _ in range(MAX_BISECTIONS):
        mid = math.sqrt(lo * hi)
        if not lo < mid < hi:
            break
        val = phi(sd, mid)
        res = abs(val - target)
        if res < best_res:
            best, best_res = mid, res
        if res <= rtol * target:
            return mid
        if val < target:
            lo = mid
        else:
            hi = mid
    if best_res <= rtol * target:
        return best
    raise ConvergenceError(
        f"bisection stalled at relative residual {best_res / target:.3e} (rtol {rtol:g})"
    )


def sigma_coefficient(sd: SpectralData) -> float:
    """Linear coefficient of the small-eps expansion, ``sqrt(sum a_j/lam_j / a0)``."""
    if sd.regime in (Regime.KERNEL, Regime.DEGENERATE):
        return 0.0
    if sd.regime is Regime.COMPLETE_STABILITY or sd.a0 <= 0:
        raise RegimeError("sigma is undefined when p_z lies in the range of K (a0 = 0)")
    return math.sqrt(float(np.sum(sd.weights / sd.mu)) / sd.a0)


def resolvent_norm(sd: SpectralData, eta: float) -> float:
    """``||(K + eta)^{-1} p_z||`` from the spectral decomposition."""
    return math.sqrt(sd.a0 / eta**2 + float(np.sum(sd.weights / (sd.mu + eta) ** 2)))


@dataclass(frozen=True)
class BoundResult:
    """Optimal error at one noise level.

    ``eta`` is None outside the solvable Generic range. ``sigma`` is None in
    the complete-stability regime, where ``A`` is the upper bound
    ``eps * |c|`` and ``upper_bound_only`` is set. ``saturated`` marks a
    Generic instance with ``eps^2 >= Phi(inf)``, where the data constraint
    is inactive and ``A = ||p_z||``.
    """

    eps: float
    eta: Optional[float]
    A: float
    A0: float
    sigma: Optional[float]
    asymptotic: float
    regime: Regime
    upper_bound_only: bool = False
    saturated: bool = False

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "eta": self.eta,
            "A": self.A,
            "A0": self.A0,
            "sigma": self.sigma,
            "asymptotic": self.asymptotic,
            "regime": self.regime.value,
            "upper_bound_only": self.upper_bound_only,
            "saturated": self.saturated,
        }


def compute_bound(sd: SpectralData, eps: float, rtol: float = ROOT_RTOL) -> BoundResult:
    eps = float(eps)
    if not eps >= 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")

    if sd.regime in (Regime.KERNEL, Regime.DEGENERATE):
        # f* = p_z / ||p_z|| has no sample energy; the trivial bound is attained
        a = math.sqrt(sd.pzz)
        return BoundResult(eps, None, a, a, 0.0, a, sd.regime)

    if sd.regime is Regime.COMPLETE_STABILITY:
        c_norm = float(np.linalg.norm(sd.pinv_beta()))
        a = eps * c_norm
        return BoundResult(eps, None, a, 0.0, None, a, sd.regime, upper_bound_only=True)

    a0 = math.sqrt(sd.a0)
    sigma = sigma_coefficient(sd)
    asym = (1.0 + sigma * eps) * a0
    if eps == 0.0:
        return BoundResult(eps, None, a0, a0, sigma, asym, sd.regime)
    if eps * eps >= sd.phi_infinity * (1.0 - THRESHOLD_RTOL):
        return BoundResult(eps, None, math.sqrt(sd.pzz), a0, sigma, asym, sd.regime,
                           saturated=True)
    eta = solve_eta(sd, eps, rtol)
    a = (eps * eps + eta) * resolvent_norm(sd, eta)
    return BoundResult(eps, eta, a, a0, sigma, asym, sd.regime)


def spectral_bound_squared(sd: SpectralData, eps: float, eta: float) -> float:
    """``A^2 = (1 + eps^2/eta)^2 a0 + (eps^2 + eta)^2 sum a_j / (lam_j + eta)^2``."""
    e2 = eps * eps
    return (1.0 + e2 / eta) ** 2 * sd.a0 + (e2 + eta) ** 2 * float(
        np.sum(sd.weights / (sd.mu + eta) ** 2)
    )


# -- extremal function -------------------------------------------------------


def span_norm(alpha: complex, gamma: np.ndarray, gram: GramData) -> float:
    """Norm of ``alpha p_z + sum_k gamma_k p_{z_k}`` from kernel inner products."""
    n2 = (
        abs(alpha) ** 2 * gram.pzz
        + 2.0 * (np.conj(alpha) * np.dot(gamma, gram.beta)).real
        + (gamma @ gram.G @ np.conj(gamma)).real
    )
    return math.sqrt(max(float(n2), 0.0))


def span_samples(alpha: complex, gamma: np.ndarray, gram: GramData) -> np.ndarray:
    """Values at ``z_1..z_n`` of ``alpha p_z + sum_k gamma_k p_{z_k}``."""
    return alpha * np.conj(gram.beta) + gram.G.T @ gamma


def span_target_value(alpha: complex, gamma: np.ndarray, gram: GramData) -> complex:
    """Value at ``z`` of ``alpha p_z + sum_k gamma_k p_{z_k}``."""
    return complex(alpha * gram.pzz + np.dot(gamma, gram.beta))


@dataclass(frozen=True)
class MaximizerRep:
    """Unnormalized extremal function ``u = alpha p_z + sum_k gamma_k p_{z_k}``.

    ``eta`` is 0 for the eps = 0 limit and ``inf`` when the maximizer is the
    normalized kernel section ``p_z / ||p_z||``.
    """

    alpha: complex
    gamma: np.ndarray
    norm_u: float
    eta: float
    eps: float

    def value_at_target(self, gram: GramData) -> float:
        return (span_target_value(self.alpha, self.gamma, gram) / self.norm_u).real

    def sample_values(self, gram: GramData) -> np.ndarray:
        return span_samples(self.alpha, self.gamma, gram) / self.norm_u


def build_maximizer(sd: SpectralData, gram: GramData, eps: float,
                    rtol: float = ROOT_RTOL) -> MaximizerRep:
    """Coefficients of the function attaining ``A_z(eps)``.

    Writing ``u = alpha p_z + sum gamma_k p_{z_k}`` and matching
    ``(K + eta) u = p_z`` gives ``alpha = 1/eta`` and
    ``(G + eta I) conj(gamma) = -beta / eta``. At ``eps = 0`` the extremal
    function is the projection of ``p_z`` onto ``ker K``, i.e. ``alpha = 1``,
    ``gamma = -conj(G^+ beta)``. When the data constraint is inactive
    (kernel regime, or ``eps^2 >= Phi(inf)``) it is ``p_z`` itself.

    Raises RegimeError in the complete-stability regime, where no extremal
    function is computed.
    """
    eps = float(eps)
    n = gram.n
    if sd.regime is Regime.COMPLETE_STABILITY:
        raise RegimeError("no extremal function in the complete-stability regime")
    if (
        sd.regime in (Regime.KERNEL, Regime.DEGENERATE)
        or eps * eps >= sd.phi_infinity * (1.0 - THRESHOLD_RTOL)
    ):
        return MaximizerRep(1.0 + 0j, np.zeros(n, dtype=complex), math.sqrt(gram.pzz),
                            math.inf, eps)
    if eps == 0.0:
        gamma = -np.conj(sd.pinv_beta())
        alpha = 1.0 + 0j
        return MaximizerRep(alpha, gamma, span_norm(alpha, gamma, gram), 0.0, eps)
    eta = solve_eta(sd, eps, rtol)
    alpha = complex(1.0 / eta)
    gamma = -np.conj(sd.resolvent_beta(eta)) / eta
    return MaximizerRep(alpha, gamma, span_norm(alpha, gamma, gram), eta, eps)


def evaluate_maximizer(rep: MaximizerRep, instance: ProblemInstance, zeta):
    """Normalized extremal function ``u(zeta) / ||u||``; broadcasts over ``zeta``."""
    zeta_a = np.asarray(zeta, dtype=complex)
    pts = np.asarray(instance.points, dtype=complex)
    val = rep.alpha * np.asarray(kernel_eval(instance.kernel, zeta_a, instance.target))
    sections = np.asarray(kernel_eval(instance.kernel, zeta_a[..., None], pts))
    val = val + sections @ rep.gamma
    out = val / rep.norm_u
    if np.ndim(out) == 0:
        return complex(out)
    return out
