"""Brute-force cross-checks for ``A_z(eps)``.

The upper side minimizes the Lagrangian dual bound

    Re f(z) <= 1/2 ((mu + nu K)^{-1} p_z, p_z) + 1/2 (mu + nu eps^2)

over a grid of multipliers ``mu > 0, nu >= 0``. The lower side scales trial
resolvents ``(K + eta')^{-1} p_z`` into the feasible set, solving each one
directly from the Gram matrix. Neither side calls the eta root finder.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .continuation import compute_bound
from .errors import RegimeError
from .spectral import GramData, Regime, SpectralData

DEFAULT_DUAL_SPAN = 1e4
DEFAULT_ETA_SPAN = 1e12


def dual_value(sd: SpectralData, eps: float, mu, nu):
    """Dual bound at multipliers ``(mu, nu)``; broadcasts."""
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    resolvent = sd.a0 / mu + np.sum(
        sd.weights / (mu[..., None] + nu[..., None] * sd.mu), axis=-1
    )
    return 0.5 * resolvent + 0.5 * (mu + nu * eps * eps)


def dual_grid(scale: float, num: int = 100, span: float = DEFAULT_DUAL_SPAN) -> np.ndarray:
    """Log-spaced ``(mu, nu)`` pairs over ``[scale/span, scale*span]^2``, plus ``nu = 0``."""
    axis = scale * np.logspace(-np.log10(span), np.log10(span), num)
    mu, nu = np.meshgrid(axis, np.concatenate(([0.0], axis)), indexing="ij")
    return np.column_stack([mu.ravel(), nu.ravel()])


def dual_upper_bound(sd: SpectralData, eps: float, grid) -> float:
    grid = np.asarray(grid, dtype=float).reshape(-1, 2)
    if grid.size == 0:
        raise ValueError("empty multiplier grid")
    if np.any(grid[:, 0] <= 0) or np.any(grid[:, 1] < 0):
        raise ValueError("multipliers must satisfy mu > 0, nu >= 0")
    return float(np.min(dual_value(sd, eps, grid[:, 0], grid[:, 1])))


def refined_dual_upper_bound(sd: SpectralData, eps: float, num: int = 100,
                             levels: int = 8) -> float:
    """Dual bound minimized on a log grid, then on successively zoomed grids.

    Each level keeps the incumbent, so the result never increases with
    ``levels``.
    """
    scale = math.sqrt(sd.pzz)
    grid = dual_grid(scale, num)
    vals = dual_value(sd, eps, grid[:, 0], grid[:, 1])
    i = int(np.argmin(vals))
    best, (bmu, bnu) = float(vals[i]), grid[i]
    half = math.log(DEFAULT_DUAL_SPAN)
    for _ in range(levels):
        half *= 8.0 / num
        lm = np.log(bmu) + np.linspace(-half, half, num)
        mus = np.exp(lm)
        if bnu > 0:
            nus = np.exp(np.log(bnu) + np.linspace(-half, half, num))
        else:
            nus = scale * np.exp(np.linspace(-math.log(DEFAULT_DUAL_SPAN), 0.0, num))
        nus = np.concatenate(([0.0], nus))
        M, N = np.meshgrid(mus, nus, indexing="ij")
        vals = dual_value(sd, eps, M.ravel(), N.ravel())
        j = int(np.argmin(vals))
        if vals[j] < best:
            best, bmu, bnu = float(vals[j]), M.ravel()[j], N.ravel()[j]
    return best


def _trial_value(gram: GramData, eps: float, eta: float) -> float:
    """Feasible value from the scaled trial resolvent ``(K + eta)^{-1} p_z``."""
    if math.isinf(eta):
        # u = p_z
        norm = math.sqrt(gram.pzz)
        seminorm = float(np.linalg.norm(gram.beta))
        value = gram.pzz
    else:
        n = gram.n
        # u = alpha p_z + sum gamma_k p_{z_k}, (G + eta) conj(gamma) = -beta / eta
        alpha = 1.0 / eta
        gamma = np.conj(np.linalg.solve(gram.G + eta * np.eye(n), -gram.beta / eta))
        norm2 = (
            alpha * alpha * gram.pzz
            + 2.0 * alpha * np.dot(gamma, gram.beta).real
            + (gamma @ gram.G @ np.conj(gamma)).real
        )
        norm = math.sqrt(max(float(norm2), 0.0))
        samples = alpha * np.conj(gram.beta) + gram.G.T @ gamma
        seminorm = float(np.linalg.norm(samples))
        value = (alpha * gram.pzz + np.dot(gamma, gram.beta)).real
    if norm == 0.0:
        return 0.0
    t = 1.0 / norm
    if seminorm > 0:
        t = min(t, eps / seminorm)
    return t * float(value)


def primal_lower_bound(gram: GramData, eps: float, eta_grid) -> float:
    """Best feasible value over trial resolvents at the given ``eta'`` values.

    ``math.inf`` in the grid stands for the kernel section ``p_z`` itself.
    """
    etas = np.asarray(list(eta_grid), dtype=float)
    if np.any(etas <= 0):
        raise ValueError("eta grid must be positive")
    return max(_trial_value(gram, eps, e) for e in etas)


def refined_primal_lower_bound(gram: GramData, eps: float, num: int = 200,
                               levels: int = 8) -> float:
    """Primal bound on a wide log grid of ``eta'``, then zoomed around the best."""
    lam = max(float(np.linalg.eigvalsh(gram.G)[-1]), gram.pzz)
    half = math.log(DEFAULT_ETA_SPAN)
    etas = lam * np.exp(np.linspace(-half, half, num))
    vals = [_trial_value(gram, eps, e) for e in etas]
    i = int(np.argmax(vals))
    best, beta_ = vals[i], etas[i]
    inf_val = _trial_value(gram, eps, math.inf)
    if inf_val > best:
        best, beta_ = inf_val, etas[-1]
    for _ in range(levels):
        half *= 8.0 / num
        etas = beta_ * np.exp(np.linspace(-half, half, num))
        vals = [_trial_value(gram, eps, e) for e in etas]
        j = int(np.argmax(vals))
        if vals[j] > best:
            best, beta_ = vals[j], etas[j]
    return best


@dataclass(frozen=True)
class SandwichReport:
    lower: float
    upper: float
    A: float
    gap: float
    passed: bool
    upper_bound_only: bool = False

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "A": self.A,
            "gap": self.gap,
            "pass": self.passed,
            "upper_bound_only": self.upper_bound_only,
        }


def sandwich(sd: SpectralData, gram: GramData, eps: float, A: float | None = None,
             rel_gap: float = 1e-3, num: int = 100, levels: int = 8) -> SandwichReport:
    """Bracket ``A`` between the refined primal and dual bounds.

    Passes when ``lower <= A <= upper`` (each within ``1e-9 * upper``) and
    the gap is at most ``rel_gap * A``. For complete-stability instances
    ``A`` is only an upper bound, so just ``lower <= A`` is required.
    """
    bound_only = sd.regime is Regime.COMPLETE_STABILITY
    if A is None:
        A = compute_bound(sd, eps).A
    lower = refined_primal_lower_bound(gram, eps, num=2 * num, levels=levels)
    upper = refined_dual_upper_bound(sd, eps, num=num, levels=levels)
    tol = 1e-9 * max(upper, A)
    if bound_only:
        ok = lower <= A + tol
    else:
        ok = lower <= A + tol and A <= upper + tol and (upper - lower) <= rel_gap * A + tol
    return SandwichReport(lower, upper, A, upper - lower, bool(ok), bound_only)


@dataclass(frozen=True)
class OrderReport:
    """Remainders ``R(eps) = A(eps) - (1 + sigma eps) A(0)`` on a halving sequence."""

    eps: list
    remainders: list
    ratios: list
    linear_coefficient: float
    expected_linear: float
    passed: bool
    threshold: float = 0.35
    max_eps: float = 1e-2
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "eps": list(self.eps),
            "remainders": list(self.remainders),
            "ratios": list(self.ratios),
            "linear_coefficient": self.linear_coefficient,
            "expected_linear": self.expected_linear,
            "pass": self.passed,
        }


def halving_sequence(start: float = 1e-2, count: int = 8) -> list:
    return [start * 0.5**k for k in range(count)]


def asymptotic_order_check(sd: SpectralData, eps_sequence=None, threshold: float = 0.35,
                           max_eps: float = 1e-2) -> OrderReport:
    """Test that ``A(eps) - (1 + sigma eps) A(0)`` is second order in eps.

    Consecutive ratios ``|R(eps/2) / R(eps)|`` must not exceed ``threshold``
    whenever the larger eps is at most ``max_eps``. The linear coefficient
    is also estimated as the eps -> 0 intercept of ``(A(eps) - A0)/eps``
    and reported next to ``sigma * A0``.
    """
    if sd.regime is Regime.COMPLETE_STABILITY:
        raise RegimeError("the small-eps expansion needs a0 > 0")
    eps_seq = sorted(halving_sequence() if eps_sequence is None else eps_sequence, reverse=True)
    results = []
    for e in eps_seq:
        res = compute_bound(sd, e)
        if res.saturated:
            raise RegimeError(f"eps = {e:g} is outside the solvable range")
        results.append(res)
    a0 = results[0].A0
    sigma = results[0].sigma
    R = [r.A - (1.0 + sigma * r.eps) * a0 for r in results]
    ratios = []
    for k in range(1, len(R)):
        ratios.append(0.0 if R[k - 1] == 0.0 else abs(R[k] / R[k - 1]))
    passed = all(
        ratio <= threshold for ratio, e in zip(ratios, eps_seq[:-1]) if e <= max_eps
    )
    eps_arr = np.array([r.eps for r in results])
    slopes = np.array([(r.A - a0) / r.eps for r in results])
    # (A(eps) - A0)/eps = sigma*A0 + O(eps): intercept of a low-order fit
    deg = min(2, len(results) - 1)
    linear = float(np.polyfit(eps_arr, slopes, deg)[-1]) if deg > 0 else float(slopes[0])
    return OrderReport(list(eps_seq), R, ratios, float(linear), sigma * a0, bool(passed),
                       threshold, max_eps)
