"""Gram data and spectral decomposition of the sampling operator.

The sampling operator ``K f = sum_j f(z_j) p_{z_j}`` has finite rank and its
nonzero spectrum is that of the Gram matrix ``G``. If ``G v = lam v`` with
``|v| = 1``, the function ``e = sum_k conj(v_k) p_{z_k}`` is an eigenfunction
of ``K`` with ``||e||^2 = lam``, so ``p_z`` carries energy ``|v^H beta|^2 / lam``
along it. Whatever is left over lives in ``ker K``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError
from .kernels import KernelSpec, ProblemInstance, as_point, kernel_eval, validate_instance

TOL_ZERO = 1e-10
TOL_CLUSTER = 1e-8
EIG_RESIDUAL_TOL = 1e-10


class Regime(str, enum.Enum):
    GENERIC = "Generic"
    KERNEL = "KernelRegime"
    COMPLETE_STABILITY = "CompleteStability"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class GramData:
    """Kernel inner products of an instance.

    Attributes
    ----------
    G : (n, n) complex ndarray
        ``G[j, k] = p_{z_j}(z_k) = (p_{z_j}, p_{z_k})``.
    beta : (n,) complex ndarray
        ``beta[k] = p_{z_k}(z)``; the samples of ``p_z`` are ``conj(beta)``.
    pzz : float
        ``p(z, z) = ||p_z||^2``.
    """

    G: np.ndarray
    beta: np.ndarray
    pzz: float

    @property
    def n(self) -> int:
        return self.beta.shape[0]


def assemble_gram(kernel: KernelSpec, points, target) -> GramData:
    validate_instance(kernel, points, target)
    pts = np.array([as_point(p) for p in points], dtype=complex)
    z = as_point(target)
    # row j, column k -> p(z_k, z_j)
    G = np.asarray(kernel_eval(kernel, pts[None, :], pts[:, None]))
    G = 0.5 * (G + G.conj().T)
    beta = np.asarray(kernel_eval(kernel, z, pts))
    pzz = kernel_eval(kernel, z, z).real
    return GramData(G=G, beta=beta, pzz=float(pzz))


def gram_for(instance: ProblemInstance) -> GramData:
    return assemble_gram(instance.kernel, instance.points, instance.target)


def hermitian_eig(M):
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(w, V)`` with ``M @ V[:, i] = w[i] * V[:, i]``. Raises
    ConvergenceError if a residual exceeds ``1e-10 * ||M||``.
    """
    M = np.asarray(M, dtype=complex)
    w, V = np.linalg.eigh(M)
    order = np.argsort(w)[::-1]
    w, V = w[order], V[:, order]
    scale = max(np.linalg.norm(M, 2), np.finfo(float).tiny)
    resid = np.linalg.norm(M @ V - V * w, axis=0)
    if resid.size and resid.max() > EIG_RESIDUAL_TOL * scale:
        raise ConvergenceError(f"eigen residual {resid.max():.3e} exceeds tolerance")
    ortho = np.abs(V.conj().T @ V - np.eye(len(w))).max() if len(w) else 0.0
    if ortho > EIG_RESIDUAL_TOL:
        raise ConvergenceError(f"eigenvectors not orthonormal (defect {ortho:.3e})")
    return w, V


@dataclass(frozen=True)
class SpectralData:
    """Spectral picture of ``p_z`` relative to the sampling operator.

    ``lambdas``/``energies`` are the clustered distinct eigenvalues and the
    energies ``||P_j p_z||^2``. ``mu``/``weights`` hold the same data per
    eigenvector; all formulas downstream sum over these, so results do not
    depend on how eigenvalues were grouped.
    """

    lambdas: np.ndarray
    energies: np.ndarray
    a0: float
    clusters: tuple
    mu: np.ndarray
    weights: np.ndarray
    eigvals: np.ndarray
    eigvecs: np.ndarray
    beta: np.ndarray
    pzz: float
    regime: Regime
    merged: bool
    tol_zero: float = TOL_ZERO
    tol_cluster: float = TOL_CLUSTER

    @property
    def m(self) -> int:
        return len(self.lambdas)

    @property
    def n_kept(self) -> int:
        return len(self.mu)

    @property
    def beta_norm2(self) -> float:
        return float(np.vdot(self.beta, self.beta).real)

    @property
    def phi_infinity(self) -> float:
        """Limit of ``Phi`` at infinity, ``[p_z]^2 / ||p_z||^2``."""
        return float(np.dot(self.mu, self.weights)) / self.pzz

    def pinv_beta(self) -> np.ndarray:
        """``G^+ beta`` with the pseudo-inverse restricted to the kept spectrum."""
        V = self.eigvecs[:, : self.n_kept]
        return V @ ((V.conj().T @ self.beta) / self.mu)

    def resolvent_beta(self, eta: float) -> np.ndarray:
        """``(G + eta I)^{-1} beta`` with eigenvalues below the rank cut taken as 0."""
        V = self.eigvecs
        coef = V.conj().T @ self.beta
        shifted = np.full(len(self.eigvals), float(eta))
        shifted[: self.n_kept] += self.mu
        return V @ (coef / shifted)


def build_spectral_data(gram: GramData, tol_cluster: float = TOL_CLUSTER,
                        tol_zero: float = TOL_ZERO) -> SpectralData:
    w, V = hermitian_eig(gram.G)
    lam_max = max(w[0], 0.0) if len(w) else 0.0
    kept = w > tol_zero * lam_max if lam_max > 0 else np.zeros(len(w), dtype=bool)
    n_kept = int(kept.sum())  # w is sorted, so kept is a prefix
    mu = w[:n_kept].copy()
    proj = V[:, :n_kept].conj().T @ gram.beta
    weights = np.abs(proj) ** 2 / mu if n_kept else np.zeros(0)

    clusters = []
    for i in range(n_kept):
        if clusters and mu[clusters[-1][-1]] - mu[i] <= tol_cluster * lam_max:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    lambdas = np.array([mu[c].mean() for c in clusters])
    energies = np.array([weights[c].sum() for c in clusters])
    merged = any(len(c) > 1 for c in clusters)

    pzz = gram.pzz
    a0 = pzz - float(weights.sum())
    if a0 < 0:
        a0 = 0.0

    beta2 = float(np.vdot(gram.beta, gram.beta).real)
    if n_kept == 0:
        regime = Regime.DEGENERATE
    elif beta2 <= tol_zero * pzz:
        regime = Regime.KERNEL
    elif a0 <= tol_zero * pzz:
        regime = Regime.COMPLETE_STABILITY
    else:
        regime = Regime.GENERIC

    eigvals = w.copy()
    eigvals[n_kept:] = 0.0
    return SpectralData(
        lambdas=lambdas,
        energies=energies,
        a0=a0,
        clusters=tuple(tuple(c) for c in clusters),
        mu=mu,
        weights=weights,
        eigvals=eigvals,
        eigvecs=V,
        beta=gram.beta.copy(),
        pzz=pzz,
        regime=regime,
        merged=merged,
        tol_zero=tol_zero,
        tol_cluster=tol_cluster,
    )


def analyze(instance: ProblemInstance, **tols):
    """Convenience: Gram data and spectral data for an instance."""
    gram = gram_for(instance)
    return gram, build_spectral_data(gram, **tols)
