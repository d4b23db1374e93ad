# %% [markdown]
# Estimating f(z) from noisy samples
#
# A linear estimator sum c_j d_j has worst-case error E(c). The ridge
# coefficients c = (G + eta I)^{-1} beta achieve E = A_z(eps), and nothing does
# better.

# %%
import math

import numpy as np

from rkhs_continuation import (
    ProblemInstance,
    analyze,
    compute_bound,
    optimal_coefficients,
    szego,
    worst_case_error,
)

pts = (0.2, -0.3 + 0.4j, 0.5j, -0.6)
inst = ProblemInstance(szego(), pts, 0.7 + 0.1j)
gram, sd = analyze(inst)
eps = 0.05

res = optimal_coefficients(sd, gram, eps)
print("c =", np.round(res.c, 5))
print("E(c) =", res.E, " A_z(eps) =", compute_bound(sd, eps).A)

# %% [markdown]
# Competitors: plain interpolation (eps ignored), zero, and random nudges.

# %%
interp = np.linalg.solve(gram.G, gram.beta)
print("interpolation E =", worst_case_error(gram, interp, eps))
print("zero          E =", worst_case_error(gram, np.zeros(gram.n), eps), "= ||p_z|| =", math.sqrt(gram.pzz))
rng = np.random.default_rng(0)
nudges = [worst_case_error(gram, res.c + 1e-2 * rng.standard_normal(gram.n), eps) for _ in range(200)]
print("best of 200 nudged E =", min(nudges))

# %% [markdown]
# Run the estimator on an actual function, f(zeta) = sin(zeta) / ||sin||.

# %%
coef = np.array([(-1) ** k / math.factorial(2 * k + 1) for k in range(15)])
norm = math.sqrt(np.sum(coef**2))


def f(zeta):
    return np.sin(zeta) / norm


noise = rng.standard_normal(gram.n) + 1j * rng.standard_normal(gram.n)
data = f(np.array(pts)) + eps * noise / np.linalg.norm(noise)
estimate = res.c @ data
print("f(z) =", f(inst.target), " estimate =", estimate, " error =", abs(estimate - f(inst.target)), "<=", res.E)
