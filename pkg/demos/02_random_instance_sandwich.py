# %% [markdown]
# A random Bergman instance, checked against independent bounds
#
# A Lagrangian dual gives upper bounds on A_z(eps), explicit trial functions
# give lower bounds. Both come from grid searches that never touch the root
# finder, so they make an honest check of the closed form.

# %%
import math

import numpy as np

from rkhs_continuation import ProblemInstance, analyze, bergman, compute_bound, sandwich
from rkhs_continuation.oracle import asymptotic_order_check

rng = np.random.default_rng(42)
r = 0.8 * np.sqrt(rng.uniform(size=5))
pts = r * np.exp(2j * np.pi * rng.uniform(size=5))
inst = ProblemInstance(bergman(), tuple(pts[:4]), pts[4])
gram, sd = analyze(inst)
print("regime", sd.regime.value, " eigenvalues", np.round(sd.lambdas, 4))
print("A(0) =", math.sqrt(sd.a0), " Phi(inf) =", sd.phi_infinity)

# %%
for eps in math.sqrt(sd.phi_infinity) * np.array([0.01, 0.1, 0.5]):
    rep = sandwich(sd, gram, eps)
    print(f"eps={eps:.4g}  lower={rep.lower:.12f}  A={rep.A:.12f}  upper={rep.upper:.12f}  ok={rep.passed}")

# %% [markdown]
# Small eps: A = (1 + sigma eps) A(0) + O(eps^2). Halving eps should cut the
# remainder roughly by four.

# %%
order = asymptotic_order_check(sd)
for e, R, q in zip(order.eps, order.remainders, order.ratios + [float("nan")]):
    print(f"eps={e:.3e}  R={R: .3e}  R(eps/2)/R(eps)={q:.3f}")
print("fitted slope", order.linear_coefficient, " sigma*A(0)", order.expected_linear)
