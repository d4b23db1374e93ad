# %% [markdown]
# One sample in the Hardy space
#
# The simplest instance: the Szego kernel on the unit disk, one sample at 0 and
# the target 1/2. How large can |f(1/2)| be when ||f|| <= 1 and |f(0)| <= eps?

# %%
import math

import numpy as np

from rkhs_continuation import ProblemInstance, analyze, build_maximizer, compute_bound, szego

inst = ProblemInstance(szego(), (0.0,), 0.5)
gram, sd = analyze(inst)
print("G =", gram.G, " beta =", gram.beta, " p(z,z) =", gram.pzz)
print("eigenvalues", sd.lambdas, " energies", sd.energies, " a0 =", sd.a0)

# %% [markdown]
# With exact data (eps = 0), f(0) = 0 forces f = zeta g and the answer is
# |1/2| ||p_{1/2}|| = 1/sqrt(3).

# %%
b = compute_bound(sd, 1e-3)
print("A(0)  =", b.A0, " vs 1/sqrt(3) =", 1 / math.sqrt(3))
print("sigma =", b.sigma, " vs sqrt(3) =", math.sqrt(3))

# %% [markdown]
# Noise eps = 0.1. The multiplier ratio eta has a closed form here.

# %%
eps = 0.1
b = compute_bound(sd, eps)
print("eta =", b.eta, " closed form", eps / (math.sqrt(3 * (1 - eps**2)) - eps))
print("A   =", b.A, " first-order", b.asymptotic)

rep = build_maximizer(sd, gram, eps)
print("extremal f = alpha p_z + gamma p_0 with alpha, gamma =", rep.alpha, rep.gamma)
print("f(1/2) =", rep.value_at_target(gram), " f(0) =", rep.sample_values(gram))

# %% [markdown]
# The whole curve. Past eps^2 = Phi(inf) = 3/4 the sample constraint stops
# binding and A sticks at ||p_z|| = 2/sqrt(3).

# %%
for e in np.linspace(0.0, 1.0, 11):
    r = compute_bound(sd, e)
    print(f"eps={e:4.2f}  A={r.A:.6f}  saturated={r.saturated}")
