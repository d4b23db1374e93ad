# %% [markdown]
# When samples say nothing: the Paley-Wiener kernel regime
#
# The sinc kernel sin(pi d)/(pi d) vanishes at the nonzero integers, so samples at
# -2, -1, 1, 2 carry no information about f(0). A_0(eps) = ||p_0|| = 1 for every eps.

# %%
import numpy as np

from rkhs_continuation import ProblemInstance, analyze, compute_bound, paley_wiener

inst = ProblemInstance(paley_wiener(), (-2.0, -1.0, 1.0, 2.0), 0.0)
gram, sd = analyze(inst)
print("beta =", gram.beta, " regime", sd.regime.value)
for eps in (0.0, 0.1, 10.0):
    print(eps, compute_bound(sd, eps).to_dict())

# %% [markdown]
# Move the target off the lattice and the samples start to matter again.

# %%
for target in (0.0, 0.1, 0.5, 1.5):
    inst = ProblemInstance(paley_wiener(), (-2.0, -1.0, 1.0, 2.0), target)
    _, sd = analyze(inst)
    b = compute_bound(sd, 0.01)
    print(f"target={target:3.1f}  regime={sd.regime.value:13s}  A(0)={b.A0:.4f}  A(0.01)={b.A:.4f}")

# %% [markdown]
# Halving the bandwidth puts the zeros of the kernel at even integers, so the
# samples at +-1 become informative.

# %%
inst = ProblemInstance(paley_wiener(0.5), (-2.0, -1.0, 1.0, 2.0), 0.0)
_, sd = analyze(inst)
print(sd.regime.value, np.round(sd.energies, 4), compute_bound(sd, 0.01).A)
