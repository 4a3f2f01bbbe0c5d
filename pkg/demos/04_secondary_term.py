# %% [markdown]
# Where the residual comes from
#
# At large T the residual lhs - main - dual approaches
# pi (sqrt(q/p) + sqrt(p/q)).  The two halves have separate origins:
#
# * pi sqrt(q/p) is the residue of Gamma(w/2) at w = 0 picked up when the
#   contour is shifted past it: 4 pi H(0) zeta(0)^2 = pi with H(0) = 1.
# * pi sqrt(p/q) collects the small pieces: the pole correction that
#   separates F(0) from the moment, F1(0), F3(0), and the Taylor step that
#   replaces F2(0) by the cosine sum.

# %%
import math

from twisted_moment import ReciprocityInstance, verify_theorem
from twisted_moment.oracles import decomposition_check

for p, q in ((3, 5), (5, 3), (3, 7), (7, 11)):
    inst = ReciprocityInstance(p, q, 160.0)
    r = verify_theorem(inst)
    print(f"({p},{q})  residual / (sqrt(q/p)+sqrt(p/q)) = {r.normalized_residual:.5f}   pi = {math.pi:.5f}")

# %% [markdown]
# Split the pi sqrt(p/q) half into its pieces at one instance.  Everything
# here is computed independently; only the bookkeeping is shared.

# %%
inst = ReciprocityInstance(5, 3, 160.0)
led = decomposition_check(inst)
pc = led.pole_correction.real
gap = led.f2_0_exact - led.f2_0_cos_sum
pieces = {"pole correction": pc, "F1(0)": led.f1_0, "F3(0)": led.f3_0, "F2(0) - cos sum": gap}
for name, v in pieces.items():
    print(f"{name:>18s}  {v:+.6f}")
print(f"{'sum':>18s}  {sum(pieces.values()):+.6f}   pi sqrt(p/q) = {math.pi * math.sqrt(5 / 3):.6f}")
