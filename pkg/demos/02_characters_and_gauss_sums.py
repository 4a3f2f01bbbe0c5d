# %% [markdown]
# Dirichlet characters modulo a prime
#
# Characters mod p are indexed by j = 0..p-2 through a primitive root g:
# chi_j(g^k) = e(jk/(p-1)).  Only even characters enter the dual moment;
# for p = 3 there is none besides the principal one, so the dual side vanishes.

# %%
from twisted_moment import enumerate_characters, gauss_sum, orthogonality_residual
from twisted_moment.characters import cosine_twisted_sum

for p in (3, 5, 7, 11, 13):
    fam = enumerate_characters(p)
    print(f"p = {p:2d}  g = {fam.generator}  even non-principal: {len(fam.even())}"
          f"  orthogonality residual {orthogonality_residual(p):.1e}")

# %% [markdown]
# |tau(chi)|^2 = p for every non-principal chi, and the cosine-twisted sum
# of conj(chi) equals tau(conj chi) exactly when chi is even.

# %%
for chi in enumerate_characters(13).characters[1:]:
    tau = gauss_sum(chi)
    c = cosine_twisted_sum(chi)
    print(f"j={chi.index:2d} parity {chi.parity:+d}  |tau|^2 = {abs(tau)**2:.12f}"
          f"  cos-sum {c.real:+.6f}{c.imag:+.6f}i")
