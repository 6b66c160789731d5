"""
The cuspidal block of a type A root
===================================

Skew shapes on the contents 1..d index the simple modules over the block of
alpha_1 + ... + alpha_d.  This script builds them, resolves them, and prints
the graded Ext table between them.
"""

# %%
from klr.homology import cuspidal_resolution, cuspidal_resolution_prime, ext_against, shape_cartan, splitting_distance, verify_complex
from klr.modules import homogeneous, verify_module
from klr.shapes import skew_shapes, standard_tableaux

d = 3
cartan = shape_cartan(1, d)
shapes = skew_shapes(1, d)

# %% Every shape gives a module whose basis is its standard tableaux.
for lam in shapes:
    L = homogeneous(lam, cartan)
    words = [t.word for t in standard_tableaux(lam)]
    print(f"{str(lam):8} dim {L.dim}  words {words}  relations ok: {verify_module(L).ok}")

# %% Resolutions over the block with and without the central generator.
for lam in shapes:
    P1, P = cuspidal_resolution_prime(lam), cuspidal_resolution(lam)
    print(f"{str(lam):8} lengths {P1.length} / {P.length}  complexes: {verify_complex(P1).ok} {verify_complex(P).ok}")

# %% Ext between simples: one class in homological degree m, the number of row splittings
# separating the shapes; over the full block a second class appears in degree m + 1.
mods = {mu: homogeneous(mu, cartan) for mu in shapes}
for lam in shapes:
    for mu in shapes:
        m = splitting_distance(lam, mu)
        prime = ext_against(cuspidal_resolution_prime(lam), mods[mu])
        full = ext_against(cuspidal_resolution(lam), mods[mu])
        print(f"Ext({lam}, {mu}): m = {m}  prime {prime}  full {full}")
