"""
Signs in the Koszul resolution of B_n
=====================================

B_n has n commuting loops acting on the sign sequences.  The simple module
L(sigma) is resolved by a tensor product of one-loop complexes, and the sign on
each differential has to be the Koszul sign for the square of the differential
to vanish.
"""

# %%
from klr.homology import bn_resolution, ext_bn, format_signs, sign_sequences, verify_complex

n = 3

# %% The Koszul rule always squares to zero; the literal product of earlier signs
# survives only when every earlier sign is minus.
for s in sign_sequences(n):
    koszul = verify_complex(bn_resolution(s)).ok
    literal = verify_complex(bn_resolution(s, sign_rule="literal"))
    print(format_signs(s), "koszul", koszul, "literal", literal.ok, literal.failure or "")

# %% Ext(L(sigma), L(tau)) sits in degree equal to the number of differing signs.
sigma = (1, -1, 1)
for tau in sign_sequences(n):
    print(format_signs(sigma), "->", format_signs(tau), ext_bn(sigma, tau))
