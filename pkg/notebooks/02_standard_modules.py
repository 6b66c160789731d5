"""
Standard modules and decomposition numbers in A3
================================================

Irreducibles are labelled by root partitions.  Proper standard modules have
unitriangular decomposition rows, and summing the squares of their graded
dimensions recovers the graded dimension of the algebra.
"""

# %%
from klr.homology import dimension_report
from klr.modules import decompose, irreducible, proper_standard
from klr.roots import lex_order, root_partitions, type_a

order = lex_order(type_a(3))
alpha = (1, 2, 1)

# %% Characters of the irreducibles.
for pi in root_partitions(alpha, order):
    print(pi.label(), irreducible(pi).character())

# %% Decomposition matrix: rows are proper standard modules.
parts = root_partitions(alpha, order)
for pi in parts:
    row = decompose(proper_standard(pi).character(), order)
    print(f"{pi.label():16}", "  ".join(f"{s.label()}:{c}" for s, c in row.items()))

# %% Graded dimension two ways, to degree 8.
rep = dimension_report(alpha, order, 8)
print("basis side   ", rep.basis_side)
print("standard side", rep.standard_side)
print("equal:", rep.equal)
