"""
Icosahedral symmetry inside PGL2 of a small number field
========================================================

Builds the A5 matrices over Q(i, sqrt5), checks the relations, then
twists by the Galois involution of sqrt5 to get an S5.
"""
from quadjordan.constructions import (a5_group, a5_lifts, builtin_witness,
                                      s5_twisted_group, square_wreath)
from quadjordan.groupcore import jordan_constant, recognize
from quadjordan.projgroup import mat_mul, mat_pow, scalar_of, trace_sq_over_det

w = builtin_witness("Q(i)")
A, C = a5_lifts(w)

# A^2, C^5 and (CA)^3 are scalar matrices, so they die in PGL2
for label, M in (("A^2", mat_pow(A, 2)), ("C^5", mat_pow(C, 5)), ("(CA)^3", mat_pow(mat_mul(C, A), 3))):
    print(label, "=", scalar_of(M).to_expr(), "* I")

G = a5_group(w)
print("closure order:", G.order, "recognized as", recognize(G))
print("J(A5) =", jordan_constant(G).constant)

# the order-5 element remembers which square root of 5 it came from
gens = [G.elements[i] for i in range(G.order) if G.element_order(i) == 5]
print("tr^2/det on order-5 elements:", {trace_sq_over_det(g).to_expr() for g in gens})

S = s5_twisted_group(w)
print("twisted group:", S.order, recognize(S), "J =", jordan_constant(S).constant)

W = square_wreath(G)
print("wreath square order", W.order, "J =", jordan_constant(W).constant)  # about a second
