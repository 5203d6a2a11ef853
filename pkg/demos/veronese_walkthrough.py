"""Walk through every stage of the pipeline on the Veronese surface.

The Veronese is the row d=20, p=0: the plane embedded by all conics.  Each
step prints the number it produces so the chain from plane forms to the
normal-sheaf dimensions can be followed by eye.
"""

from cubicfold.arith import DEFAULT_Q
from cubicfold.hassett import discriminant, kuznetsov_numeric_class, self_intersection
from cubicfold.imageideal import degree_linear_normality_check, image_model
from cubicfold.normal import h0_normal_ambient, h0_normal_in_X, random_cubic
from cubicfold.poly import format_poly
from cubicfold.surface import Polarization, invariants, veronese

q = DEFAULT_Q
M = veronese(q)
P = Polarization(2)
inv = invariants(P)
print(f"H = {P}: H^2={inv.H2}, H.K={inv.HK}, chi(H)={inv.chiH}")

model = image_model(M, D=4)
print("Hilbert function h(1..3):", [model.quotient.hilbert(t) for t in (1, 2, 3)])
print("dim I_t for t=1..3:", [model.piece(t).dim for t in (1, 2, 3)])
print("normality check:", bool(degree_linear_normality_check(model, inv)))

print("minimal generators:")
for d, g in model.generator_polys:
    print(f"  degree {d}: {format_poly(g)}")

res = h0_normal_ambient(model)
print(f"h0(N_S/P5) = {res.dim} (stable over bounds {sorted(res.dims_by_bound)}: {res.stabilized})")

cubic = random_cubic(model, seed=1)
nx = h0_normal_in_X(res, cubic, model)
print(f"h0(N_S/X) = {nx} for a random cubic through S")
print(f"identity: {nx} == {res.dim} + {model.piece(3).dim} - 55 -> {nx == res.dim + model.piece(3).dim - 55}")

S2 = self_intersection(inv)
print(f"S^2 = {S2}, d = 3*{S2} - {inv.H2}^2 = {discriminant(S2, inv.H2)}")
print("Kuznetsov numeric class:", kuznetsov_numeric_class(inv.H2, inv.HK).value)
