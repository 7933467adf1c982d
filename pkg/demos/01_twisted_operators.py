"""Build the twisted operator family on a small evaluation module.

The quadratic series assembles in partial-fraction form with exact rational
residues; its coefficients commute, and subtracting the untwisted family
leaves exactly the lowering currents.
"""

from fractions import Fraction

from bethe_gl2.betheop import (KMatrix, bethe_coefficient,
                               commutativity_check, irrep_bethe_image,
                               nilp_formula_check, universal_operator)
from bethe_gl2.gl2rep import EvalModule, WeightLabel

points = [Fraction(0), Fraction(1), Fraction(1, 2)]
module = EvalModule(3, points)
print(f"module: n = 3 at points {points}, dimension {module.dim}")

op = universal_operator(module, KMatrix.nilpotent())
print("\nW(u) coefficients (ascending):", [str(c) for c in op.w_poly.coeffs])
print("U_1 equals the total lowering current:",
      op.u[0] == module.generator_matrix(2, 1, 0))

plain = universal_operator(module, KMatrix.zero())
print("U_1 of the untwisted family vanishes:", plain.u[0].is_zero())

print("\nfirst-series coefficient B_{1,1} = -n * identity:",
      bethe_coefficient(module, 1, 1, KMatrix.zero()).data[0][0])

for kmat in (KMatrix.zero(), KMatrix.nilpotent()):
    result = commutativity_check(module, kmat, jmax=6)
    print(f"all coefficient brackets vanish ({kmat.label}):", result["pass"])

print("twist difference is the lowering current, strictly weight-lowering:",
      nilp_formula_check(module, jmax=6)["pass"])

print("\nminimal polynomials of the lowering generator on irreducibles:")
for lam1, lam2 in ((2, 0), (1, 1), (3, 1)):
    poly = irrep_bethe_image(WeightLabel(lam1, lam2))
    print(f"  ({lam1},{lam2}): {poly}")
