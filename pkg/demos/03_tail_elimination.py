"""The staged tail elimination and the operator coefficients it produces.

Two monic ansatz polynomials carry 2d unknown nilpotent-weighted tail
coefficients; the Wronskian conditions determine them as polynomials in the
free coefficients.  The smallest case solves by hand to ft*b = b and
gt*b = -b/3; larger cases need the sweep but stay exact.
"""

from bethe_gl2.olambda import (build_system, eliminate,
                               universal_operator_data, wronski_map)

ansatz, system = build_system(0, 1)
print("ansatz f(u):", ansatz.f_poly)
print("ansatz g(u):", ansatz.g_poly)
print("tail equations:")
for eq in system.equations:
    print("  ", eq, "= 0")

result = eliminate(0, 1)
print("\nsolved f-tail:", result.phi[1])
print("solved g-tail:", result.psi[1])

data = universal_operator_data(0, 1)
print("\nWronskian after substitution:", data.wronskian)
print("derivative-pair Wronskian:", data.wr_deriv)
print("F_11 (= 2k+d):", data.f1[0])
print("F_21 (= b):", data.f2[0])
print("image of sigma_1:", wronski_map(0, 1)[0])

print("\nlarger case (k, d) = (1, 2):")
result = eliminate(1, 2)
print(f"converged in {result.sweeps} sweeps")
for i in (1, 2):
    print(f"  f-tail {i}:", result.phi[i])
    print(f"  g-tail {i}:", result.psi[i])
