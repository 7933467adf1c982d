"""Graded characters: brute-force counting against the closed forms.

The Molien-style count averages permutation traces over cycle types; the
closed forms are finite products of pochhammer factors.  The quotient
algebra's character factors through the truncated-ring character and
coincides with the module character at matching sizes.
"""

from bethe_gl2.gl2rep import (brute_isotypical_character,
                              char_isotypical_closed,
                              molien_graded_weight_dimension)
from bethe_gl2.olambda import (character_nilpotent_ring, character_olambda,
                               monomial_count_character)

print("graded multiplicities of the invariant weight spaces (n = 3):")
for m in range(4):
    row = [molien_graded_weight_dimension(3, m, j) for j in range(6)]
    print(f"  weight (3-{m},{m}):", row)

print("\nbrute vs closed isotypic characters:")
for n, k in ((2, 1), (3, 1), (4, 2), (5, 2)):
    brute = brute_isotypical_character(n, k, 10)
    closed = char_isotypical_closed(n, k, 10)
    print(f"  n={n}, k={k}: agree to q^10: {brute == closed}")

print("\nquotient algebra characters at (k, d) = (1, 2):")
full, b_free = character_olambda(1, 2, 8)
print("  full:       ", full)
print("  b-free part:", b_free)
print("  factorization through the truncated ring:",
      full == character_nilpotent_ring(2, 8) * b_free)
print("  equals the direct monomial count:",
      full == monomial_count_character(1, 2, 8))
print("  equals the module character at n = 2k+d = 4:",
      full == char_isotypical_closed(4, 1, 8))
