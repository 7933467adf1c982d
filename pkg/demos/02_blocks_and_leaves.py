"""Spectral decomposition: deformed blocks over Q, then eigenleaves.

Block dimensions follow the product formula (string length times tableau
count); inside a block the joint family splits numerically into leaves,
each carrying a nilpotent whose powers express every coefficient.
"""

import mpmath

from bethe_gl2.betheop import KMatrix
from bethe_gl2.gl2rep import EvalModule, syt_count
from bethe_gl2.spectral import (deformed_isotypical_decomposition,
                                eigenleaf_decomposition, leaf_operator,
                                triangular_block_basis)

module = EvalModule(3, [0, 1, 2])
blocks = deformed_isotypical_decomposition(module, KMatrix.nilpotent())

for block in blocks:
    w = block.weight
    print(f"block ({w.lam1},{w.lam2}): eigenvalue {block.eigenvalue}, "
          f"dim {block.dim} = (d+1) * #SYT = {w.d + 1} * {syt_count(w)}")
    _, basis_report = triangular_block_basis(block)
    print("  unipotent triangular basis over the plain component:",
          basis_report["pass"])
    for leaf in eigenleaf_decomposition(block, 128):
        op = leaf_operator(leaf)
        phi = {j: mpmath.nstr(v, 8) for j, v in leaf.phi.items()}
        print(f"  leaf dim {leaf.dim}, eigenvalues {phi}")
        print(f"    coefficients of U_i in powers of the nilpotent "
              f"(exact: {op.exact}):")
        for i, row in enumerate(op.coeffs, start=1):
            printable = [str(c) if hasattr(c, "denominator")
                         else mpmath.nstr(c, 8) for c in row]
            print(f"      U_{i}: {printable}")
