"""Spectral layer: blocks, triangular bases, leaves, leaf operators,
singular matching, and the polynomial-pair roundtrip."""

from fractions import Fraction

import mpmath
import pytest

from bethe_gl2.errors import GenericityError
from bethe_gl2.gl2rep import syt_count
from bethe_gl2.linalg import rank
from bethe_gl2.spectral import (block_eigenvalue, leaf_from_polynomials,
                                numeric_leaf_scalars,
                                singular_spectrum_match,
                                triangular_block_basis)
from bethe_gl2.unipoly import UniPoly

from conftest import blocks_for, leaves_for, module_for


def test_block_dimensions_n2():
    blocks = blocks_for([0, 1])
    assert [(b.weight.lam1, b.weight.lam2, b.dim, b.eigenvalue)
            for b in blocks] == [(2, 0, 3, 0), (1, 1, 1, 2)]


def test_block_dimensions_n3():
    blocks = blocks_for([0, 1, 2])
    assert [(b.weight.lam1, b.weight.lam2, b.dim, b.eigenvalue)
            for b in blocks] == [(3, 0, 4, 0), (2, 1, 4, 3)]


def test_block_single_site():
    blocks = blocks_for([0])
    assert [(b.weight.lam1, b.weight.lam2, b.dim) for b in blocks] == \
        [(1, 0, 2)]


def test_blocks_exhaust_space_up_to_n5():
    for n in range(1, 6):
        blocks = blocks_for(list(range(n)))
        assert sum(b.dim for b in blocks) == 2 ** n
        for b in blocks:
            assert b.dim == (b.weight.d + 1) * syt_count(b.weight)


def test_plain_blocks_are_weight_compatible_eigenspaces():
    for b in blocks_for([0, 1, 2], "zero"):
        basis, report = triangular_block_basis(b)
        assert report["pass"]
        # every basis vector lives in a single weight space
        for j in range(basis.cols):
            weights = {module_for([0, 1, 2]).basis[i].bit_count()
                       for i, x in enumerate(basis.column(j)) if x != 0}
            assert len(weights) == 1


def test_triangular_basis_deformed():
    module = module_for([0, 1])
    for block in blocks_for([0, 1]):
        basis, report = triangular_block_basis(block)
        assert report["pass"]
        assert basis.cols == block.dim
        assert rank(basis) == block.dim
    # the singlet leaf picks up a strictly lower-weight correction
    singlet_block = blocks_for([0, 1])[1]
    basis, _ = triangular_block_basis(singlet_block)
    column = basis.column(0)
    weights = {module.basis[i].bit_count()
               for i, x in enumerate(column) if x != 0}
    assert 1 in weights and weights - {1} <= {2}


def test_triangular_basis_n3():
    for block in blocks_for([0, 1, 2]):
        basis, report = triangular_block_basis(block)
        assert report["pass"]
        assert basis.cols == block.dim


def test_leaf_counts_and_dims():
    for points in ([0], [0, 1], [0, 1, 2], [0, 1, 2, 3]):
        blocks = blocks_for(points)
        for index, block in enumerate(blocks):
            leaves = [leaf for leaf, _ in leaves_for(points, index)]
            assert len(leaves) == syt_count(block.weight)
            for leaf in leaves:
                assert leaf.dim == block.weight.d + 1


def test_leaf_count_totals():
    # total leaf count is the number of multiplicity vectors, and leaves
    # weighted by their string lengths exhaust the module
    for points in ([0, 1], [0, 1, 2], [0, 1, 2, 3]):
        blocks = blocks_for(points)
        total_leaves = 0
        total_dim = 0
        for index, block in enumerate(blocks):
            pairs = leaves_for(points, index)
            total_leaves += len(pairs)
            total_dim += sum(leaf.dim for leaf, _ in pairs)
        n = len(points)
        assert total_leaves == sum(
            syt_count(block.weight) for block in blocks)
        assert total_dim == 2 ** n


def test_leaf_operator_structure():
    # lam=(1,1), n=2: one-dimensional leaf, c20 = 1*(2-1+1) = 2
    (leaf, op), = leaves_for([0, 1], 1)
    assert op.coeffs == [[Fraction(0)], [Fraction(2)]]
    assert op.exact

    # lam=(2,0), n=2: c20 = 0, U1 -> N exactly
    (leaf, op), = leaves_for([0, 1], 0)
    assert op.coeffs[0] == [0, 1, 0]
    assert op.coeffs[1][0] == 0
    assert op.exact


def test_leaf_nilpotency_residuals():
    for points in ([0, 1], [0, 1, 2]):
        for index in range(len(blocks_for(points))):
            for leaf, op in leaves_for(points, index):
                tol = mpmath.mpf(2) ** (-leaf.precision // 2)
                assert leaf.nilpotency_residual < tol * 100


def test_leaf_scalar_part_equals_block_eigenvalue():
    for points in ([0, 1], [0, 1, 2]):
        blocks = blocks_for(points)
        for index, block in enumerate(blocks):
            if module_for(points).n < 2:
                continue
            for leaf, op in leaves_for(points, index):
                c20 = op.coeffs[1][0]
                expected = block_eigenvalue(block.weight)
                if isinstance(c20, Fraction):
                    assert c20 == expected
                else:
                    assert abs(c20 - mpmath.mpmathify(expected)) < 1e-30


def test_singular_spectrum_match():
    for points in ([0], [0, 1], [0, 1, 2]):
        report = singular_spectrum_match(module_for(points), 128, seed=2)
        assert report["pass"], report["failures"]


def test_roundtrip_exact_rational_points():
    # spec example: F0 = u, G0 = u^2 + 1 gives Wr = u^2 - 1, points +-1
    result = leaf_from_polynomials(UniPoly([0, 1]), UniPoly([1, 0, 1]))
    assert result.mode == "exact"
    assert sorted(result.points) == [Fraction(-1), Fraction(1)]
    assert result.match_count == 1
    assert result.target_scalars == [Fraction(2)]


def test_roundtrip_exact_k0():
    # G0' = 3u(u - 2/3) has rational roots
    result = leaf_from_polynomials(UniPoly([1]), UniPoly([0, 0, -1, 1]))
    assert result.mode == "exact"
    assert sorted(result.points) == [Fraction(0), Fraction(2, 3)]
    assert result.match_count == 1


def test_roundtrip_numeric_mode():
    result = leaf_from_polynomials(UniPoly([1]), UniPoly([1, 2, -3, 1]))
    assert result.mode == "numeric"
    assert result.match_count == 1


def test_roundtrip_degenerate_pair():
    with pytest.raises(GenericityError):
        leaf_from_polynomials(UniPoly([0, 0, 1]), UniPoly([0, 0, 0, 1]))


def test_roundtrip_complex_roots_rejected():
    # Wr(1, u^3 + 3u) = 3(u^2 + 1) has roots +-i
    with pytest.raises(GenericityError):
        leaf_from_polynomials(UniPoly([1]), UniPoly([0, 3, 0, 1]))


def test_numeric_leaf_scalars_against_exact():
    # integer points through the numeric pipeline agree with exact leaves
    points = [Fraction(0), Fraction(1)]
    entries = numeric_leaf_scalars([mpmath.mpf(0), mpmath.mpf(1)], 128)
    got = sorted((e["dim"], [float(x.real if hasattr(x, "real") else x)
                             for x in e["scalars"]]) for e in entries)
    assert [g[0] for g in got] == [1, 3]
    exact = []
    for index, block in enumerate(blocks_for([0, 1])):
        for leaf, op in leaves_for([0, 1], index):
            exact.append((leaf.dim, [float(c) for c in op.scalar_parts()]))
    for (dim_a, vals_a), (dim_b, vals_b) in zip(got, sorted(exact)):
        assert dim_a == dim_b
        for a, b in zip(vals_a, vals_b):
            assert abs(a - b) < 1e-25
