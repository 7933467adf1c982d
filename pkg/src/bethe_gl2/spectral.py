"""Spectral decompositions of the twisted Bethe family on evaluation modules.

Two layers: deformed isotypic blocks are exact generalized eigenspaces of
the quadratic coefficient over Q; the splitting of a block into eigenleaves,
whose joint eigenvalues are generically irrational, runs at explicit mpmath
precision with escalation.  Leaf data can be snapped back to rationals when
a theorem guarantees rationality.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .betheop import KMatrix, UniversalOperator, universal_operator
from .errors import (GenericityError, MatchCountError,
                     PrecisionInsufficientError, TheoremViolationError)
from .gl2rep import EvalModule, WeightLabel, singular_subspace, syt_count
from .linalg import (Matrix, charpoly, generalized_eigenspace, kernel_basis,
                     rref, same_row_space)
from .numeric import (default_tolerance, joint_split_mp,
                      joint_generalized_eigenspaces, lstsq_mp,
                      snap_to_rational, to_mp, with_precision_escalation)
from .unipoly import UniPoly, is_squarefree, poly_wronskian


def weight_labels(n):
    return [WeightLabel(n - k, k) for k in range(n // 2 + 1)]


def block_eigenvalue(weight: WeightLabel) -> Fraction:
    """Central character value k(n-k+1) of the quadratic coefficient."""
    return Fraction(weight.k * (weight.n - weight.k + 1))


def _column_pivots(basis: Matrix):
    pivots = []
    for j in range(basis.cols):
        col = basis.column(j)
        pivots.append(next(i for i, x in enumerate(col) if x != 0))
    return pivots


def restrict_exact(mat: Matrix, basis: Matrix, pivots) -> Matrix:
    """Matrix of mat on the invariant span of basis columns, exactly.

    Columns of basis are reduced-echelon, so the pivot rows of mat*basis are
    the coordinates; invariance is verified exactly.
    """
    image = mat * basis
    restricted = Matrix([[image.data[p][j] for j in range(basis.cols)]
                         for p in pivots])
    if basis * restricted != image:
        raise TheoremViolationError("subspace is not invariant")
    return restricted


class IsotypicBlock:
    """Deformed isotypic component of an evaluation module."""

    def __init__(self, module, kmat, weight, basis):
        self.module = module
        self.kmat = kmat
        self.weight = weight
        self.eigenvalue = block_eigenvalue(weight)
        self.basis = basis
        self.pivots = _column_pivots(basis)
        self._op = None
        self._residues_restricted = None
        self._u_restricted = None

    @property
    def dim(self):
        return self.basis.cols

    @property
    def operator(self) -> UniversalOperator:
        if self._op is None:
            self._op = universal_operator(self.module, self.kmat)
        return self._op

    def _residues(self):
        if self._residues_restricted is None:
            self._residues_restricted = [
                restrict_exact(res, self.basis, self.pivots)
                for res in self.operator.series.residues]
        return self._residues_restricted

    def u_restricted(self):
        """Restrictions of U_1..U_n to the block, exact."""
        if self._u_restricted is None:
            n = self.module.n
            out = []
            for i in range(1, n + 1):
                acc = Matrix.zeros(self.dim, self.dim)
                for s, res in enumerate(self._residues()):
                    cofactor = UniPoly.from_roots(
                        [p for t, p in enumerate(self.module.points)
                         if t != s])
                    acc = acc + cofactor.coefficient(n - i) * res
                out.append(acc)
            self._u_restricted = out
        return self._u_restricted

    def bethe_restricted(self, j) -> Matrix:
        """Restriction of the u^{-j} coefficient of the quadratic series."""
        acc = Matrix.zeros(self.dim, self.dim)
        for point, res in zip(self.module.points, self._residues()):
            acc = acc + point ** (j - 1) * res
        return acc


def deformed_isotypical_decomposition(module: EvalModule, kmat: KMatrix):
    """Exact generalized-eigenspace blocks of the quadratic coefficient.

    Block dimensions are forced to match (n-2k+1) times the tableau count
    and to exhaust the module; a mismatch is a theorem violation.  For the
    zero twist the blocks are verified to be honest eigenspaces.
    """
    op = universal_operator(module, kmat)
    b22 = op.bethe_coefficient(2, 2)
    blocks = []
    total = 0
    for weight in weight_labels(module.n):
        lam = block_eigenvalue(weight)
        basis = generalized_eigenspace(b22, lam)
        expected = (weight.d + 1) * syt_count(weight)
        if basis.cols != expected:
            raise TheoremViolationError(
                f"block ({weight.lam1},{weight.lam2}) has dimension "
                f"{basis.cols}, expected {expected}")
        if kmat.k21 == 0:
            plain = generalized_eigenspace(b22, lam, exponent=1)
            if plain.cols != basis.cols:
                raise TheoremViolationError(
                    "zero-twist block is not an honest eigenspace")
        blocks.append(IsotypicBlock(module, kmat, weight, basis))
        total += basis.cols
    if total != module.dim:
        raise TheoremViolationError(
            f"blocks span dimension {total} of {module.dim}")
    return blocks


def triangular_block_basis(block: IsotypicBlock):
    """Certify the filtration shape of a deformed block and build the basis.

    For every weight level, the part of the block supported on that level
    and lower must project onto exactly the honest isotypic weight piece.
    Returns (matrix of w_i columns, report); each w_i is a weight vector of
    the zero-twist component plus strictly lower-weight corrections.
    """
    module = block.module
    n = module.n
    weight = block.weight
    op0 = universal_operator(module, KMatrix.zero())
    b22_plain = op0.bethe_coefficient(2, 2)
    lam = block.eigenvalue
    columns = []
    failures = []
    block_rows = [block.basis.column(j) for j in range(block.dim)]
    for m in range(weight.k, n - weight.k + 1):
        low_indices = [i for i in range(module.dim)
                       if module.basis[i].bit_count() >= m]
        level = [i for i in range(module.dim)
                 if module.basis[i].bit_count() == m]
        # Part of the block supported on weight <= (n-m, m).
        sub = _subspace_with_support(block_rows, low_indices, module.dim)
        projected = [[v[i] for i in level] for v in sub]
        projected_r, piv = rref(projected)
        projected_r = [r for r in projected_r if any(x != 0 for x in r)]
        # Honest isotypic piece at this weight: eigenspace of the plain
        # quadratic coefficient restricted to the weight space.
        restricted = Matrix([[b22_plain.data[i][j] for j in level]
                             for i in level])
        target = kernel_basis(
            restricted - lam * Matrix.identity(len(level)))
        if not same_row_space(projected_r, target):
            failures.append(f"weight level {m}")
            continue
        for tvec in target:
            lift = _lift_through_projection(sub, level, tvec)
            columns.append(lift)
    ok = not failures and len(columns) == block.dim
    report = {"name": "triangular_block_basis", "pass": ok,
              "failures": failures}
    basis = Matrix.from_columns(columns) if columns else Matrix.zeros(
        module.dim, 0)
    return basis, report


def _subspace_with_support(vectors, allowed, dim):
    """Basis of the subspace of span(vectors) supported on allowed indices."""
    banned = [i for i in range(dim) if i not in set(allowed)]
    if not vectors:
        return []
    if not banned:
        reduced, _ = rref(vectors)
        return [r for r in reduced if any(x != 0 for x in r)]
    constraint = Matrix([[v[i] for v in vectors] for i in banned])
    combos = kernel_basis(constraint)
    out = []
    for combo in combos:
        vec = [Fraction(0)] * dim
        for c, v in zip(combo, vectors):
            if c != 0:
                vec = [x + c * y for x, y in zip(vec, v)]
        out.append(vec)
    reduced, _ = rref(out) if out else ([], [])
    return [r for r in reduced if any(x != 0 for x in r)]


def _lift_through_projection(sub_vectors, level, target):
    """A vector of span(sub_vectors) whose level-coordinates equal target."""
    system = Matrix([[v[i] for v in sub_vectors] for i in level])
    aug = [row + [t] for row, t in zip(system.data, target)]
    reduced, pivots = rref(aug)
    ncols = len(sub_vectors)
    if ncols in pivots:
        raise TheoremViolationError("projection target not attained")
    combo = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        combo[c] = reduced[r][-1]
    dim = len(sub_vectors[0])
    vec = [Fraction(0)] * dim
    for c, v in zip(combo, sub_vectors):
        if c != 0:
            vec = [x + c * y for x, y in zip(vec, v)]
    return vec


# ---------------------------------------------------------------------------
# Eigenleaves
# ---------------------------------------------------------------------------

@dataclass
class EigenLeaf:
    """Joint generalized eigenspace of the twisted family inside a block.

    basis columns live in block coordinates and are orthonormal; phi maps
    j to the scalar part of the u^{-j} series coefficient on the leaf.
    """
    block: IsotypicBlock
    basis: object
    values: tuple
    phi: dict
    n_matrix: object
    precision: int
    nilpotency_residual: object

    @property
    def dim(self):
        return self.basis.cols

    def ambient_basis(self):
        exact = to_mp(self.block.basis)
        return exact * self.basis

    def restrict(self, exact_matrix_on_block):
        """Numeric restriction of an exact block matrix to the leaf."""
        m_num = to_mp(exact_matrix_on_block)
        bh = _conj_transpose_mp(self.basis)
        return bh * (m_num * self.basis)


def _conj_transpose_mp(a):
    out = mpmath.matrix(a.cols, a.rows)
    for i in range(a.rows):
        for j in range(a.cols):
            out[j, i] = mpmath.conj(a[i, j])
    return out


def _matrix_norm(a):
    return mpmath.mnorm(a, 1) if a.rows and a.cols else mpmath.mpf(0)


def eigenleaf_decomposition(block: IsotypicBlock, precision=128):
    """Split a block into eigenleaves at the given starting precision.

    The index family is the restriction of U_2..U_n; precision doubles on
    clustering failures up to the global cap.  Leaf count and dimensions are
    checked against the tableau count and weight string length.
    """
    def attempt(prec):
        u_ops = block.u_restricted()
        mats = u_ops[1:]  # U_2..U_n
        with mp.workprec(prec):
            tol = default_tolerance(prec)
            if mats:
                spaces = joint_split_mp([to_mp(m) for m in mats], tol)
            else:
                spaces = [((), mpmath.eye(block.dim))]
            leaves = []
            n1 = to_mp(u_ops[0]) if u_ops else mpmath.eye(block.dim)
            for values, basis in spaces:
                bh = _conj_transpose_mp(basis)
                n_mat = bh * (n1 * basis)
                d = basis.cols - 1
                power = mpmath.eye(basis.cols)
                for _ in range(d):
                    power = power * n_mat
                if d >= 0 and basis.cols > 1 and _matrix_norm(power) <= tol:
                    raise TheoremViolationError(
                        "nilpotent generator vanished before its index")
                residual = _matrix_norm(power * n_mat)
                scale = max(_matrix_norm(n1), mpmath.mpf(1))
                if residual > tol * scale:
                    raise PrecisionInsufficientError(
                        f"nilpotency residual {residual}")
                phi = {}
                for j in range(2, block.module.n + 1):
                    rj = bh * (to_mp(block.bethe_restricted(j)) * basis)
                    phi[j] = sum(rj[i, i] for i in range(rj.rows)) / rj.rows
                leaves.append(EigenLeaf(
                    block, basis, values, phi, n_mat, prec, residual))
        expected = syt_count(block.weight)
        if len(leaves) != expected:
            raise TheoremViolationError(
                f"{len(leaves)} leaves for ({block.weight.lam1},"
                f"{block.weight.lam2}), expected {expected}")
        leaf_dim = block.weight.d + 1
        if any(leaf.dim != leaf_dim for leaf in leaves):
            raise TheoremViolationError("leaf dimension mismatch")
        return leaves

    return with_precision_escalation(attempt, precision)


@dataclass
class LeafOperator:
    """Leaf data of the second-order operator: U_i as powers of the nilpotent.

    coeffs[i-1][j] is the coefficient of N^j in U_i restricted to the leaf;
    entries are Fractions where snapping succeeded, else mpmath floats.
    exact is True when every coefficient snapped.
    """
    leaf: EigenLeaf
    w_poly: UniPoly
    coeffs: list
    exact: bool
    residual: object

    @property
    def d(self):
        return self.leaf.dim - 1

    def u_elements(self):
        from .nilpotent import NilpotentElement
        return [NilpotentElement(self.d, row) for row in self.coeffs]

    def scalar_parts(self):
        """c_{i0} for i = 2..n (the scalar second-order operator data)."""
        return [row[0] for row in self.coeffs[1:]]

    def scalar_operator(self):
        return ScalarOperator(self.w_poly, self.scalar_parts())


@dataclass
class ScalarOperator:
    """Second-order Fuchsian operator with scalar numerator coefficients."""
    w_poly: UniPoly
    c0: list

    def numerator_poly_coeffs(self):
        """Coefficients of sum_{i>=2} c_{i0} u^{n-i}, ascending in u."""
        n = self.w_poly.degree()
        out = [0] * max(n - 1, 0)
        for offset, c in enumerate(self.c0):
            out[n - 2 - offset] = c
        return out


def decompose_in_nilpotent_powers(mat_num, n_mat, tol):
    """Least-squares coefficients of mat_num in the basis I, N, ..., N^d.

    Returns (coefficients, residual); residual above tol means the matrix is
    not a polynomial in the nilpotent at working precision.
    """
    size = n_mat.rows
    d = size - 1
    basis = []
    power = mpmath.eye(size)
    for _ in range(d + 1):
        basis.append(power)
        power = power * n_mat
    rows = size * size
    a = mpmath.matrix(rows, d + 1)
    b = mpmath.matrix(rows, 1)
    for idx in range(rows):
        i, j = divmod(idx, size)
        for col, mat in enumerate(basis):
            a[idx, col] = mat[i, j]
        b[idx, 0] = mat_num[i, j]
    if d == 0:
        return [mat_num[0, 0]], mpmath.mpf(0)
    x, residual = lstsq_mp(a, b)
    return [x[i, 0] for i in range(d + 1)], residual


def leaf_operator(leaf: EigenLeaf) -> LeafOperator:
    """Express each restricted U_i as a polynomial in the leaf nilpotent.

    The linear coefficient vector of U_1 must snap to (0, 1, 0, ...), and the
    snapped constant of U_2 must equal the block eigenvalue exactly.
    """
    block = leaf.block
    module = block.module
    n = module.n
    weight = block.weight
    with mp.workprec(leaf.precision):
        tol = default_tolerance(leaf.precision)
        scale = mpmath.mpf(1)
        coeff_rows = []
        exact = True
        worst = mpmath.mpf(0)
        u_ops = block.u_restricted()
        for i in range(1, n + 1):
            restricted = leaf.restrict(u_ops[i - 1])
            coeffs, residual = decompose_in_nilpotent_powers(
                restricted, leaf.n_matrix, tol)
            scale = max(scale, _matrix_norm(restricted))
            if residual > tol * scale:
                raise GenericityError(
                    f"U_{i} is not a polynomial in N (residual {residual}); "
                    "regenerate the evaluation points")
            worst = max(worst, residual)
            row = []
            for c in coeffs:
                snapped = snap_to_rational(c, leaf.precision)
                if snapped is None:
                    row.append(c)
                else:
                    row.append(snapped)
            # Re-verify: a nearby small-denominator rational can sit within
            # the snap threshold of a genuinely irrational coefficient, so
            # snaps only survive if they reproduce the restriction.
            if any(isinstance(c, Fraction) for c in row):
                recon = mpmath.zeros(leaf.dim, leaf.dim)
                power = mpmath.eye(leaf.dim)
                for c in row:
                    recon += mpmath.mpmathify(c) * power
                    power = power * leaf.n_matrix
                if _matrix_norm(recon - restricted) > tol * scale:
                    row = list(coeffs)
            if not all(isinstance(c, Fraction) for c in row):
                exact = False
            coeff_rows.append(row)
        # U_1 is the nilpotent itself.
        u1 = coeff_rows[0]
        expected_u1 = [Fraction(0), Fraction(1)] + [Fraction(0)] * (leaf.dim - 2)
        if leaf.dim == 1:
            expected_u1 = [Fraction(0)]
        u1_exact = all(isinstance(c, Fraction) for c in u1)
        if u1_exact:
            if u1 != expected_u1[:len(u1)]:
                raise TheoremViolationError(
                    f"U_1 on the leaf decomposed as {u1}, expected N itself")
        else:
            drift = max(abs(mpmath.mpmathify(c) - mpmath.mpmathify(e))
                        for c, e in zip(u1, expected_u1))
            if drift > tol * scale:
                raise TheoremViolationError(
                    f"U_1 on the leaf decomposed as {u1}, expected N itself")
            coeff_rows[0] = expected_u1[:len(u1)]
        c20 = coeff_rows[1][0] if n >= 2 else None
        expected_c20 = block_eigenvalue(weight)
        if c20 is not None:
            if isinstance(c20, Fraction):
                if c20 != expected_c20:
                    raise TheoremViolationError(
                        f"c_20 = {c20}, expected {expected_c20}")
            elif abs(c20 - mpmath.mpmathify(expected_c20)) > tol * scale:
                raise TheoremViolationError(
                    f"c_20 = {c20} not within tolerance of {expected_c20}")
            else:
                coeff_rows[1][0] = expected_c20
    w_poly = UniPoly.from_roots(module.points)
    return LeafOperator(leaf, w_poly, coeff_rows, exact, worst)


# ---------------------------------------------------------------------------
# Singular spectrum matching
# ---------------------------------------------------------------------------

def singular_restriction(module: EvalModule, weight: WeightLabel):
    """Exact restrictions of the plain quadratic coefficients to sing[weight].

    Returns (basis, [restriction of B^0_{2j} for j = 2..n]).
    """
    basis = singular_subspace(module, weight)
    if basis.cols == 0:
        return basis, []
    pivots = _column_pivots(basis)
    op0 = universal_operator(module, KMatrix.zero())
    mats = [restrict_exact(op0.bethe_coefficient(2, j), basis, pivots)
            for j in range(2, module.n + 1)]
    return basis, mats


def singular_spectrum_match(module: EvalModule, precision=128, seed=0):
    """Simple singular spectrum plus leaf-eigenvalue matching per component.

    (a) a random rational combination of the plain coefficients restricted to
    the singular space has a squarefree characteristic polynomial (exact);
    (b) the leaf scalar eigenvalue vectors within each deformed block agree
    with the plain eigenvalue vectors on the singular space, bijectively,
    within tolerance.
    """
    import random
    rng = random.Random(seed)
    blocks = deformed_isotypical_decomposition(module, KMatrix.nilpotent())
    failures = []
    details = []
    for block in blocks:
        weight = block.weight
        basis, mats = singular_restriction(module, weight)
        count = syt_count(weight)
        if basis.cols != count:
            failures.append(f"sing dim {basis.cols} != {count} at {weight}")
            continue
        if mats:
            combo = Matrix.zeros(basis.cols, basis.cols)
            for m in mats:
                combo = combo + Fraction(rng.randint(1, 99), rng.randint(1, 9)) * m
            if not is_squarefree(charpoly(combo)):
                failures.append(f"spectrum of {weight} combination not simple")
        leaves = eigenleaf_decomposition(block, precision)
        with mp.workprec(precision):
            tol = default_tolerance(precision)
            if mats:
                sing_spaces = joint_generalized_eigenspaces(
                    mats, precision=precision)
                sing_vectors = [vals for vals, _ in sing_spaces]
            else:
                sing_vectors = [()]
            leaf_vectors = [
                tuple(leaf.phi[j] for j in range(2, module.n + 1))
                for leaf in leaves]
            matched = _match_vectors(leaf_vectors, sing_vectors, tol)
            if matched is None:
                failures.append(f"eigenvalue matching failed at {weight}")
            else:
                details.append({
                    "weight": (weight.lam1, weight.lam2),
                    "pairs": matched})
    return {"name": "singular_spectrum_match", "pass": not failures,
            "failures": failures, "details": details}


def _match_vectors(left, right, tol):
    """Nearest-neighbor bijection between equal-size eigenvalue tuples.

    Returns index pairs, or None when sizes differ, a distance exceeds the
    tolerance margin, or the assignment is not one-to-one.
    """
    if len(left) != len(right):
        return None
    margin = 1000 * tol
    used = set()
    pairs = []
    for i, lv in enumerate(left):
        best, best_dist = None, None
        for j, rv in enumerate(right):
            if j in used:
                continue
            dist = max((abs(a - mpmath.mpmathify(b))
                        for a, b in zip(lv, rv)), default=mpmath.mpf(0))
            if best_dist is None or dist < best_dist:
                best, best_dist = j, dist
        if best is None or best_dist > margin:
            return None
        used.add(best)
        pairs.append((i, best))
    return pairs


# ---------------------------------------------------------------------------
# Pairs of polynomials -> leaves (the roundtrip)
# ---------------------------------------------------------------------------

@dataclass
class RoundtripResult:
    mode: str
    points: list
    match_count: int
    matched_index: int
    target_scalars: list
    leaf_scalars: list


def leaf_from_polynomials(f0: UniPoly, g0: UniPoly, precision=128,
                          match_tol_exponent=40):
    """Locate the unique leaf whose scalar operator is built from (f0, g0).

    The evaluation points are the roots of the Wronskian normalized by its
    actual leading coefficient.  Rational roots give the exact pipeline;
    irrational (real) roots switch to the numeric-module pipeline, flagged
    by mode="numeric".
    """
    k = f0.degree()
    n = k + g0.degree() - 1
    d = n - 2 * k
    if d < 0:
        raise GenericityError("degree pattern requires deg g0 >= deg f0 + 1")
    if f0.leading() != 1 or g0.leading() != 1:
        raise GenericityError("both polynomials must be monic")
    wr = poly_wronskian(f0, g0)
    if wr.degree() != n:
        raise GenericityError("Wronskian degree collapsed; pair is degenerate")
    lc = wr.leading()
    wr_monic = wr.scale(Fraction(1) / lc)
    if not is_squarefree(wr_monic):
        raise GenericityError("Wronskian is not squarefree")
    target_poly = poly_wronskian(f0.derivative(), g0.derivative()).scale(
        Fraction(1) / lc)
    target = [target_poly.coefficient(n - i) for i in range(2, n + 1)]
    match_tol = mpmath.mpf(2) ** (-match_tol_exponent)
    with mp.workprec(precision):
        tol = default_tolerance(precision)
        roots = mpmath.polyroots(
            [mpmath.mpmathify(wr_monic.coefficient(p))
             for p in range(n, -1, -1)], maxsteps=200, extraprec=precision)
        reals = []
        for r in roots:
            if abs(mpmath.im(r)) > mpmath.mpf(2) ** (-precision // 4):
                raise GenericityError("Wronskian has non-real roots")
            reals.append(mpmath.re(r))
        snapped = [snap_to_rational(r, precision) for r in reals]
        if all(s is not None for s in snapped) and \
                all(wr_monic(s) == 0 for s in snapped) and \
                len(set(snapped)) == n:
            module = EvalModule(n, snapped)
            scalars = []
            for block in deformed_isotypical_decomposition(
                    module, KMatrix.nilpotent()):
                for leaf in eigenleaf_decomposition(block, precision):
                    op = leaf_operator(leaf)
                    scalars.append([mpmath.mpmathify(c)
                                    for c in op.scalar_parts()])
            mode, points = "exact", snapped
        else:
            entries = with_precision_escalation(
                lambda prec: numeric_leaf_scalars(reals, prec), precision)
            scalars = [entry["scalars"] for entry in entries]
            mode, points = "numeric", reals
        matches = []
        for idx, cs in enumerate(scalars):
            dist = max((abs(c - mpmath.mpmathify(t))
                        for c, t in zip(cs, target)), default=mpmath.mpf(0))
            if dist < match_tol:
                matches.append(idx)
    if len(matches) != 1:
        raise MatchCountError(
            f"{len(matches)} leaves matched the scalar operator")
    return RoundtripResult(mode, points, len(matches), matches[0],
                           target, scalars)


def numeric_leaf_scalars(points_mpf, precision):
    """Leaf scalar data over a numeric evaluation module (irrational points).

    Assembles the per-site residues in mpmath arithmetic, splits the whole
    space by the joint family, and reports per leaf the dimension and the
    scalar parts of U_2..U_n.
    """
    n = len(points_mpf)
    structure = EvalModule(n, list(range(n)))
    with mp.workprec(precision):
        tol = default_tolerance(precision)
        pts = [mpmath.mpmathify(p) for p in points_mpf]
        site = {}
        for a, b in ((1, 1), (1, 2), (2, 1), (2, 2)):
            for s in range(n):
                site[(a, b, s)] = to_mp(structure.site_matrix(a, b, s))
        dim = structure.dim
        residues = []
        for s in range(n):
            acc = mpmath.zeros(dim, dim)
            for t in range(n):
                if t == s:
                    continue
                w = 1 / (pts[s] - pts[t])
                cross = (site[(1, 1, s)] * site[(2, 2, t)]
                         + site[(1, 1, t)] * site[(2, 2, s)]
                         - site[(2, 1, s)] * site[(1, 2, t)]
                         - site[(2, 1, t)] * site[(1, 2, s)])
                acc += w * cross
            acc += site[(2, 1, s)]
            residues.append(acc)
        u_mats = []
        for i in range(1, n + 1):
            acc = mpmath.zeros(dim, dim)
            for s in range(n):
                cofactor = _poly_from_roots_mp(
                    [p for t, p in enumerate(pts) if t != s])
                acc += cofactor[n - i] * residues[s]
            u_mats.append(acc)
        spaces = joint_split_mp(u_mats[1:], tol) if n >= 2 else [
            ((), mpmath.eye(dim))]
        out = []
        for values, basis in spaces:
            bh = _conj_transpose_mp(basis)
            entry = {"dim": basis.cols, "values": values}
            entry["scalars"] = [
                sum((bh * (u_mats[i] * basis))[r, r]
                    for r in range(basis.cols)) / basis.cols
                for i in range(1, n)]
            out.append(entry)
        return out


def _poly_from_roots_mp(roots):
    coeffs = [mpmath.mpf(1)]
    for r in roots:
        nxt = [mpmath.mpf(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c * (-r)
            nxt[i + 1] += c
        coeffs = nxt
    return coeffs
