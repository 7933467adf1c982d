"""Exact dense linear algebra over Q.

Everything here is Fraction arithmetic: echelon forms, kernels,
generalized eigenspaces, characteristic and minimal polynomials, and
span/closure computations for finite-dimensional operator algebras.
Numeric (high-precision float) routines live in `numeric`.
"""

from fractions import Fraction

from .errors import ShapeError
from .unipoly import UniPoly


class Matrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = [[Fraction(x) for x in row] for row in data]
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        if any(len(row) != self.cols for row in data):
            raise ShapeError("ragged rows")
        self.data = data

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(1 if i == j else 0) for j in range(n)]
                    for i in range(n)])

    @classmethod
    def from_columns(cls, columns):
        if not columns:
            return cls.zeros(0, 0)
        n = len(columns[0])
        return cls([[Fraction(col[i]) for col in columns] for i in range(n)])

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.data, other.data)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.data, other.data)])

    def __neg__(self):
        return Matrix([[-a for a in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ShapeError(
                    f"({self.rows}x{self.cols}) @ ({other.rows}x{other.cols})")
            ot = other.data
            out = [[Fraction(0)] * other.cols for _ in range(self.rows)]
            for i, row in enumerate(self.data):
                out_i = out[i]
                for k, a in enumerate(row):
                    if a == 0:
                        continue
                    rk = ot[k]
                    for j, b in enumerate(rk):
                        if b != 0:
                            out_i[j] += a * b
            return Matrix(out)
        if isinstance(other, (int, Fraction)):
            return Matrix([[a * other for a in row] for row in self.data])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Matrix([[other * a for a in row] for row in self.data])
        return NotImplemented

    def __rsub__(self, other):
        if other == 0:
            return -self
        return NotImplemented

    def __radd__(self, other):
        if other == 0:
            return self
        return NotImplemented

    def __pow__(self, exponent):
        if self.rows != self.cols:
            raise ShapeError("powers need a square matrix")
        if exponent < 0:
            raise ValueError("negative matrix power")
        result = Matrix.identity(self.rows)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Matrix):
            return self.data == other.data
        if other == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None

    def is_zero(self):
        return all(a == 0 for row in self.data for a in row)

    def transpose(self):
        return Matrix([[self.data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)])

    def apply(self, vector):
        return [sum((a * x for a, x in zip(row, vector) if a != 0),
                    Fraction(0)) for row in self.data]

    def trace(self):
        return sum((self.data[i][i] for i in range(self.rows)), Fraction(0))

    def submatrix(self, row_idx, col_idx):
        return Matrix([[self.data[i][j] for j in col_idx] for i in row_idx])

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch")

    def __repr__(self):
        return "Matrix(" + ", ".join(str(row) for row in self.data) + ")"


def rref(rows):
    """Reduced row echelon form of a list-of-lists copy; returns (rows, pivots)."""
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(mat: Matrix) -> int:
    return len(rref(mat.data)[1])


def kernel_basis(mat: Matrix):
    """Basis of the right null space, as a list of vectors.

    The basis is in reduced echelon form: stacking the vectors as rows and
    row-reducing returns them unchanged, so results are deterministic.
    """
    m, pivots = rref(mat.data)
    n_cols = mat.cols
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    reduced, _ = rref(basis) if basis else ([], [])
    return [row for row in reduced if any(x != 0 for x in row)]


def solve_unique(mat: Matrix, rhs):
    """The unique solution of mat * x = rhs, or None if none/ambiguous."""
    aug = [row + [b] for row, b in zip(mat.data, rhs)]
    m, pivots = rref(aug)
    if mat.cols in pivots:
        return None  # inconsistent
    if len(pivots) != mat.cols:
        return None  # underdetermined
    x = [Fraction(0)] * mat.cols
    for r, c in enumerate(pivots):
        x[c] = m[r][-1]
    return x


def row_space_contains(basis_rows, vector):
    """Exact membership of vector in the row space of basis_rows."""
    m, pivots = rref(basis_rows)
    v = list(map(Fraction, vector))
    for r, c in enumerate(pivots):
        if v[c] != 0:
            f = v[c]
            v = [a - f * b for a, b in zip(v, m[r])]
    return all(a == 0 for a in v)


def same_row_space(rows_a, rows_b):
    ra, pa = rref(rows_a)
    rb, pb = rref(rows_b)
    ra = [r for r in ra if any(x != 0 for x in r)]
    rb = [r for r in rb if any(x != 0 for x in r)]
    return ra == rb


def intersect_row_spaces(rows_a, rows_b):
    """Basis (rref rows) of the intersection of two row spaces in Q^n."""
    if not rows_a or not rows_b:
        return []
    n = len(rows_a[0])
    # x in both spans: x = sum a_i u_i = sum b_j v_j; solve [U^T | -V^T] null.
    stacked = []
    for i in range(n):
        stacked.append([u[i] for u in rows_a] + [-v[i] for v in rows_b])
    null = kernel_basis(Matrix(stacked))
    vectors = []
    for coeffs in null:
        vec = [Fraction(0)] * n
        for a, u in zip(coeffs[:len(rows_a)], rows_a):
            if a != 0:
                vec = [x + a * y for x, y in zip(vec, u)]
        vectors.append(vec)
    reduced, _ = rref(vectors) if vectors else ([], [])
    return [row for row in reduced if any(x != 0 for x in row)]


def generalized_eigenspace(mat: Matrix, eigenvalue, exponent=None):
    """Basis columns of ker (mat - eigenvalue I)^exponent, reduced echelon.

    exponent defaults to the ambient dimension; the power is raised only
    until the kernel stabilizes, which happens at the nilpotency index.
    """
    if mat.rows != mat.cols:
        raise ShapeError("generalized eigenspace of a non-square matrix")
    n = mat.rows
    if exponent is None:
        exponent = n
    shifted = mat - eigenvalue * Matrix.identity(n)
    power = shifted
    basis = kernel_basis(power)
    for _ in range(1, exponent):
        if len(basis) == n:
            break
        power = power * shifted
        nxt = kernel_basis(power)
        if len(nxt) == len(basis):
            break
        basis = nxt
    return Matrix.from_columns(basis) if basis else Matrix.zeros(n, 0)


def charpoly(mat: Matrix) -> UniPoly:
    """Characteristic polynomial det(u I - mat) by Faddeev-LeVerrier."""
    if mat.rows != mat.cols:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    n = mat.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m_k = Matrix.identity(n)
    for k in range(1, n + 1):
        m_k = mat * m_k
        c = -m_k.trace() / k
        coeffs[n - k] = c
        m_k = m_k + c * Matrix.identity(n)
    return UniPoly(coeffs)


def minimal_polynomial(mat: Matrix) -> UniPoly:
    """Monic minimal polynomial via the first Krylov dependency of powers."""
    if mat.rows != mat.cols:
        raise ShapeError("minimal polynomial of a non-square matrix")
    n = mat.rows
    flat_powers = []
    power = Matrix.identity(n)
    for _ in range(n + 1):
        flat_powers.append([x for row in power.data for x in row])
        # Solve sum c_i P_i = -P_last for the shortest relation.
        if len(flat_powers) >= 2:
            lhs = Matrix([[flat_powers[i][j]
                           for i in range(len(flat_powers) - 1)]
                          for j in range(n * n)])
            rhs = [-x for x in flat_powers[-1]]
            sol = solve_unique(lhs, rhs)
            if sol is not None:
                return UniPoly(sol + [Fraction(1)])
        power = power * mat
    raise AssertionError("no minimal polynomial found (unreachable)")


def span_dimension(vectors):
    reduced, pivots = rref(vectors) if vectors else ([], [])
    return len(pivots)


class SpanBasis:
    """Incremental echelon basis of a subspace of Q^n."""

    def __init__(self):
        self.rows = []      # echelon rows, each with its pivot column
        self.pivots = []

    def contains(self, vector):
        return self._reduce(vector) is None

    def _reduce(self, vector):
        v = list(map(Fraction, vector))
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        pivot = next((i for i, a in enumerate(v) if a != 0), None)
        if pivot is None:
            return None
        inv = Fraction(1) / v[pivot]
        return [a * inv for a in v], pivot

    def add(self, vector):
        """Insert vector; returns True when it enlarged the span."""
        reduced = self._reduce(vector)
        if reduced is None:
            return False
        v, p = reduced
        self.rows.append(v)
        self.pivots.append(p)
        return True

    def dimension(self):
        return len(self.rows)


def algebra_closure(generators, max_dim=None):
    """Basis of the unital matrix algebra generated by the given matrices.

    Breadth-first span closure under multiplication by the generators;
    returns a list of matrices whose vectorizations are independent.
    """
    if not generators:
        return []
    n = generators[0].rows
    basis = SpanBasis()
    elements = []
    queue = [Matrix.identity(n)] + list(generators)
    while queue:
        m = queue.pop(0)
        if basis.add([x for row in m.data for x in row]):
            elements.append(m)
            if max_dim is not None and len(elements) > max_dim:
                raise AssertionError("algebra closure exceeded expected size")
            queue.extend(m * g for g in generators)
    return elements


def ideal_span(algebra_basis, generator):
    """Basis of the ideal generator * A inside a commutative matrix algebra."""
    basis = SpanBasis()
    elements = []
    for a in algebra_basis:
        m = generator * a
        if basis.add([x for row in m.data for x in row]):
            elements.append(m)
    return elements


def cyclic_vector_exists(algebra_basis, rng, dim, attempts=5):
    """Whether a random vector generates the full module under the algebra."""
    if not algebra_basis:
        return dim == 0
    n = algebra_basis[0].rows
    for _ in range(attempts):
        v = [Fraction(rng.randint(-9, 9)) for _ in range(n)]
        span = SpanBasis()
        for a in algebra_basis:
            span.add(a.apply(v))
        if span.dimension() == dim:
            return True
    return False
