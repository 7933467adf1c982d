"""The Wronskian-condition algebra over the truncated nilpotent ring.

Two monic polynomial ansatzes of degrees k and k+d+1 carry free coefficients
plus 2d unknown tail coefficients weighted by powers of the nilpotent b.
Requiring the Wronskian pair to satisfy the 2d tail conditions determines
the unknowns as polynomials in the free coefficients; the staged 2x2
elimination below follows the constructive proof literally: solve the
stage-linear part, substitute, and sweep until the fixed point, which is
reached because every substitution raises the undetermined b-degree.

Elements of the resulting algebra live in the normal form: nilpotent
elements whose coefficients are polynomials in the free variables.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import TheoremViolationError
from .linalg import SpanBasis
from .multipoly import MultiPoly
from .nilpotent import NilpotentElement
from .qseries import QSeries, geometric, qseries_pochhammer
from .unipoly import UniPoly, laurent_at_infinity, poly_wronskian
from .gl2rep import char_isotypical_closed


def free_variable_names(k, d):
    f_names = [f"f{i}" for i in range(k)]
    g_names = [f"g{i}" for i in range(k)] + [f"g{i}" for i in range(k + 1, k + d + 1)]
    return tuple(f_names + g_names)


def all_variable_names(k, d):
    tails = [f"ft{i}" for i in range(1, d + 1)] + [f"gt{i}" for i in range(1, d + 1)]
    return free_variable_names(k, d) + tuple(tails)


def free_variable_degrees(k, d):
    degrees = {}
    for i in range(k):
        degrees[f"f{i}"] = k - i
        degrees[f"g{i}"] = k + d + 1 - i
    for i in range(k + 1, k + d + 1):
        degrees[f"g{i}"] = k + d + 1 - i
    return degrees


def element_degree(x: NilpotentElement, degrees):
    """Common homogeneous degree of a normal-form element, or None.

    The b^m coefficient must be homogeneous of degree (deg + m) for a fixed
    overall degree; b itself carries degree -1.
    """
    found = set()
    for m, poly in enumerate(x.coeffs):
        if isinstance(poly, MultiPoly):
            if poly.is_zero():
                continue
            deg = poly.homogeneous_degree(degrees)
            if deg is None:
                return None
            found.add(deg - m)
        elif poly != 0:
            found.add(-m)
    if len(found) > 1:
        return None
    return found.pop() if found else None


@dataclass
class FGAnsatz:
    k: int
    d: int
    f_poly: UniPoly
    g_poly: UniPoly
    variables: tuple


@dataclass
class WronskiSystem:
    k: int
    d: int
    wr_coeffs: list
    wr_deriv_coeffs: list
    equations: list       # 2d elements, ordered (E^U_1, E^V_1, E^U_2, E^V_2, ...)
    stage_linear: list    # per stage i: 2x2 Fraction matrix [[a1,b1],[a2,b2]]


@dataclass
class EliminationResult:
    k: int
    d: int
    phi: dict             # i -> value of the f-tail product, b-valuation >= i
    psi: dict             # i -> value of the g-tail product
    sweeps: int
    system: WronskiSystem
    ansatz: FGAnsatz


def _ring_one(variables, d):
    return NilpotentElement.constant(d, MultiPoly.const(variables, 1))


def _var_elem(variables, d, name):
    return NilpotentElement.constant(d, MultiPoly.var(variables, name))


def build_system(k, d):
    """Ansatz polynomials and the 2d tail equations, exactly.

    Verifies the vanishing of all Wronskian coefficients above the tail
    window and the scalar linear structure of each stage (coefficients
    d+1-i and d+1+i on the unknowns, nonzero 2x2 determinants).
    """
    variables = all_variable_names(k, d)
    one = _ring_one(variables, d)

    f_coeffs = []
    for i in range(k):
        f_coeffs.append(_var_elem(variables, d, f"f{i}"))
    f_coeffs.append(one)
    for i in range(1, d + 1):
        f_coeffs.append(NilpotentElement.b(d, i) * _var_elem(variables, d, f"ft{i}"))
    f_poly = UniPoly(f_coeffs)

    g_coeffs = []
    for i in range(k):
        g_coeffs.append(_var_elem(variables, d, f"g{i}"))
    g_coeffs.append(NilpotentElement(d))
    for i in range(k + 1, k + d + 1):
        g_coeffs.append(_var_elem(variables, d, f"g{i}"))
    g_coeffs.append(one)
    for i in range(1, d + 1):
        g_coeffs.append(NilpotentElement.b(d, i) * _var_elem(variables, d, f"gt{i}"))
    g_poly = UniPoly(g_coeffs)

    ansatz = FGAnsatz(k, d, f_poly, g_poly, variables)

    wr = poly_wronskian(f_poly, g_poly)
    wr_deriv = poly_wronskian(f_poly.derivative(), g_poly.derivative())
    wr_coeffs = [wr.coefficient(j) for j in range(2 * k + 3 * d + 1)]
    wrp_coeffs = [wr_deriv.coefficient(j) for j in range(2 * k + 3 * d - 1)]

    for j in range(2 * k + 2 * d + 1, 2 * k + 3 * d + 1):
        if not _nilp_is_zero(wr_coeffs[j]):
            raise TheoremViolationError(f"U_{j} does not vanish identically")
        if j - 2 >= 0 and j - 2 < len(wrp_coeffs) and \
                not _nilp_is_zero(wrp_coeffs[j - 2]):
            raise TheoremViolationError(f"V_{j - 2} does not vanish identically")

    equations = []
    stage_linear = []
    for i in range(1, d + 1):
        eq_u = wr_coeffs[2 * k + d + i]
        if i == 1:
            eq_v = wrp_coeffs[2 * k + d - 1] - NilpotentElement.b(d, 1) * \
                wr_coeffs[2 * k + d]
        else:
            eq_v = wrp_coeffs[2 * k + d - 2 + i]
        a1 = _stage_linear_coefficient(eq_u, f"ft{i}", i)
        b1 = _stage_linear_coefficient(eq_u, f"gt{i}", i)
        a2 = _stage_linear_coefficient(eq_v, f"ft{i}", i)
        b2 = _stage_linear_coefficient(eq_v, f"gt{i}", i)
        expected_a1 = Fraction(d + 1 - i)
        expected_b1 = Fraction(d + 1 + i)
        if (a1, b1) != (expected_a1, expected_b1):
            raise TheoremViolationError(
                f"stage {i} linear coefficients ({a1}, {b1}) differ from "
                f"({expected_a1}, {expected_b1})")
        det = a1 * b2 - b1 * a2
        if det == 0:
            raise TheoremViolationError(f"stage {i} system is singular")
        equations.extend([eq_u, eq_v])
        stage_linear.append([[a1, b1], [a2, b2]])

    system = WronskiSystem(k, d, wr_coeffs, wrp_coeffs, equations, stage_linear)
    return ansatz, system


def _nilp_is_zero(x):
    if isinstance(x, NilpotentElement):
        return all(c == 0 for c in x.coeffs)
    return x == 0


def _stage_linear_coefficient(eq, name, level):
    """Constant coefficient of the degree-one occurrence of name at b^level."""
    poly = eq.coeffs[level]
    if not isinstance(poly, MultiPoly):
        return Fraction(0)
    linear, _ = poly.extract_linear(name)
    value = linear.as_constant()
    if value is None:
        raise TheoremViolationError(
            f"linear coefficient of {name} at level {level} is not constant")
    return value


def _strip(value: NilpotentElement, power):
    return value.shift_down(power)


def eliminate(k, d):
    """Solve the tail system by the staged 2x2 elimination with sweeps.

    Unknowns are determined in order of their b-weight; occurrences of a
    stage unknown in higher b-degree terms lag one sweep behind, and every
    sweep raises the undetermined b-degree, so at most d+2 sweeps reach the
    fixed point.  The solved values are substituted back into all equations
    and must give the exact zero.
    """
    ansatz, system = build_system(k, d)
    free_vars = free_variable_names(k, d)
    zero = NilpotentElement(d, [MultiPoly(free_vars)] * (d + 1))
    one = _ring_one(free_vars, d)

    sol_ft = {i: zero for i in range(1, d + 1)}
    sol_gt = {i: zero for i in range(1, d + 1)}

    def substitution():
        values = {}
        for name in free_vars:
            values[name] = _var_elem(free_vars, d, name)
        for i in range(1, d + 1):
            values[f"ft{i}"] = _strip(sol_ft[i], i)
            values[f"gt{i}"] = _strip(sol_gt[i], i)
        return values

    def evaluate(elem):
        values = substitution()
        total = zero
        for m, poly in enumerate(elem.coeffs):
            if not isinstance(poly, MultiPoly) or poly.is_zero():
                continue
            piece = poly.substitute(values, one)
            total = total + NilpotentElement.b(d, m) * piece
        return total

    sweeps = 0
    for _ in range(d + 2):
        sweeps += 1
        changed = False
        for i in range(1, d + 1):
            eq_u = system.equations[2 * (i - 1)]
            eq_v = system.equations[2 * (i - 1) + 1]
            (a1, b1), (a2, b2) = system.stage_linear[i - 1]
            c1 = evaluate(eq_u) - a1 * sol_ft[i] - b1 * sol_gt[i]
            c2 = evaluate(eq_v) - a2 * sol_ft[i] - b2 * sol_gt[i]
            det = a1 * b2 - b1 * a2
            new_ft = (b1 * c2 - b2 * c1).map_coeffs(lambda p: Fraction(1, 1) / det * p)
            new_gt = (a2 * c1 - a1 * c2).map_coeffs(lambda p: Fraction(1, 1) / det * p)
            if new_ft.b_valuation() < i or new_gt.b_valuation() < i:
                raise TheoremViolationError(
                    f"stage {i} solution has b-valuation below {i}")
            if not (new_ft == sol_ft[i] and new_gt == sol_gt[i]):
                changed = True
            sol_ft[i], sol_gt[i] = new_ft, new_gt
        if not changed:
            break
    else:
        raise TheoremViolationError("elimination sweeps did not stabilize")

    for idx, eq in enumerate(system.equations):
        residual = evaluate(eq)
        if not residual.is_zero():
            raise TheoremViolationError(
                f"equation {idx} is nonzero after substitution: {residual}")

    degrees = free_variable_degrees(k, d)
    for i in range(1, d + 1):
        for value, label in ((sol_ft[i], "f"), (sol_gt[i], "g")):
            deg = element_degree(value, degrees)
            if not value.is_zero() and deg != -i:
                raise TheoremViolationError(
                    f"solved {label}-tail {i} has degree {deg}, expected {-i}")

    return EliminationResult(k, d, dict(sol_ft), dict(sol_gt), sweeps,
                             system, ansatz)


# ---------------------------------------------------------------------------
# The universal operator coefficients and the Wronski homomorphism
# ---------------------------------------------------------------------------

@dataclass
class OLambdaData:
    """Everything downstream of the elimination for a fixed (k, d)."""
    k: int
    d: int
    elimination: EliminationResult
    f_sub: UniPoly
    g_sub: UniPoly
    wronskian: UniPoly
    wr_deriv: UniPoly
    f1: list
    f2: list
    sigma_images: list
    w0: NilpotentElement

    @property
    def n(self):
        return 2 * self.k + self.d

    def coefficient(self, s, j):
        """F_{sj} in the normal form (1-indexed in j)."""
        series = self.f1 if s == 1 else self.f2
        return series[j - 1]


def substituted_pair(result: EliminationResult):
    """The ansatz pair with the solved tails substituted, over the free ring."""
    k, d = result.k, result.d
    free_vars = free_variable_names(k, d)
    one = _ring_one(free_vars, d)
    zero = NilpotentElement(d, [MultiPoly(free_vars)] * (d + 1))

    f_coeffs = [_var_elem(free_vars, d, f"f{i}") for i in range(k)]
    f_coeffs.append(one)
    for i in range(1, d + 1):
        f_coeffs.append(result.phi[i])
    g_coeffs = [_var_elem(free_vars, d, f"g{i}") for i in range(k)]
    g_coeffs.append(zero)
    for i in range(k + 1, k + d + 1):
        g_coeffs.append(_var_elem(free_vars, d, f"g{i}"))
    g_coeffs.append(one)
    for i in range(1, d + 1):
        g_coeffs.append(result.psi[i])
    return UniPoly(f_coeffs), UniPoly(g_coeffs)


def universal_operator_data(k, d, order=None) -> OLambdaData:
    """Second-order operator data of the quotient algebra at (k, d).

    Expands both coefficient series at infinity to the given order, checks
    the degree and residue statements, the annihilation identities, the
    homogeneity of every coefficient, and builds the Wronski images.
    """
    if order is None:
        order = 2 * (k + d) + 4
    result = eliminate(k, d)
    f_sub, g_sub = substituted_pair(result)
    n = 2 * k + d
    free_vars = free_variable_names(k, d)
    degrees = free_variable_degrees(k, d)

    wr = poly_wronskian(f_sub, g_sub)
    if wr.degree() != n:
        raise TheoremViolationError(
            f"Wronskian degree {wr.degree()}, expected {n}")
    w0 = wr.leading()
    if not (isinstance(w0, NilpotentElement)
            and w0.coeffs[0] == MultiPoly.const(free_vars, d + 1)):
        raise TheoremViolationError(
            f"Wronskian leading coefficient {w0} does not start at {d + 1}")

    wr_deriv = poly_wronskian(f_sub.derivative(), g_sub.derivative())
    if d >= 1:
        if wr_deriv.degree() != n - 1:
            raise TheoremViolationError(
                f"numerator degree {wr_deriv.degree()}, expected {n - 1}")
        residue = wr_deriv.leading() * w0.inverse()
        if residue != NilpotentElement.b(d, 1).map_coeffs(
                lambda c: c * MultiPoly.const(free_vars, 1)):
            raise TheoremViolationError("residue at infinity is not b")
    elif not wr_deriv.is_zero() and wr_deriv.degree() > n - 2:
        raise TheoremViolationError("numerator degree exceeds n-2 at d=0")

    # Annihilation: W y'' - W' y' + Wr(f', g') y = 0 for y = f and y = g.
    for y in (f_sub, g_sub):
        combo = wr * y.derivative().derivative() \
            - wr.derivative() * y.derivative() + wr_deriv * y
        if not combo.is_zero():
            raise TheoremViolationError(
                "universal operator does not annihilate the ansatz pair")

    f1 = laurent_at_infinity(wr.derivative(), wr, order)
    f2 = laurent_at_infinity(wr_deriv, wr, order)
    b_elem = NilpotentElement.b(d, 1).map_coeffs(
        lambda c: c * MultiPoly.const(free_vars, 1))
    if f1[0] != NilpotentElement.constant(d, MultiPoly.const(free_vars, n)):
        raise TheoremViolationError(f"F_11 = {f1[0]}, expected {n}")
    expected_f21 = b_elem if d >= 1 else NilpotentElement(0, [MultiPoly(free_vars)])
    if f2[0] != expected_f21:
        raise TheoremViolationError(f"F_21 = {f2[0]}, expected {expected_f21}")
    for j, value in enumerate(f1, start=1):
        if not value.is_zero() and element_degree(value, degrees) != j - 1:
            raise TheoremViolationError(f"F_1{j} is not homogeneous of degree {j - 1}")
    for j, value in enumerate(f2, start=1):
        if not value.is_zero() and element_degree(value, degrees) != j - 2:
            raise TheoremViolationError(f"F_2{j} is not homogeneous of degree {j - 2}")

    w0_inv = w0.inverse()
    sigma_images = []
    for s in range(1, n + 1):
        w_s = (-1) ** s * wr.coefficient(n - s)
        if not isinstance(w_s, NilpotentElement):
            w_s = NilpotentElement.constant(d, MultiPoly.const(free_vars, w_s))
        image = w_s * w0_inv
        if not image.is_zero() and element_degree(image, degrees) != s:
            raise TheoremViolationError(
                f"Wronski image of sigma_{s} is not homogeneous of degree {s}")
        sigma_images.append(image)

    return OLambdaData(k, d, result, f_sub, g_sub, wr, wr_deriv, f1, f2,
                       sigma_images, w0)


def wronski_map(k, d):
    """Images of the elementary symmetric functions in the quotient algebra.

    Entry s-1 is the normalized Wronskian coefficient ratio assigned to
    sigma_s; gradedness and the invertible constant term are verified during
    construction.
    """
    return universal_operator_data(k, d).sigma_images


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------

def character_olambda(k, d, order):
    """Closed-form graded characters of the quotient and its b-free part.

    Returns (full, b_free) as truncated series; certified against the
    factorization through the nilpotent-ring character and the direct
    monomial count elsewhere.
    """
    inner = order + 2 * (k + d) + 6
    one = QSeries.one(inner)
    numerator = one - QSeries.q_power(d + 1, inner)
    base = numerator * qseries_pochhammer(k + d + 1, inner).inverse() \
        * qseries_pochhammer(k, inner).inverse()
    b_free = base.truncate(order)
    shift = QSeries(-d, [1] + [0] * (inner + d), inner)
    full = (numerator * base * geometric(1, inner) * shift).truncate(order)
    return full, b_free


def character_nilpotent_ring(d, order):
    """Character of the truncated ring: 1 + q^{-1} + ... + q^{-d}."""
    coeffs = [1] * (d + 1) + [0] * order
    return QSeries(-d, coeffs, order)


def monomial_count_character(k, d, order):
    """Direct monomial count of the normal form under the tail grading.

    Counts pairs (b-power, free monomial); independent of the pochhammer
    closed form.
    """
    degrees = free_variable_degrees(k, d)
    lo = -d
    counts = {e: 0 for e in range(lo, order + 1)}
    poly_counts = _monomial_counts_by_degree(sorted(degrees.values()),
                                             order + d)
    for m in range(d + 1):
        for deg, cnt in enumerate(poly_counts):
            e = deg - m
            if lo <= e <= order:
                counts[e] += cnt
    return QSeries(lo, [counts[e] for e in range(lo, order + 1)], order)


def _monomial_counts_by_degree(var_degrees, max_degree):
    counts = [0] * (max_degree + 1)
    counts[0] = 1
    for w in var_degrees:
        for e in range(w, max_degree + 1):
            counts[e] += counts[e - w]
    return counts


def character_identities_check(k, d, order=20):
    """All character identities at (k, d): factorization, module match, count."""
    full, b_free = character_olambda(k, d, order)
    n = 2 * k + d
    checks = {
        "factorization": full == character_nilpotent_ring(d, order) * b_free,
        "module_character": full == char_isotypical_closed(n, k, order),
        "monomial_count": full == monomial_count_character(k, d, order),
    }
    return {"name": f"characters_k{k}_d{d}", "pass": all(checks.values()),
            "failures": [key for key, ok in checks.items() if not ok]}


# ---------------------------------------------------------------------------
# Generation by the operator coefficients
# ---------------------------------------------------------------------------

def _monomials_of_degree(var_degrees, names, degree):
    """All exponent tuples over the named positive-degree variables."""
    out = []

    def rec(idx, remaining, current):
        if idx == len(names):
            if remaining == 0:
                out.append(tuple(current))
            return
        w = var_degrees[names[idx]]
        for e in range(remaining // w, -1, -1):
            rec(idx + 1, remaining - e * w, current + [e])

    rec(0, degree, [])
    return out


class _GradedCoordinates:
    """Coordinate maps for the graded pieces of the normal form."""

    def __init__(self, k, d, lo, hi):
        self.k, self.d = k, d
        self.names = list(free_variable_names(k, d))
        self.degrees = free_variable_degrees(k, d)
        self.index = {}
        for delta in range(lo, hi + 1):
            mapping = {}
            for m in range(d + 1):
                poly_deg = delta + m
                if poly_deg < 0:
                    continue
                for mono in _monomials_of_degree(self.degrees, self.names,
                                                 poly_deg):
                    mapping[(m, mono)] = len(mapping)
            self.index[delta] = mapping

    def piece_dimension(self, delta):
        return len(self.index.get(delta, {}))

    def vectorize(self, x: NilpotentElement, delta):
        mapping = self.index[delta]
        vec = [Fraction(0)] * len(mapping)
        for m, poly in enumerate(x.coeffs):
            if not isinstance(poly, MultiPoly):
                if poly != 0:
                    key = (m, (0,) * len(self.names))
                    vec[mapping[key]] += Fraction(poly)
                continue
            for exps, c in poly.terms.items():
                key = (m, exps)
                if key not in mapping:
                    raise TheoremViolationError(
                        f"element not homogeneous of degree {delta}")
                vec[mapping[key]] += c
        return vec


def generator_span_check(k, d, degree_bound=3, order=None):
    """The operator coefficients generate every graded piece in the window.

    Span closure of products of the F-coefficients inside the degree window
    [-degree_bound, degree_bound] (extended by d on both sides internally so
    products cannot escape), compared against full piece dimensions.
    """
    data = universal_operator_data(k, d, order)
    degrees = free_variable_degrees(k, d)
    lo, hi = -degree_bound - d, degree_bound + d
    coords = _GradedCoordinates(k, d, lo, hi)
    free_vars = free_variable_names(k, d)
    one = _ring_one(free_vars, d)

    generators = []
    for series, s in ((data.f1, 1), (data.f2, 2)):
        for j, value in enumerate(series, start=1):
            if value.is_zero():
                continue
            deg = element_degree(value, degrees)
            if lo <= deg <= hi:
                generators.append((deg, value))

    spans = {delta: SpanBasis() for delta in range(lo, hi + 1)}
    spans[0].add(coords.vectorize(one, 0))
    frontier = [(0, one)]
    elements = {0: [one]}
    while frontier:
        new_frontier = []
        for deg_x, x in frontier:
            for deg_g, g in generators:
                deg = deg_x + deg_g
                if deg < lo or deg > hi:
                    continue
                product = x * g
                vec = coords.vectorize(product, deg)
                if spans[deg].add(vec):
                    new_frontier.append((deg, product))
                    elements.setdefault(deg, []).append(product)
        frontier = new_frontier

    missing = []
    for delta in range(-degree_bound, degree_bound + 1):
        expected = coords.piece_dimension(delta)
        got = spans[delta].dimension()
        if got != expected:
            missing.append({"degree": delta, "spanned": got,
                            "expected": expected})
    return {"name": f"generator_span_k{k}_d{d}", "pass": not missing,
            "failures": missing}
