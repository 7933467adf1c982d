"""Dense univariate polynomials over any of the library's coefficient rings.

Coefficients ascend by power of u and may be Fractions, NilpotentElements,
MultiPolys, exact matrices, or mpmath floats; the only requirements are
+, -, * and an exact equality-with-zero test.  Trailing zeros are trimmed,
so degree() is exact.
"""

from fractions import Fraction

from .errors import NotInvertibleError, ShapeError


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="u"):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs
        self.var = var

    @classmethod
    def monomial(cls, power, coefficient=Fraction(1), var="u"):
        return cls([Fraction(0)] * power + [coefficient], var=var)

    @classmethod
    def from_roots(cls, roots, var="u"):
        """Monic polynomial prod (u - r) over the ring of the roots."""
        p = cls([Fraction(1)], var=var)
        for r in roots:
            p = p * cls([-r, Fraction(1)], var=var)
        return p

    # -- queries ------------------------------------------------------

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, power):
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def map_coeffs(self, fn):
        return UniPoly([fn(c) for c in self.coeffs], var=self.var)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other, self.var)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, var=self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], var=self.var)

    def __sub__(self, other):
        return self + (-_as_poly(other, self.var))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = _as_poly(other, self.var)
        if self.is_zero() or other.is_zero():
            return UniPoly(var=self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, var=self.var)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative exponent")
        result = UniPoly([Fraction(1)], var=self.var)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = _as_poly(other, self.var)
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def derivative(self):
        return UniPoly(
            [i * c for i, c in enumerate(self.coeffs)][1:], var=self.var)

    def __call__(self, point):
        total = None
        for c in reversed(self.coeffs):
            total = c if total is None else total * point + c
        if total is None:
            return Fraction(0)
        return total

    def scale(self, factor):
        return UniPoly([factor * c for c in self.coeffs], var=self.var)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(f"({c})")
            elif i == 1:
                parts.append(f"({c})*{self.var}")
            else:
                parts.append(f"({c})*{self.var}^{i}")
        return " + ".join(parts)


def _as_poly(x, var):
    if isinstance(x, UniPoly):
        return x
    return UniPoly([x], var=var)


def poly_wronskian(f: UniPoly, g: UniPoly) -> UniPoly:
    """Wr(f, g) = f*g' - f'*g over a common coefficient ring."""
    return f * g.derivative() - f.derivative() * g


def laurent_at_infinity(num: UniPoly, den: UniPoly, order: int,
                        leading_inverse=None):
    """Coefficients [c_1, ..., c_order] of num/den = sum_{j>=1} c_j u^{-j}.

    Requires deg num < deg den.  The leading coefficient of den must be
    invertible; pass its inverse explicitly for coefficient rings where
    division is not defined by `/`.
    """
    m = den.degree()
    if m < 0:
        raise ZeroDivisionError("expansion of division by zero")
    if num.degree() >= m:
        raise ShapeError("numerator degree must be below denominator degree")
    lc = den.leading()
    if leading_inverse is None:
        if hasattr(lc, "inverse"):
            leading_inverse = lc.inverse()
        elif isinstance(lc, (int, Fraction)):
            if lc == 0:
                raise NotInvertibleError("zero leading coefficient")
            leading_inverse = Fraction(1) / Fraction(lc)
        else:
            leading_inverse = 1 / lc
    out = []
    for j in range(1, order + 1):
        acc = num.coefficient(m - j)
        for t in range(1, j):
            acc = acc - den.coefficient(m - j + t) * out[t - 1]
        out.append(leading_inverse * acc)
    return out


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over Q (Fraction coefficients only)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, _poly_mod(a, b)
    if a.is_zero():
        return a
    inv = Fraction(1) / a.leading()
    return a.scale(inv)


def _poly_mod(a: UniPoly, b: UniPoly) -> UniPoly:
    inv = Fraction(1) / b.leading()
    r = a
    while not r.is_zero() and r.degree() >= b.degree():
        shift = r.degree() - b.degree()
        factor = r.leading() * inv
        r = r - UniPoly.monomial(shift, factor) * b
    return r


def is_squarefree(f: UniPoly) -> bool:
    """Exact squarefree test over Q via gcd(f, f')."""
    if f.degree() <= 0:
        return True
    return poly_gcd(f, f.derivative()).degree() == 0
