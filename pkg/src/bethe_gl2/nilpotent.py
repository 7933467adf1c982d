"""The truncated polynomial ring A_d = Q[b] / <b^{d+1}>.

Elements carry their truncation order d explicitly; arithmetic between
elements of different orders is refused rather than silently coerced.
Coefficients are Fractions in the exact case, MultiPoly values for
elements of A_d (x) Q[{f,g}], or mpmath floats for snapped leaf data.
"""

from fractions import Fraction

from .errors import NotInvertibleError, RingMismatchError


def _csub(a, b):
    """a - b across coefficient rings (mpmath floats lack __rsub__ for Fraction)."""
    try:
        return a - b
    except TypeError:
        return -(b - a)


class NilpotentElement:
    """sum_j coeffs[j] * b^j with b^{d+1} = 0, d = order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=()):
        if order < 0:
            raise ValueError("nilpotency order must be >= 0")
        cs = list(coeffs)
        if len(cs) > order + 1:
            raise ValueError(f"{len(cs)} coefficients for order {order}")
        cs.extend(Fraction(0) for _ in range(order + 1 - len(cs)))
        self.order = order
        self.coeffs = cs

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, order, value):
        return cls(order, [value])

    @classmethod
    def b(cls, order, power=1):
        """The monomial b^power (zero when power > order)."""
        if power > order:
            return cls(order)
        cs = [Fraction(0)] * (power + 1)
        cs[power] = Fraction(1)
        return cls(order, cs)

    # -- helpers ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, NilpotentElement):
            if other.order != self.order:
                raise RingMismatchError(
                    f"A_{self.order} vs A_{other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return NilpotentElement.constant(self.order, Fraction(other))
        return None

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def b_valuation(self):
        """Smallest j with coeffs[j] != 0, or order+1 for the zero element."""
        for j, c in enumerate(self.coeffs):
            if c != 0:
                return j
        return self.order + 1

    def shift_down(self, power):
        """Divide by b^power assuming b-valuation >= power (canonical strip)."""
        if self.b_valuation() < power:
            raise ValueError("element is not divisible by b^%d" % power)
        cs = self.coeffs[power:] + [Fraction(0)] * power
        return NilpotentElement(self.order, cs)

    def map_coeffs(self, fn):
        return NilpotentElement(self.order, [fn(c) for c in self.coeffs])

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return NilpotentElement(
            self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return NilpotentElement(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return NilpotentElement(
            self.order,
            [_csub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self.order
        out = [Fraction(0)] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(0, d + 1 - i):
                bj = other.coeffs[j]
                if bj == 0:
                    continue
                out[i + j] = out[i + j] + a * bj
        return NilpotentElement(d, out)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative powers: use inverse()")
        result = NilpotentElement.constant(self.order, Fraction(1))
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        """Inverse by a truncated geometric series; needs an invertible coeffs[0]."""
        c0 = self.coeffs[0]
        u_inv = _invert_unit(c0)
        d = self.order
        # x = c0 (1 + n) with n nilpotent:  x^{-1} = c0^{-1} sum_j (-n)^j.
        n = NilpotentElement(d, [Fraction(0)] + [u_inv * c for c in self.coeffs[1:]])
        total = NilpotentElement.constant(d, Fraction(1))
        term = NilpotentElement.constant(d, Fraction(1))
        for _ in range(d):
            term = -(term * n)
            if term.is_zero():
                break
            total = total + term
        return total.map_coeffs(lambda c: u_inv * c)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.order, tuple(str(c) for c in self.coeffs)))

    def __repr__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(f"{c}")
            elif j == 1:
                parts.append(f"({c})*b")
            else:
                parts.append(f"({c})*b^{j}")
        return " + ".join(parts) if parts else "0"


def _invert_unit(c):
    """Invert a coefficient-ring element (Fraction, constant MultiPoly, or float)."""
    if isinstance(c, (int, Fraction)):
        if c == 0:
            raise NotInvertibleError("constant term is zero")
        return Fraction(1, 1) / Fraction(c)
    if hasattr(c, "as_constant"):  # MultiPoly
        value = c.as_constant()
        if value is None or value == 0:
            raise NotInvertibleError(
                "constant term is not an invertible polynomial")
        return type(c).const(c.vars, Fraction(1) / value)
    if c == 0:
        raise NotInvertibleError("constant term is zero")
    return 1 / c


def nilpotent_invert(x: NilpotentElement) -> NilpotentElement:
    """Inverse of x in A_d; errors when the b^0 coefficient is not a unit."""
    return x.inverse()
