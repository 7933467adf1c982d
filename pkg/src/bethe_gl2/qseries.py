"""Truncated Laurent series in q with exact rational coefficients.

A QSeries represents sum_{e=lo}^{order} c_e q^e + O(q^{order+1}); every
operation tracks the window on which the result is still exact, so closed
character formulas and brute-force counts can be compared term by term
without ever trusting coefficients beyond the window.
"""

from fractions import Fraction


class QSeries:
    __slots__ = ("lo", "coeffs", "order")

    def __init__(self, lo, coeffs, order):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != order - lo + 1:
            raise ValueError("coefficient list does not fill the window")
        self.lo = lo
        self.coeffs = coeffs
        self.order = order

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, value, order):
        return cls(0, [Fraction(value)] + [0] * order, order)

    @classmethod
    def one(cls, order):
        return cls.const(1, order)

    @classmethod
    def q_power(cls, e, order):
        """The monomial q^e, exact up to the given order."""
        if e > order:
            raise ValueError("monomial lies beyond the truncation order")
        return cls(e, [1] + [0] * (order - e), order)

    # -- helpers ------------------------------------------------------

    def coefficient(self, e):
        if e > self.order:
            raise ValueError(f"q^{e} lies beyond the exact window")
        if e < self.lo:
            return Fraction(0)
        return self.coeffs[e - self.lo]

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return self.lo + i
        return None

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend the exact window")
        return QSeries(self.lo, self.coeffs[:order - self.lo + 1], order)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.const(other, self.order)
        order = min(self.order, other.order)
        lo = min(self.lo, other.lo)
        coeffs = [self.coefficient(e) + other.coefficient(e)
                  for e in range(lo, order + 1)]
        return QSeries(lo, coeffs, order)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.lo, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.const(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries(self.lo, [other * c for c in self.coeffs],
                           self.order)
        order = min(self.order + other.lo, other.order + self.lo)
        lo = self.lo + other.lo
        out = [Fraction(0)] * (order - lo + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            ea = self.lo + i
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                e = ea + other.lo + j
                if e > order:
                    break
                out[e - lo] += a * b
        return QSeries(lo, out, order)

    __rmul__ = __mul__

    def inverse(self):
        """Reciprocal series; the lowest stored coefficient must be nonzero."""
        if not self.coeffs or self.coeffs[0] == 0:
            raise ZeroDivisionError(
                "series must have nonzero coefficient at its lowest exponent")
        a0 = self.coeffs[0]
        m = len(self.coeffs) - 1
        xs = [Fraction(1) / a0]
        for k in range(1, m + 1):
            s = Fraction(0)
            for i in range(1, k + 1):
                s += self.coeffs[i] * xs[k - i]
            xs.append(-s / a0)
        lo = -self.lo
        return QSeries(lo, xs, lo + m)

    def __eq__(self, other):
        """Exact agreement on the overlap of the two windows."""
        if isinstance(other, (int, Fraction)):
            other = QSeries.const(other, self.order)
        order = min(self.order, other.order)
        lo = min(self.lo, other.lo)
        return all(self.coefficient(e) == other.coefficient(e)
                   for e in range(lo, order + 1))

    __hash__ = None

    def __repr__(self):
        parts = [f"({c})q^{self.lo + i}"
                 for i, c in enumerate(self.coeffs) if c != 0]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(q^{self.order + 1})"


def qseries_pochhammer(a: int, order: int) -> QSeries:
    """(q)_a = prod_{j=1}^{a} (1 - q^j), truncated at the given order."""
    if a < 0:
        raise ValueError("pochhammer index must be >= 0")
    out = QSeries.one(order)
    for j in range(1, a + 1):
        out = out * (QSeries.one(order) - QSeries.q_power(j, order))
    return out


def geometric(j: int, order: int) -> QSeries:
    """1 / (1 - q^j) expanded to the given order."""
    coeffs = [1 if e % j == 0 else 0 for e in range(order + 1)]
    return QSeries(0, coeffs, order)
