"""Truncated power series over a generic exact coefficient ring.

A :class:`TruncSeries` stores exactly ``order`` coefficients of a formal
power series in one variable.  The coefficient ring is pluggable: any type
supporting exact ``+``, ``-``, ``*`` and equality works, described by a small
:class:`Ring` descriptor that knows its zero, one, integer embedding and
(partial) inversion.  No floating point is ever involved; all equalities are
exact and truncation orders are always explicit.

Arithmetic follows the usual truncation rules: the order of a sum or a
product is the minimum of the operand orders.

EXAMPLES::

    >>> from fractions import Fraction
    >>> s = TruncSeries.from_list("t", [1, -1, 2, -6], QRING)
    >>> series_log(s).coeffs
    (Fraction(0, 1), Fraction(-1, 1), Fraction(3, 2), Fraction(-13, 3))
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError


class Ring:
    """Descriptor for an exact commutative coefficient ring.

    The elements themselves implement ``+``, ``-``, ``*``, unary ``-`` and
    ``==``; the descriptor supplies the constants and the operations that
    cannot be expressed through dunders alone.
    """

    def __init__(self, zero, one, from_int, inv=None, div_int=None):
        self.zero = zero
        self.one = one
        self.from_int = from_int
        self._inv = inv
        self._div_int = div_int

    def inv(self, a):
        if self._inv is None:
            raise DomainError("ring does not support inversion")
        return self._inv(a)

    def div_int(self, a, n: int):
        """Divide a ring element by a nonzero integer."""
        if self._div_int is not None:
            return self._div_int(a, n)
        return a * self.inv(self.from_int(n))


def _frac_inv(a: Fraction) -> Fraction:
    if a == 0:
        raise DomainError("division by zero")
    return Fraction(1) / a


#: The rational numbers as a coefficient ring.
QRING = Ring(
    zero=Fraction(0),
    one=Fraction(1),
    from_int=lambda n: Fraction(n),
    inv=_frac_inv,
    div_int=lambda a, n: a / n,
)


class TruncSeries:
    """A truncated power series ``sum_{i<order} c_i v^i + O(v^order)``."""

    __slots__ = ("var", "order", "coeffs", "ring")

    def __init__(self, var: str, coeffs, ring: Ring, order: int | None = None):
        coeffs = tuple(coeffs)
        if order is None:
            order = len(coeffs)
        if order < 0:
            raise DomainError("truncation order must be non-negative")
        if len(coeffs) != order:
            raise DomainError("coefficient count must equal the order")
        self.var = var
        self.order = order
        self.coeffs = coeffs
        self.ring = ring

    # -- construction -------------------------------------------------

    @classmethod
    def from_list(cls, var, values, ring: Ring, order: int | None = None):
        """Build a series from a list of ring elements or plain ints."""
        conv = [v if not isinstance(v, int) else ring.from_int(v) for v in values]
        if order is not None:
            conv = conv[:order] + [ring.zero] * (order - len(conv))
        return cls(var, conv, ring)

    @classmethod
    def zero(cls, var, order, ring: Ring):
        return cls(var, [ring.zero] * order, ring)

    @classmethod
    def one(cls, var, order, ring: Ring):
        if order == 0:
            return cls.zero(var, 0, ring)
        return cls(var, [ring.one] + [ring.zero] * (order - 1), ring)

    @classmethod
    def identity(cls, var, order, ring: Ring):
        """The series ``v`` itself."""
        c = [ring.zero] * order
        if order > 1:
            c[1] = ring.one
        return cls(var, c, ring)

    # -- helpers ------------------------------------------------------

    def _check(self, other: "TruncSeries"):
        if self.var != other.var:
            raise DomainError(f"variable mismatch: {self.var} vs {other.var}")
        if self.ring is not other.ring:
            raise DomainError("coefficient ring mismatch")

    def coefficient(self, i: int):
        if not 0 <= i < self.order:
            raise DomainError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coeffs[i]

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise DomainError("cannot extend a truncated series")
        return TruncSeries(self.var, self.coeffs[:order], self.ring)

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(c == z for c in self.coeffs)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        self._check(other)
        n = min(self.order, other.order)
        return TruncSeries(
            self.var, [self.coeffs[i] + other.coeffs[i] for i in range(n)], self.ring
        )

    def __sub__(self, other):
        self._check(other)
        n = min(self.order, other.order)
        return TruncSeries(
            self.var, [self.coeffs[i] - other.coeffs[i] for i in range(n)], self.ring
        )

    def __neg__(self):
        return TruncSeries(self.var, [-c for c in self.coeffs], self.ring)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scalar_mul(other)
        self._check(other)
        n = min(self.order, other.order)
        z = self.ring.zero
        out = [z] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a == z:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b == z:
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncSeries(self.var, out, self.ring)

    def scalar_mul(self, c):
        if isinstance(c, int):
            c = self.ring.from_int(c)
        return TruncSeries(self.var, [c * a for a in self.coeffs], self.ring)

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and self.var == other.var
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        return f"TruncSeries({self.var!r}, {list(self.coeffs)!r})"

    # -- calculus -----------------------------------------------------

    def derivative(self) -> "TruncSeries":
        if self.order == 0:
            return self
        c = [
            self.ring.from_int(i) * self.coeffs[i] for i in range(1, self.order)
        ]
        return TruncSeries(self.var, c, self.ring)

    def integrate(self) -> "TruncSeries":
        """Antiderivative with zero constant term, one order higher."""
        c = [self.ring.zero] + [
            self.ring.div_int(self.coeffs[i], i + 1) for i in range(self.order)
        ]
        return TruncSeries(self.var, c, self.ring)

    # -- composition and inversion ------------------------------------

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """Substitute ``inner`` (which must have zero constant term)."""
        self._check(inner)
        n = min(self.order, inner.order)
        if n > 0 and inner.coeffs[0] != self.ring.zero:
            raise DomainError("composition requires zero constant term")
        acc = TruncSeries.zero(self.var, n, self.ring)
        inner_n = inner.truncate(n)
        for c in reversed(self.coeffs[:n]):
            acc = acc * inner_n
            acc = TruncSeries(
                self.var, (acc.coeffs[0] + c,) + acc.coeffs[1:], self.ring
            )
        return acc

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; requires an invertible constant term."""
        if self.order == 0:
            return self
        c0 = self.coeffs[0]
        u = self.ring.inv(c0)
        z = self.ring.zero
        out = [z] * self.order
        out[0] = u
        for k in range(1, self.order):
            s = z
            for i in range(1, k + 1):
                a = self.coeffs[i]
                if a == z:
                    continue
                s = s + a * out[k - i]
            out[k] = -(u * s)
        return TruncSeries(self.var, out, self.ring)


def series_log(s: TruncSeries) -> TruncSeries:
    """Logarithm of a series with constant term exactly 1.

    Computed through ``log(s)' = s'/s`` followed by formal integration, so
    only division by integers and by the unit constant term is needed.
    """
    if s.order == 0:
        return s
    if s.coeffs[0] != s.ring.one:
        raise DomainError("series_log requires constant term 1")
    d = s.derivative() * s.truncate(s.order - 1).inverse()
    return d.integrate()


def series_exp(s: TruncSeries) -> TruncSeries:
    """Exponential of a series with zero constant term."""
    if s.order == 0:
        return s
    if s.coeffs[0] != s.ring.zero:
        raise DomainError("series_exp requires zero constant term")
    z = s.ring.zero
    out = [s.ring.one] + [z] * (s.order - 1)
    # e' = e * s'  gives  n e_n = sum_{k=1}^{n} k s_k e_{n-k}
    for n in range(1, s.order):
        acc = z
        for k in range(1, n + 1):
            a = s.coeffs[k]
            if a == z:
                continue
            acc = acc + (s.ring.from_int(k) * a) * out[n - k]
        out[n] = s.ring.div_int(acc, n)
    return TruncSeries(s.var, out, s.ring)


def series_reversion(s: TruncSeries) -> TruncSeries:
    """Compositional inverse of ``s = a1 v + O(v^2)`` with ``a1`` invertible.

    Determined order by order: if ``r`` is correct below order ``n`` then the
    order-``n`` error of ``s(r)`` is linear in the order-``n`` correction with
    slope ``a1``.
    """
    if s.order < 2:
        raise DomainError("reversion needs order at least 2")
    if s.coeffs[0] != s.ring.zero:
        raise DomainError("reversion requires zero constant term")
    a1_inv = s.ring.inv(s.coeffs[1])
    z = s.ring.zero
    out = [z] * s.order
    out[1] = a1_inv
    for n in range(2, s.order):
        partial = TruncSeries(s.var, out[: n + 1], s.ring)
        err = s.truncate(n + 1).compose(partial).coeffs[n]
        out[n] = -(a1_inv * err)
    return TruncSeries(s.var, out, s.ring)
