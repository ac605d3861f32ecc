"""Chekhov-Eynard-Orantin topological recursion, plain and Z2-equivariant,
on two genus-0 spectral curves, with exact expansion extraction.

Two curves are implemented:

* the *spin curve*: ``x = c (z + 1/z)`` with ``c^2 = -Q/2``,
  ``dy = 2 dz/z`` (y itself is the multivalued ``2 log z`` and is never
  represented globally), equivariant bidifferential
  ``B = dz1 dz2 [1/(z1 - z2)^2 + 1/(1 + z1 z2)^2]`` for the free
  Z2-action ``iota(z) = -1/z``, deck transformation ``sigma(z) = 1/z``
  and simple critical points ``z = +1, -1``;
* the *parabola curve*: ``x = w^2/2``, ``B = dw1 dw2/(w1 - w2)^2``,
  ``sigma(w) = -w``, critical point ``w = 0``; y enters only through the
  odd local series solving ``(w^2 + 2 eps) y' + w y = 2`` with
  ``eps = 2 c^2``, so every coefficient stays in the base field.

All arithmetic is exact over Q(c).  Only Laurent monomials in c ever need
inversion, so coefficients are kept as sparse Laurent polynomials in c
(:class:`CLaurent`).  n-point differentials are stored in partial
fractions over the critical points: the basis one-forms are
``e_{p,k}(z) = dz/(z - p)^k`` with ``k >= 2`` (first-order poles would be
residues, which the recursion forbids), and an n-point differential is a
symmetric tensor recorded as a map from the sorted tuple of per-variable
descriptors ``(p, k)`` to the common ordered coefficient.

The recursion used is

    omega_{g,n}(z_1,...) = 1/2 sum_{xi} res_{z -> xi}
        [int_z^{sigma z} B(z_1, .)] / [(y(sigma z) - y(z)) dx(z)]
        * ( omega_{g-1,n+1}(z, sigma z, rest)
            + sum' omega_{g1}(z, I1) omega_{g2}(sigma z, I2) ),

with the primed sum excluding the two (0, 1) factors.

Descendant tables are read off near ``z = 0`` in the variable
``zeta = 1/x``, in the basis ``d((2k-1)!!/x^{2k+1}) = (2k+1)!! zeta^{2k}
d zeta``, normalized by ``2^{2g-2+n}``; all surviving powers of c are
even and convert exactly to powers of Q via ``c^2 = -Q/2``.

EXAMPLES::

    >>> eng = TREngine(build_spin_curve())
    >>> expand_descendants(eng, 0, 3, 0)[(0, 0, 0)]
    {1: Fraction(-1, 1)}
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .errors import ConventionError, DomainError, ExactError


def _factorial(n: int) -> int:
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


def double_factorial_odd(k: int) -> int:
    """(2k+1)!!"""
    r = 1
    for i in range(3, 2 * k + 2, 2):
        r *= i
    return r


# ---------------------------------------------------------------------------
# Coefficient field: Laurent polynomials in c (c^2 = -Q/2 stays formal)
# ---------------------------------------------------------------------------


class CLaurent:
    """Sparse exact Laurent polynomial in the formal parameter c."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for e, v in coeffs.items():
                if not isinstance(v, Fraction):
                    v = Fraction(v)
                if v != 0:
                    d[int(e)] = v
        self.c = d

    @classmethod
    def const(cls, v) -> "CLaurent":
        return cls({0: Fraction(v)})

    @classmethod
    def c_power(cls, e: int, v=1) -> "CLaurent":
        return cls({e: Fraction(v)})

    def is_zero(self) -> bool:
        return not self.c

    def __add__(self, other):
        out = dict(self.c)
        for e, v in other.c.items():
            w = out.get(e, Fraction(0)) + v
            if w:
                out[e] = w
            else:
                out.pop(e, None)
        r = CLaurent()
        r.c = out
        return r

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        r = CLaurent()
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return CLaurent()
            r = CLaurent()
            r.c = {e: v * other for e, v in self.c.items()}
            return r
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = out.get(e, Fraction(0)) + v1 * v2
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        r = CLaurent()
        r.c = out
        return r

    __rmul__ = __mul__

    def inv(self) -> "CLaurent":
        """Inverse; defined for monomials only, which is all the recursion
        ever needs (kernel denominators have monomial leading terms)."""
        if len(self.c) != 1:
            raise DomainError(f"cannot invert non-monomial in c: {self!r}")
        ((e, v),) = self.c.items()
        return CLaurent({-e: Fraction(1) / v})

    def __eq__(self, other):
        return isinstance(other, CLaurent) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __repr__(self):
        if not self.c:
            return "CL(0)"
        return (
            "CL("
            + " + ".join(f"{v}*c^{e}" for e, v in sorted(self.c.items()))
            + ")"
        )

    def to_q_poly(self) -> dict:
        """Rewrite even powers of c as powers of Q via ``c^2 = -Q/2``.

        Returns ``{q_exponent: Fraction}``; odd powers of c raise
        :class:`ConventionError` (they signal a sign or branch bug).
        """
        out = {}
        for e, v in self.c.items():
            if e % 2:
                raise ConventionError(f"odd power of c survives: c^{e}")
            a = e // 2
            out[a] = out.get(a, Fraction(0)) + v * Fraction((-1) ** a, 2**a)
        return {k: v for k, v in out.items() if v}


CL_ZERO = CLaurent()
CL_ONE = CLaurent.const(1)


# ---------------------------------------------------------------------------
# Truncated Laurent series in a local coordinate u, coefficients in Q(c)
# ---------------------------------------------------------------------------


class LSeries:
    """Truncated Laurent series ``sum_{e < order} a_e u^e`` over CLaurent.

    ``order`` records the exponent where truncation starts: coefficients
    with ``e < order`` are exact, the rest are unknown.
    """

    __slots__ = ("a", "order")

    def __init__(self, coeffs, order):
        self.order = order
        self.a = {
            int(e): v
            for e, v in coeffs.items()
            if e < order and not v.is_zero()
        }

    @classmethod
    def zero(cls, order):
        return cls({}, order)

    @classmethod
    def mono(cls, e, v, order):
        if not isinstance(v, CLaurent):
            v = CLaurent.const(v)
        return cls({e: v}, order)

    def coefficient(self, e: int) -> CLaurent:
        if e >= self.order:
            raise DomainError(
                f"coefficient u^{e} beyond truncation {self.order}"
            )
        return self.a.get(e, CL_ZERO)

    def valuation(self):
        return min(self.a, default=None)

    def __add__(self, other):
        order = min(self.order, other.order)
        out = dict(self.a)
        for e, v in other.a.items():
            w = out.get(e, CL_ZERO) + v
            if w.is_zero():
                out.pop(e, None)
            else:
                out[e] = w
        return LSeries(out, order)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LSeries({e: -v for e, v in self.a.items()}, self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CLaurent)):
            if not isinstance(other, CLaurent):
                other = CLaurent.const(other)
            if other.is_zero():
                return LSeries.zero(self.order)
            return LSeries(
                {e: v * other for e, v in self.a.items()}, self.order
            )
        v1 = self.valuation()
        v2 = other.valuation()
        if v1 is None or v2 is None:
            return LSeries.zero(min(self.order, other.order))
        order = min(self.order + v2, other.order + v1)
        out = {}
        for e1, c1 in self.a.items():
            for e2, c2 in other.a.items():
                e = e1 + e2
                if e >= order:
                    continue
                w = out.get(e, CL_ZERO) + c1 * c2
                if w.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = w
        return LSeries(out, order)

    __rmul__ = __mul__

    def inverse(self) -> "LSeries":
        """Multiplicative inverse; leading coefficient must be a monomial."""
        v = self.valuation()
        if v is None:
            raise DomainError("inverse of zero series")
        lead = self.a[v].inv()
        n = self.order - v  # number of exactly known coefficients
        out = {-v: lead}
        for k in range(1, n):
            acc = CL_ZERO
            for j in range(1, k + 1):
                t = self.a.get(v + j)
                o = out.get(-v + k - j)
                if t is None or o is None:
                    continue
                acc = acc + t * o
            if not acc.is_zero():
                out[-v + k] = -(lead * acc)
        return LSeries(out, -v + n)

    def power(self, m: int) -> "LSeries":
        if m < 0:
            return self.inverse().power(-m)
        r = LSeries.mono(0, CL_ONE, self.order)
        for _ in range(m):
            r = r * self
        return r

    def __repr__(self):
        parts = [f"({v!r})u^{e}" for e, v in sorted(self.a.items())]
        return f"LSeries({' + '.join(parts) or '0'}; O(u^{self.order}))"


def geometric_series(a0, tail: LSeries) -> LSeries:
    """``1 / (a0 + tail)`` with ``tail`` of positive valuation."""
    if not isinstance(a0, CLaurent):
        a0 = CLaurent.const(a0)
    return (LSeries.mono(0, a0, tail.order) + tail).inverse()


# ---------------------------------------------------------------------------
# Spectral curves
# ---------------------------------------------------------------------------


class SpinCurve:
    """Z2-equivariant spectral curve ``x = c(z + 1/z)``, ``dy = 2dz/z``.

    The free Z2-action is ``iota(z) = -1/z`` with both characters equal
    to the sign representation and trivial beta; the deck transformation
    of x is the global ``sigma(z) = 1/z`` fixing both critical points
    ``z = +1`` and ``z = -1``.
    """

    name = "spin"
    criticals = (Fraction(1), Fraction(-1))
    group_order = 2

    def __init__(self):
        self._check_invariants()

    # -- exact sample-point invariant checks ---------------------------

    @staticmethod
    def _x(z: Fraction) -> CLaurent:
        return CLaurent.c_power(1, z + 1 / z)

    @staticmethod
    def _dx(z: Fraction) -> CLaurent:
        return CLaurent.c_power(1, 1 - 1 / z**2)

    @staticmethod
    def _dy(z: Fraction) -> Fraction:
        return Fraction(2) / z

    @staticmethod
    def _iota(z: Fraction) -> Fraction:
        return -1 / z

    @staticmethod
    def _sigma(z: Fraction) -> Fraction:
        return 1 / z

    @classmethod
    def _b(cls, z1: Fraction, z2: Fraction) -> Fraction:
        return 1 / (z1 - z2) ** 2 + 1 / (1 + z1 * z2) ** 2

    def _check_invariants(self):
        samples = [Fraction(2), Fraction(3), Fraction(-5, 2), Fraction(7, 3)]
        for z in samples:
            assert self._x(self._sigma(z)) == self._x(z)
            # dx(iota z) = -dx(z) and dy(iota z) = -dy(z) as differentials:
            # (f o iota)'(z) = f'(iota z) iota'(z) with iota'(z) = 1/z^2.
            iz = self._iota(z)
            di = 1 / z**2
            assert self._dx(iz) * di == -self._dx(z)
            assert self._dy(iz) * di == -self._dy(z)
        for z1, z2 in itertools.permutations(samples, 2):
            # beta is trivial: B(iota z1, z2) d(iota z1) dz2 = B dz1 dz2,
            # which also makes B - B^{G,beta} identically zero, hence
            # regular along the translated diagonals.
            assert self._b(self._iota(z1), z2) * (1 / z1**2) == self._b(z1, z2)
            assert self._b(z1, z2) == self._b(z2, z1)
        for xi in self.criticals:
            assert self._dx(xi).is_zero()
            # the critical point is simple: x'' = 2c/z^3 does not vanish
            assert not CLaurent.c_power(1, 2 / xi**3).is_zero()
            assert self._dy(xi) != 0

    # -- local series at a critical point ------------------------------

    def sigma_shift(self, xi: Fraction, order: int) -> LSeries:
        """``sigma(xi + u) - xi = -xi u / (xi + u)`` as a u-series."""
        inv = geometric_series(xi, LSeries.mono(1, CL_ONE, order))
        return LSeries.mono(1, CLaurent.const(-xi), order + 1) * inv

    def dsigma(self, xi: Fraction, order: int) -> LSeries:
        """``sigma'(xi + u) = -1/(xi + u)^2``."""
        inv = geometric_series(xi, LSeries.mono(1, CL_ONE, order))
        return -(inv * inv)

    def delta_y(self, xi: Fraction, order: int) -> LSeries:
        """``y(sigma z) - y(z)`` integrated from xi: d(y o sigma - y) =
        -4 dz/z, so this is the series of ``-4 log(1 + u/xi)``."""
        out = {}
        for k in range(1, order):
            out[k] = CLaurent.const(
                Fraction(-4, k) * (-1) ** (k - 1) / xi**k
            )
        return LSeries(out, order)

    def dx_series(self, xi: Fraction, order: int) -> LSeries:
        """``x'(xi + u) = c (1 - 1/(xi+u)^2)``."""
        inv = geometric_series(xi, LSeries.mono(1, CL_ONE, order))
        one = LSeries.mono(0, CL_ONE, order)
        return (one - inv * inv) * CLaurent.c_power(1)

    def basis_at(self, xi, p, k, at_sigma: bool, order: int) -> LSeries:
        """u-series of ``e_{p,k} = dz/(z-p)^k`` at ``z = xi+u`` or at
        ``z = sigma(xi+u)`` (including the Jacobian of sigma)."""
        if at_sigma:
            zshift = self.sigma_shift(xi, order)
            jac = self.dsigma(xi, order)
        else:
            zshift = LSeries.mono(1, CL_ONE, order)
            jac = LSeries.mono(0, CL_ONE, order)
        if p == xi:
            base = zshift.power(-k)
        else:
            base = geometric_series(xi - p, zshift).power(k)
        return base * jac

    def kernel_numerator(self, xi, mmax: int, order: int) -> dict:
        """The primitive ``int_z^{sigma z} B(z1, .)`` decomposed over the
        z1-basis: returns ``{(p, m+1): u-series}``.

        Both pieces of B expand through ``t(u) = 1/(xi+u) - xi``:

            sum_{m>=1} (t^m - u^m) [e_{xi, m+1} - (-1)^m e_{-xi, m+1}].
        """
        t = self.sigma_shift(xi, order)  # equals 1/(xi+u) - xi here
        out = {}
        tm = LSeries.mono(0, CL_ONE, order)
        for m in range(1, mmax + 1):
            tm = tm * t
            diff = tm - LSeries.mono(m, CL_ONE, order)
            if diff.a:
                out[(xi, m + 1)] = diff
                out[(-xi, m + 1)] = diff * Fraction((-1) ** (m + 1))
        return out

    def b_against(self, xi, at_sigma: bool, order: int) -> dict:
        """``B(z_rec, z1)`` with the recursion slot at ``z = xi+u`` (or
        its sigma image), decomposed over the z1-basis:
        ``{(p, m+2): u-series}``.

        The diagonal part contributes at the pole ``p = xi`` and the
        iota-translated part at ``p = -xi``.
        """
        if at_sigma:
            w = self.sigma_shift(xi, order)  # z_rec - xi
            jac = self.dsigma(xi, order)
        else:
            w = LSeries.mono(1, CL_ONE, order)
            jac = LSeries.mono(0, CL_ONE, order)
        inv = geometric_series(xi, w)  # 1/z_rec
        minus_t = LSeries.mono(0, CLaurent.const(xi), order) - inv
        scale = inv * inv * jac  # jac / z_rec^2
        out = {}
        wm = LSeries.mono(0, CL_ONE, order)
        mm = LSeries.mono(0, CL_ONE, order)
        for m in range(0, order):
            if m > 0:
                wm = wm * w
                mm = mm * minus_t
            diag = wm * jac * (m + 1)
            if diag.a:
                out[(xi, m + 2)] = (
                    out.get((xi, m + 2), LSeries.zero(order)) + diag
                )
            tr = mm * scale * (m + 1)
            if tr.a:
                out[(-xi, m + 2)] = (
                    out.get((-xi, m + 2), LSeries.zero(order)) + tr
                )
        return out

    def b_diag(self, xi, order: int) -> LSeries:
        """``B(z, sigma z)`` along ``z = xi + u`` (a pure u-Laurent).

        The iota part is ``d iota(z) d sigma(z) / (iota z - sigma z)^2``
        with ``iota z - sigma z = -2/z``, which collapses to
        ``sigma'(z)/4``.
        """
        s = self.sigma_shift(xi, order)
        jac = self.dsigma(xi, order)
        u = LSeries.mono(1, CL_ONE, order)
        part1 = (u - s).power(-2) * jac
        part2 = jac * Fraction(1, 4)
        return part1 + part2


class KNCurve:
    """Spectral curve ``x = w^2/2`` with ``B = dw1 dw2/(w1-w2)^2``.

    y is determined by the exact ODE ``(w^2 + 2 eps) y' + w y = 2`` with
    ``eps = 2 c^2``; only its odd local series at the critical point
    ``w = 0`` is ever used, and every coefficient is a monomial in c.
    """

    name = "kn"
    criticals = (Fraction(0),)
    group_order = 1

    def __init__(self):
        samples = [Fraction(2), Fraction(-3), Fraction(5, 2)]
        for w in samples:
            assert self._x(self._sigma(w)) == self._x(w)
        assert self._dx(Fraction(0)) == 0
        # the critical point is simple (x'' = 1) and dy(0) != 0
        assert not self.y_series(3).coefficient(1).is_zero()

    @staticmethod
    def _x(w: Fraction) -> Fraction:
        return w**2 / 2

    @staticmethod
    def _dx(w: Fraction) -> Fraction:
        return w

    @staticmethod
    def _sigma(w: Fraction) -> Fraction:
        return -w

    def y_series(self, order: int) -> LSeries:
        """Odd series of y at w = 0 from the recurrence
        ``y_{m+1} = (2 delta_{m0} - m y_{m-1}) / (2 eps (m+1))``,
        with ``1/(2 eps) = c^{-2}/4``."""
        inv_2eps = CLaurent.c_power(-2, Fraction(1, 4))
        coeffs = {0: CL_ZERO}
        for m in range(0, order):
            top = CLaurent.const(2 if m == 0 else 0) - (
                coeffs.get(m - 1, CL_ZERO) * m
            )
            coeffs[m + 1] = top * inv_2eps * Fraction(1, m + 1)
        return LSeries(coeffs, order + 1)

    def sigma_shift(self, xi, order: int) -> LSeries:
        return LSeries.mono(1, CLaurent.const(-1), order)

    def dsigma(self, xi, order: int) -> LSeries:
        return LSeries.mono(0, CLaurent.const(-1), order)

    def delta_y(self, xi, order: int) -> LSeries:
        """``y(-u) - y(u) = -2 y(u)`` since y is odd."""
        return self.y_series(order) * Fraction(-2)

    def dx_series(self, xi, order: int) -> LSeries:
        return LSeries.mono(1, CL_ONE, order)

    def basis_at(self, xi, p, k, at_sigma: bool, order: int) -> LSeries:
        assert p == 0
        if at_sigma:
            # e_{0,k}(-u) d(-u) = (-1)^{k+1} u^{-k} du
            return LSeries.mono(-k, CLaurent.const((-1) ** (k + 1)), order)
        return LSeries.mono(-k, CL_ONE, order)

    def kernel_numerator(self, xi, mmax: int, order: int) -> dict:
        out = {}
        for m in range(1, mmax + 1, 2):
            out[(Fraction(0), m + 1)] = LSeries.mono(
                m, CLaurent.const(-2), order
            )
        return out

    def b_against(self, xi, at_sigma: bool, order: int) -> dict:
        sign = -1 if at_sigma else 1
        out = {}
        for m in range(0, order):
            v = Fraction((m + 1) * sign ** (m + 1))
            out[(Fraction(0), m + 2)] = LSeries.mono(
                m, CLaurent.const(v), order
            )
        return out

    def b_diag(self, xi, order: int) -> LSeries:
        """``B(w, -w) dw d(-w) = -du^2/(2u)^2``."""
        return LSeries.mono(-2, CLaurent.const(Fraction(-1, 4)), order)


def build_spin_curve() -> SpinCurve:
    """Construct the Z2-equivariant spin curve, asserting its invariants."""
    return SpinCurve()


def build_kn_curve() -> KNCurve:
    """Construct the parabola curve, asserting its invariants."""
    return KNCurve()


# ---------------------------------------------------------------------------
# The recursion engine
# ---------------------------------------------------------------------------


def pole_cap(g: int, n: int) -> int:
    """Maximal allowed pole order at a critical point: ``6g - 4 + 2n``."""
    return 6 * g - 4 + 2 * n


def _remove_one(key: tuple, d) -> tuple:
    i = key.index(d)
    return key[:i] + key[i + 1 :]


class TREngine:
    """Computes and stores the n-point differentials of a spectral curve.

    A stable ``omega_{g,n}`` is a dict mapping the sorted tuple of
    per-variable descriptors ``(pole, order)`` to the ordered coefficient
    (a :class:`CLaurent`); symmetry makes the ordered coefficient
    well-defined on multisets, and it is asserted during assembly.
    """

    def __init__(self, curve):
        self.curve = curve
        self._omegas = {}

    def omega(self, g: int, n: int) -> dict:
        if 2 * g - 2 + n <= 0:
            raise DomainError(f"unstable omega ({g},{n})")
        key = (g, n)
        if key not in self._omegas:
            self._omegas[key] = self._compute(g, n)
        return self._omegas[key]

    # -- evaluation of lower data in the recursion slot(s) --------------

    def _slot_series(self, g: int, r: int, xi, at_sigma: bool, order: int):
        """``omega_{g, 1+r}`` with its first variable on the recursion
        slot: a dict {rest-descriptor tuple (sorted): u-series}."""
        if g == 0 and r == 1:
            return {
                ((p, k),): s
                for (p, k), s in self.curve.b_against(
                    xi, at_sigma, order
                ).items()
            }
        out = {}
        for key, coeff in self.omega(g, 1 + r).items():
            for d in sorted(set(key)):
                rest = _remove_one(key, d)
                s = (
                    self.curve.basis_at(xi, d[0], d[1], at_sigma, order)
                    * coeff
                )
                acc = out.get(rest)
                out[rest] = s if acc is None else acc + s
        return out

    def _pair_series(self, g: int, r: int, xi, order: int):
        """``omega_{g, 2+r}(z, sigma z, rest)``: dict {rest tuple:
        u-series}.

        The stored coefficient is per ordered assignment, so each ordered
        pair of descriptor types contributes exactly once.
        """
        if g == 0 and r == 0:
            return {(): self.curve.b_diag(xi, order)}
        out = {}
        for key, coeff in self.omega(g, 2 + r).items():
            for d1 in sorted(set(key)):
                rest1 = _remove_one(key, d1)
                s1 = self.curve.basis_at(xi, d1[0], d1[1], False, order)
                for d2 in sorted(set(rest1)):
                    rest = _remove_one(rest1, d2)
                    s2 = self.curve.basis_at(xi, d2[0], d2[1], True, order)
                    s = s1 * s2 * coeff
                    acc = out.get(rest)
                    out[rest] = s if acc is None else acc + s
        return out

    def _compute(self, g: int, n: int) -> dict:
        cap = pole_cap(g, n)
        order = 2 * cap + 8
        contributions = {}
        for xi in self.curve.criticals:
            den_inv = (
                self.curve.delta_y(xi, order)
                * self.curve.dx_series(xi, order)
            ).inverse()
            bracket = {}

            def add(rest, series):
                acc = bracket.get(rest)
                bracket[rest] = series if acc is None else acc + series

            if g >= 1:
                for rest, s in self._pair_series(
                    g - 1, n - 1, xi, order
                ).items():
                    add(rest, s)
            for g1 in range(0, g + 1):
                g2 = g - g1
                for r1 in range(0, n):
                    r2 = n - 1 - r1
                    if (g1 == 0 and r1 == 0) or (g2 == 0 and r2 == 0):
                        continue
                    left = self._slot_series(g1, r1, xi, False, order)
                    right = self._slot_series(g2, r2, xi, True, order)
                    for k1, s1 in left.items():
                        for k2, s2 in right.items():
                            add(
                                tuple(sorted(k1 + k2)),
                                s1 * s2 * _merge_weight(k1, k2),
                            )
            if not bracket:
                continue
            numer = self.curve.kernel_numerator(xi, cap + 2, order)
            for rest, series in bracket.items():
                phi = series * den_inv
                for (p, m1), gser in numer.items():
                    acc = CL_ZERO
                    for j, gcoef in gser.a.items():
                        if j >= 0 and -1 - j in phi.a:
                            acc = acc + gcoef * phi.a[-1 - j]
                    acc = acc * Fraction(1, 2)
                    if acc.is_zero():
                        continue
                    if m1 > cap:
                        raise ExactError(
                            f"pole order {m1} exceeds cap {cap} at ({g},{n})"
                        )
                    key = ((p, m1),) + rest
                    cur = contributions.get(key, CL_ZERO) + acc
                    if cur.is_zero():
                        contributions.pop(key, None)
                    else:
                        contributions[key] = cur
        return self._assemble(contributions, g, n)

    @staticmethod
    def _assemble(contributions: dict, g: int, n: int) -> dict:
        """Regroup slot-1-distinguished ordered coefficients by their full
        descriptor multiset, asserting symmetry of the result."""
        out = {}
        firsts = {}
        for key, val in contributions.items():
            full = tuple(sorted(key))
            firsts.setdefault(full, set()).add(key[0])
            prev = out.get(full)
            if prev is None:
                out[full] = val
            else:
                assert prev == val, (
                    f"asymmetric omega ({g},{n}) at {full}:"
                    f" {prev!r} != {val!r}"
                )
        for full, seen in firsts.items():
            assert seen == set(full), (
                f"omega ({g},{n}) at {full}: slot-1 coverage {seen}"
            )
            for p, k in full:
                assert k >= 2, f"residue term in omega ({g},{n}) at {full}"
        return out


def _merge_weight(k1: tuple, k2: tuple) -> int:
    """Number of ways to split the labeled spectator variables realizing
    the multiset split ``k1 | k2``: a product of binomial coefficients."""
    merged = list(k1 + k2)
    w = 1
    for d in set(merged):
        w *= comb(merged.count(d), k1.count(d))
    return w


# ---------------------------------------------------------------------------
# Expansion extraction (spin curve)
# ---------------------------------------------------------------------------


def z_of_zeta(order: int) -> LSeries:
    """Series of z in ``zeta = 1/x`` near z = 0: solves
    ``z = c zeta (1 + z^2)``; odd in zeta, with Catalan-number
    coefficients times odd powers of c."""
    z = LSeries.mono(1, CLaurent.c_power(1), order)
    for _ in range(order // 2 + 1):
        z = (LSeries.mono(0, CL_ONE, order) + z * z) * LSeries.mono(
            1, CLaurent.c_power(1), order
        )
    return z


def _series_derivative(s: LSeries) -> LSeries:
    return LSeries(
        {e - 1: v * e for e, v in s.a.items() if e != 0}, s.order - 1
    )


def _zeta_profile(d, order: int) -> LSeries:
    """zeta-series of ``e_{p,k}(z(zeta)) z'(zeta)`` on the spin curve."""
    z = z_of_zeta(order + 1)
    p, k = d
    base = geometric_series(CLaurent.const(-p), z).power(k)
    return base * _series_derivative(z)


def expand_descendants(engine: TREngine, g: int, n: int, kmax: int) -> dict:
    """Descendant table of ``omega_{g,n}`` on the spin curve.

    Returns ``{sorted exponent tuple: {q_exponent: Fraction}}`` where the
    entry at ``(k_1..k_n)`` is the coefficient of
    ``prod (2k_i+1)!!/x_i^{2k_i+2} dx_i`` divided by ``2^{2g-2+n}``; odd
    surviving powers of c raise :class:`ConventionError`.

    The basis one-form equals ``-d((2k-1)!!/x^{2k+1})``, so this choice
    is a global sign ``(-1)^n`` relative to the exact-form basis; it is
    the one under which the pinned value at ``g = 0``, ``k = (0,0,0)``
    comes out as ``-Q``.
    """
    if (g, n) == (0, 2):
        raise DomainError("use descendant_table_02 for the (0,2) case")
    omega = engine.omega(g, n)
    order = 2 * kmax + 2
    profiles = {}
    for key in omega:
        for d in key:
            if d not in profiles:
                profiles[d] = _zeta_profile(d, order)
    vectors = {
        k: {d: prof.coefficient(2 * k) for d, prof in profiles.items()}
        for k in range(kmax + 1)
    }
    memo = {(): omega}

    def contracted(ks: tuple) -> dict:
        if ks in memo:
            return memo[ks]
        prev = contracted(ks[1:])
        vec = vectors[ks[0]]
        out = {}
        for key, coeff in prev.items():
            for d in sorted(set(key)):
                w = vec[d]
                if w.is_zero():
                    continue
                rest = _remove_one(key, d)
                acc = out.get(rest, CL_ZERO) + coeff * w
                if acc.is_zero():
                    out.pop(rest, None)
                else:
                    out[rest] = acc
        memo[ks] = out
        return out

    norm = Fraction((-1) ** n, 2 ** (2 * g - 2 + n))
    out = {}
    for ks in itertools.combinations_with_replacement(range(kmax + 1), n):
        val = contracted(tuple(reversed(ks))).get((), CL_ZERO)
        if val.is_zero():
            continue
        scale = norm
        for k in ks:
            scale /= double_factorial_odd(k)
        q = (val * scale).to_q_poly()
        if q:
            out[ks] = q
    return out


def odd_zeta_check(engine: TREngine, g: int, kmax: int) -> bool:
    """For one-variable differentials: every odd zeta coefficient of the
    expansion vanishes, as required for a combination of the basis
    one-forms ``(2k+1)!! zeta^{2k} d zeta``."""
    omega = engine.omega(g, 1)
    order = 2 * kmax + 2
    for e in range(1, order, 2):
        acc = CL_ZERO
        for key, coeff in omega.items():
            acc = acc + _zeta_profile(key[0], order).coefficient(e) * coeff
        if not acc.is_zero():
            return False
    return True


def descendant_table_02(kmax: int) -> dict:
    """Descendant table of the unstable ``omega^{(0)}_2`` on the spin
    curve: the expansion of ``B - dx1 dx2/(x1 - x2)^2`` near z = 0.

    In the variables ``zeta_i = 1/x_i`` the subtracted kernel is
    ``dzeta1 dzeta2/(zeta1 - zeta2)^2``, and the diagonal part of B
    minus it equals
    ``d_1 d_2 log((z(zeta1) - z(zeta2))/(zeta1 - zeta2))``; the iota
    part ``dz1 dz2/(1 + z1 z2)^2`` is regular and expanded directly.
    Returns ``{(k1, k2) sorted: {q_exponent: Fraction}}``.
    """
    # the truncation bounds the *total* bidegree, so it must cover twice
    # the largest per-variable exponent 2*kmax + 1
    order = 4 * kmax + 6
    z = z_of_zeta(order)
    zc = dict(z.a)
    ratio = {}
    for e, v in zc.items():
        for i in range(e):
            ratio[(i, e - 1 - i)] = ratio.get((i, e - 1 - i), CL_ZERO) + v
    log = _bi_log(ratio, order)
    total = {
        (i - 1, j - 1): v * (i * j)
        for (i, j), v in log.items()
        if i >= 1 and j >= 1
    }
    dz = {e - 1: v * e for e, v in zc.items() if e >= 1}
    zpow = {0: CL_ONE}
    iota = {}
    for m in range(0, order + 1):
        if m > 0:
            np = {}
            for e1, v1 in zpow.items():
                for e2, v2 in zc.items():
                    if e1 + e2 <= order:
                        np[e1 + e2] = np.get(e1 + e2, CL_ZERO) + v1 * v2
            zpow = np
            if not zpow:
                break
        w = Fraction((m + 1) * (-1) ** m)
        for e1, v1 in zpow.items():
            for e2, v2 in zpow.items():
                iota[(e1, e2)] = iota.get((e1, e2), CL_ZERO) + v1 * v2 * w
    for (i, j), v in iota.items():
        for e1, w1 in dz.items():
            for e2, w2 in dz.items():
                key = (i + e1, j + e2)
                if key[0] <= order and key[1] <= order:
                    total[key] = total.get(key, CL_ZERO) + v * w1 * w2
    out = {}
    for k1 in range(kmax + 1):
        for k2 in range(k1, kmax + 1):
            v = total.get((2 * k1, 2 * k2), CL_ZERO)
            if v.is_zero():
                continue
            scale = Fraction(
                1, double_factorial_odd(k1) * double_factorial_odd(k2)
            )
            q = (v * scale).to_q_poly()
            if q:
                out[(k1, k2)] = q
    return out


def _bi_log(series: dict, order: int) -> dict:
    """log(series / leading-term) for a bivariate series over CLaurent
    whose constant term is an invertible monomial."""
    inv0 = series[(0, 0)].inv()
    f = {
        k: v * inv0
        for k, v in series.items()
        if k != (0, 0) and k[0] + k[1] <= order
    }
    out = {}
    power = {(0, 0): CL_ONE}
    for m in range(1, order + 1):
        np = {}
        for (i1, j1), v1 in power.items():
            for (i2, j2), v2 in f.items():
                i, j = i1 + i2, j1 + j2
                if i + j > order:
                    continue
                np[(i, j)] = np.get((i, j), CL_ZERO) + v1 * v2
        power = np
        if not power:
            break
        w = Fraction((-1) ** (m + 1), m)
        for k, v in power.items():
            out[k] = out.get(k, CL_ZERO) + v * w
    return out


def oracle_table_02(kmax: int) -> dict:
    """Closed form of the (0,2) descendant table:

        des(k1, k2) = (-1)^{k1+k2+1} Q^{k1+k2+1}
                       C(k1+k2, k1) / (k1+k2+1)!.
    """
    out = {}
    for k1 in range(kmax + 1):
        for k2 in range(k1, kmax + 1):
            j = k1 + k2 + 1
            v = Fraction((-1) ** j * comb(k1 + k2, k1), _factorial(j))
            out[(k1, k2)] = {j: v}
    return out


# ---------------------------------------------------------------------------
# Doubling comparison: spin omega vs parabola omega-tilde
# ---------------------------------------------------------------------------


def kn_basis_on_double(k: int, cap: int) -> dict:
    """Partial fractions of ``dw/w^k`` under ``w = c(z - 1/z)`` in the
    z-basis ``{(+-1, j)}``, including first-order terms.

    ``dw/w^k = c^{1-k} z^{k-2}(z^2+1)/(z^2-1)^k dz``; the function decays
    at infinity and is regular at 0 for k >= 2, so it equals the sum of
    its polar parts at z = 1 and z = -1.  The polar coefficients at a
    pole xi are Taylor coefficients of the regular cofactor
    ``(xi+u)^{k-2}((xi+u)^2+1)/(2 xi + u)^k``.
    """
    if k < 2:
        raise DomainError("doubling comparison needs pole order >= 2")
    order = k + cap + 4
    out = {}
    for xi in (Fraction(1), Fraction(-1)):
        num = _poly_mul(
            _poly_pow({0: Fraction(xi), 1: Fraction(1)}, k - 2),
            _poly_add(
                _poly_pow({0: Fraction(xi), 1: Fraction(1)}, 2),
                {0: Fraction(1)},
            ),
        )
        numser = LSeries(
            {e: CLaurent.const(v) for e, v in num.items()}, order
        )
        gser = numser * geometric_series(
            CLaurent.const(2 * xi), LSeries.mono(1, CL_ONE, order)
        ).power(k)
        for j in range(1, k + 1):
            coef = gser.coefficient(k - j)
            if not coef.is_zero():
                out[(xi, j)] = coef * CLaurent.c_power(1 - k)
    return out


def _poly_mul(p1: dict, p2: dict) -> dict:
    out = {}
    for e1, v1 in p1.items():
        for e2, v2 in p2.items():
            out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + v1 * v2
    return {e: v for e, v in out.items() if v}


def _poly_add(p1: dict, p2: dict) -> dict:
    out = dict(p1)
    for e, v in p2.items():
        out[e] = out.get(e, Fraction(0)) + v
    return {e: v for e, v in out.items() if v}


def _poly_pow(p: dict, m: int) -> dict:
    out = {0: Fraction(1)}
    for _ in range(m):
        out = _poly_mul(out, p)
    return out


def doubled_kn_omega(engine_kn: TREngine, g: int, n: int) -> dict:
    """``2^{2g-2+n}`` times the parabola ``omega_{g,n}`` rewritten in the
    spin curve's z-basis via ``w = c(z - 1/z)``.

    First-order descriptors coming from individual basis elements must
    cancel in the total; any surviving one makes the comparison with the
    spin-curve differential fail.
    """
    omega = engine_kn.omega(g, n)
    cap = pole_cap(g, n)
    basis_map = {}
    for key in omega:
        for (p, k) in key:
            if (p, k) not in basis_map:
                basis_map[(p, k)] = kn_basis_on_double(k, cap)
    # Stored coefficients are per ordered assignment, so work with the
    # associated polynomial: the multiset M carries a_M * (n!/prod mult!),
    # the substitution acts factor by factor, and the ordered coefficient
    # of the result is recovered by dividing the same symmetry factor out.
    poly = {}
    for key, coeff in omega.items():
        mono = {(): coeff * _orderings(key)}
        for d in key:
            nxt = {}
            for part, v in mono.items():
                for tgt, w in basis_map[d].items():
                    np_key = tuple(sorted(part + (tgt,)))
                    acc = nxt.get(np_key, CL_ZERO) + v * w
                    if acc.is_zero():
                        nxt.pop(np_key, None)
                    else:
                        nxt[np_key] = acc
            mono = nxt
        for np_key, v in mono.items():
            acc = poly.get(np_key, CL_ZERO) + v
            if acc.is_zero():
                poly.pop(np_key, None)
            else:
                poly[np_key] = acc
    scale = Fraction(2 ** (2 * g - 2 + n))
    return {
        k: v * (scale / _orderings(k)) for k, v in poly.items()
    }


def _orderings(key: tuple) -> int:
    """Distinct orderings of a multiset: ``n!/prod(multiplicity!)``."""
    r = _factorial(len(key))
    for d in set(key):
        r //= _factorial(key.count(d))
    return r


def omega_to_text(omega: dict, g: int, n: int) -> str:
    """Structured-text export of one n-point differential: one line per
    basis multiset, descriptors then c-coefficients."""
    lines = [f"omega g={g} n={n}"]
    for key in sorted(omega):
        desc = ",".join(f"{p}^{k}" for p, k in key)
        cs = " ".join(
            f"c^{e}:{v}" for e, v in sorted(omega[key].c.items())
        )
        lines.append(f"{desc} | {cs}")
    return "\n".join(lines)
