"""Laurent polynomials in the two formal variables T and S = T - Q.

:class:`LaurentTS` is a sparse map ``(i, j) -> Fraction`` representing
``sum c_{ij} T^i S^j``.  The pair (T, S) is the natural coordinate system
for the equivariant localization sums: all of their building blocks are
homogeneous Laurent polynomials in these two variables.

Univariate Laurent polynomials in T alone are the special case ``j == 0``
throughout and no separate type is introduced for them.

The module also supplies the two structural operators
``D = ((S - T)/S) d/dS`` and its formal inverse :func:`d_inverse`
(integration from the point ``S = T``, i.e. ``Q = 0``), with exactness
checked: an integrand outside the image of ``D`` raises
:class:`~modulitr.errors.LogTermError`.

EXAMPLES::

    >>> V0 = LaurentTS({(0, 0): 1, (-1, 1): -1})   # (T - S)/T
    >>> apply_d(V0) == LaurentTS({(0, -1): 1, (-1, 0): -1})  # 1/S - 1/T
    True
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, LogTermError


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise DomainError(f"not an exact scalar: {c!r}")


class LaurentTS:
    """Sparse exact Laurent polynomial in T and S."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for (i, j), v in coeffs.items():
                v = _coerce(v)
                if v != 0:
                    d[(int(i), int(j))] = v
        self.c = d

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.c

    def min_t_exp(self):
        """Lowest exponent of T present, or None for the zero polynomial."""
        return min((i for i, _ in self.c), default=None)

    def min_s_exp(self):
        return min((j for _, j in self.c), default=None)

    def is_homogeneous(self, degree: int | None = None):
        """True when all monomials share total degree i + j.

        With ``degree`` given, additionally requires that common degree
        (the zero polynomial is homogeneous of every degree).
        """
        degs = {i + j for i, j in self.c}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.c.get((i, j), Fraction(0))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            w = out.get(k, Fraction(0)) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        r = LaurentTS()
        r.c = out
        return r

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        r = LaurentTS()
        r.c = {k: -v for k, v in self.c.items()}
        return r

    def __mul__(self, other):
        if isinstance(other, LaurentTS):
            out = {}
            for (i1, j1), v1 in self.c.items():
                for (i2, j2), v2 in other.c.items():
                    k = (i1 + i2, j1 + j2)
                    w = out.get(k, Fraction(0)) + v1 * v2
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
            r = LaurentTS()
            r.c = out
            return r
        return self.scalar_mul(other)

    __rmul__ = __mul__

    def scalar_mul(self, v):
        v = _coerce(v)
        r = LaurentTS()
        if v:
            r.c = {k: c * v for k, c in self.c.items()}
        return r

    def scalar_div(self, v):
        v = _coerce(v)
        if v == 0:
            raise DomainError("division by zero")
        return self.scalar_mul(Fraction(1) / v)

    def __eq__(self, other):
        return isinstance(other, LaurentTS) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __repr__(self):
        if not self.c:
            return "LaurentTS(0)"
        parts = [
            f"{v}*T^{i}*S^{j}" for (i, j), v in sorted(self.c.items())
        ]
        return "LaurentTS(" + " + ".join(parts) + ")"

    # -- substitutions ------------------------------------------------

    def subs_t0(self) -> "LaurentTS":
        """Set T = 0; requires no negative powers of T."""
        mt = self.min_t_exp()
        if mt is not None and mt < 0:
            raise DomainError("T = 0 substitution on a polynomial with T poles")
        r = LaurentTS()
        r.c = {(0, j): v for (i, j), v in self.c.items() if i == 0}
        return r

    def subs_s_eq_t(self) -> "LaurentTS":
        """Set S = T, collapsing onto a univariate Laurent polynomial in T."""
        out = {}
        for (i, j), v in self.c.items():
            k = (i + j, 0)
            w = out.get(k, Fraction(0)) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        r = LaurentTS()
        r.c = out
        return r

    def q_expansion(self, order: int) -> dict:
        """Expand S = T - Q in powers of Q up to (and excluding) ``order``.

        Returns a map ``(q_exponent, t_exponent) -> Fraction``.  Negative
        powers ``S^j`` are expanded as ``T^j (1 - Q/T)^j`` with the
        generalized binomial series, so arbitrarily negative T-exponents may
        appear in the result.
        """
        out = {}
        for (i, j), v in self.c.items():
            # S^j = T^j * sum_m binom(j, m) (-Q/T)^m
            binom = Fraction(1)
            for m in range(order):
                coeff = v * binom * (-1) ** m
                if coeff:
                    k = (m, i + j - m)
                    w = out.get(k, Fraction(0)) + coeff
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
                binom = binom * Fraction(j - m, m + 1)
        return out


def monomial(i: int, j: int, v=1) -> LaurentTS:
    return LaurentTS({(i, j): v})


ZERO = LaurentTS()
ONE = monomial(0, 0)


def deriv_s(f: LaurentTS) -> LaurentTS:
    out = {}
    for (i, j), v in f.c.items():
        if j != 0:
            out[(i, j - 1)] = v * j
    r = LaurentTS()
    r.c = {k: v for k, v in out.items() if v}
    return r


def apply_d(f: LaurentTS) -> LaurentTS:
    """The operator ``D = ((S - T)/S) d/dS`` on Laurent polynomials."""
    df = deriv_s(f)
    out = {}
    for (i, j), v in df.c.items():
        for k, w in (((i, j), v), ((i + 1, j - 1), -v)):
            acc = out.get(k, Fraction(0)) + w
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
    r = LaurentTS()
    r.c = out
    return r


def d_inverse(w: LaurentTS) -> LaurentTS:
    """Solve ``D U = w`` with ``U = 0`` at ``S = T`` (i.e. at Q = 0).

    Equivalently the formal integral ``int_0^Q ((T - q)/q) w dq`` written in
    the variables (T, S).  Exactness demands two obstructions to vanish:

    * ``w`` must vanish at ``S = T`` (otherwise the integrand has a simple
      pole at ``q = 0`` producing ``log Q``);
    * after dividing by ``T - S`` the integrand must have no ``S^{-1}``
      component (a simple pole at ``T - Q = 0`` producing ``log(T - Q)``).

    Either failure raises :class:`LogTermError`.
    """
    if not w.subs_s_eq_t().is_zero():
        raise LogTermError("log term: integrand does not vanish at Q = 0")

    # E = S*w / (T - S): solve (T - S) E = S*w coefficient-wise in S, from
    # the top S-degree down; the left-over bottom coefficient must vanish.
    p = {}  # S-exponent -> {T-exponent: Fraction}, for S*w
    for (i, j), v in w.c.items():
        p.setdefault(j + 1, {})[i] = v
    if not p:
        return LaurentTS()
    hi = max(p)
    lo = min(p)
    e = {}  # S-exponent -> {T-exponent: Fraction} for E
    carry = {}  # e_{k} being built while walking down, as T-polynomial
    for k in range(hi, lo - 2, -1):
        # equation at S^k:  T*e_k - e_{k-1} = p_k  =>  e_{k-1} = T*e_k - p_k
        nxt = {}
        for t, v in carry.items():
            nxt[t + 1] = nxt.get(t + 1, Fraction(0)) + v
        for t, v in p.get(k, {}).items():
            nxt[t] = nxt.get(t, Fraction(0)) - v
        nxt = {t: v for t, v in nxt.items() if v}
        if carry:
            e[k] = carry
        carry = nxt
    if carry:
        raise LogTermError("log term: simple pole at Q = 0 after division")

    if any(v for v in e.get(-1, {}).values()):
        raise LogTermError("log term: S^{-1} component in the integrand")

    # U = -int E dS, then subtract the S = T evaluation so U(Q=0) = 0.
    u = LaurentTS()
    out = {}
    for k, ts in e.items():
        for t, v in ts.items():
            key = (t, k + 1)
            acc = out.get(key, Fraction(0)) - Fraction(v, k + 1)
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    u.c = out
    const = u.subs_s_eq_t()
    return u - const
