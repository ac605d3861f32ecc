"""Equivariant localization sums for the spin Gromov-Witten theory of the
projective line, and their comparison against shifted Kontsevich-Witten
correlators and the J-class pipeline.

The correlators live over the moduli of stable maps to P^1 twisted by
O(-1); torus localization reduces them to sums over *star rooted trees*:
one root vertex over 0 carrying a moduli space of curves with the marked
points, joined by edges (Galois covers of P^1 of degrees d_i) to vertices
over infinity each carrying a one-pointed moduli space weighted by Hodge
integrals.  Everything here is exact: contributions are Laurent
polynomials in the equivariant weight T with rational coefficients, and
the degree-d counts are assembled with bookkeeping variable Q.

The module provides:

* the rational functions ``V_k`` and ``V_{k,l}`` (Laurent polynomials in
  T and S = T - Q) together with their Lambert-type X-series forms,
  X = (Q/T) e^{-Q/T};
* ``equiv_descendant``: the degree-d equivariant descendant correlator as
  an exact Laurent polynomial in T;
* ``hat_P`` / ``shifted_kw_ancestor``: the ancestor potential expressed
  through the Kontsevich-Witten potential with shifted times
  ``t_k -> t_k - hat P_k / hbar`` and rescaled ``hbar -> S hbar``;
* ancestor/descendant transforms (the triangular substitution
  ``t_k -> sum_m Q^m/m! t_{k+m}``);
* the J-pipeline: descendants predicted by pairing the classes ``J_p``
  against psi monomials;
* the ``[T^0 S^d]`` coefficient check tying the localization ancestors to
  the J-classes plus the one-marked-point lambda-class correction term.

EXAMPLES::

    >>> V(1) == LaurentTS({(0, -1): 1, (-1, 0): -1})   # 1/S - 1/T
    True
    >>> j_pipeline_descendant(0, (0, 0, 0))
    {1: Fraction(-1, 1)}
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb

from .correlators import CorrelatorTable, default_table
from .errors import DomainError
from .hodge import HodgeTable, bernoulli, hodge_one_point
from .kappa import integral_j
from .laurent import ZERO, LaurentTS, apply_d, d_inverse, monomial
from .series import QRING, TruncSeries, series_exp


def _factorial(n: int) -> int:
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


# ---------------------------------------------------------------------------
# The V functions
# ---------------------------------------------------------------------------

#: V_0 = Q/T = (T - S)/T.
V0 = LaurentTS({(0, 0): 1, (-1, 1): -1})


@lru_cache(maxsize=None)
def V(k: int) -> LaurentTS:
    """``V_k = (((S-T)/S) d/dS)^k (T-S)/T`` as an exact Laurent polynomial.

    EXAMPLES::

        >>> V(2) == LaurentTS({(1, -3): 1, (0, -2): -1})   # (T-S)/S^3
        True
    """
    if k < 0:
        raise DomainError("negative V index")
    if k == 0:
        return V0
    return apply_d(V(k - 1))


@lru_cache(maxsize=None)
def V2(k: int, l: int) -> LaurentTS:
    """``V_{k,l}``: the formal antiderivative of ``V_{k+1} V_{l+1}`` under
    the operator ``((S-T)/S) d/dS``, normalized to vanish at ``S = T``.

    The integrand is always exact (no logarithmic obstruction); a failure
    would signal an implementation bug and raises ``LogTermError``.
    """
    if k < 0 or l < 0:
        raise DomainError("negative V2 index")
    if l > k:
        return V2(l, k)
    return d_inverse(V(k + 1) * V(l + 1))


def bernoulli_pole(k: int, l: int) -> LaurentTS:
    """The single irregular monomial of ``V_{k,l}`` for ``k, l >= 1``:
    ``(-1)^{k+1} B_{k+l} / ((k+l) T^{k+l+1})``."""
    if k < 1 or l < 1:
        raise DomainError("Bernoulli pole defined for k, l >= 1")
    return monomial(
        -(k + l + 1), 0, Fraction((-1) ** (k + 1)) * bernoulli(k + l) / (k + l)
    )


def x_series(order: int) -> TruncSeries:
    """``X = u e^{-u}`` as a truncated series in ``u = Q/T``."""
    u = TruncSeries.identity("u", order, QRING)
    return u * series_exp(-u)


def v_x_series(k: int, order: int) -> TruncSeries:
    """X-series form of ``T^k V_k``: ``sum_d X^d d^{d+k-1}/d!`` in u = Q/T."""
    x = x_series(order)
    acc = TruncSeries.zero("u", order, QRING)
    xp = TruncSeries.one("u", order, QRING)
    for d in range(1, order):
        xp = xp * x
        acc = acc + xp.scalar_mul(Fraction(d ** (d + k - 1), _factorial(d)))
    return acc


def v2_x_series(k: int, l: int, order: int) -> TruncSeries:
    """X-series form of ``T^{k+l+1} V_{k,l}``:
    ``sum X^{d1+d2} d1^{d1+k} d2^{d2+l} / ((d1+d2) d1! d2!)``."""
    x = x_series(order)
    powers = [TruncSeries.one("u", order, QRING)]
    for _ in range(order):
        powers.append(powers[-1] * x)
    acc = TruncSeries.zero("u", order, QRING)
    for d1 in range(1, order):
        for d2 in range(1, order - d1 + 1):
            if d1 + d2 >= order + 1:
                continue
            c = Fraction(
                d1 ** (d1 + k) * d2 ** (d2 + l),
                (d1 + d2) * _factorial(d1) * _factorial(d2),
            )
            acc = acc + powers[d1 + d2].scalar_mul(c)
    return acc


def laurent_u_series(f: LaurentTS, order: int) -> TruncSeries:
    """Expand a homogeneous Laurent polynomial in (T, S) as a series in
    ``u = Q/T``, normalized by ``T^{-deg}``: returns ``T^{-deg} f`` with
    ``S = T(1 - u)``."""
    if not f.is_homogeneous():
        raise DomainError("u-expansion requires a homogeneous polynomial")
    acc = TruncSeries.zero("u", order, QRING)
    one_minus_u = TruncSeries.from_list("u", [1, -1], QRING, order)
    pow_cache = {}
    for (i, j), v in sorted(f.c.items()):
        if j not in pow_cache:
            if j >= 0:
                p = TruncSeries.one("u", order, QRING)
                for _ in range(j):
                    p = p * one_minus_u
            else:
                p = TruncSeries.one("u", order, QRING)
                inv = one_minus_u.inverse()
                for _ in range(-j):
                    p = p * inv
            pow_cache[j] = p
        acc = acc + pow_cache[j].scalar_mul(v)
    return acc


# ---------------------------------------------------------------------------
# Star rooted trees and the equivariant descendant correlators
# ---------------------------------------------------------------------------


class StarTree:
    """A star rooted tree: root genus and a multiset of (genus, degree)
    labels for the edges/non-root vertices."""

    __slots__ = ("g0", "edges")

    def __init__(self, g0: int, edges):
        self.g0 = g0
        self.edges = tuple(sorted(edges))

    @property
    def genus(self) -> int:
        return self.g0 + sum(g for g, _ in self.edges)

    @property
    def degree(self) -> int:
        return sum(d for _, d in self.edges)

    def symmetry_factor(self) -> Fraction:
        """1 / prod(multiplicity!) over repeated (genus, degree) labels."""
        f = Fraction(1)
        for _, group in itertools.groupby(self.edges):
            f /= _factorial(len(tuple(group)))
        return f

    def __repr__(self):
        return f"StarTree(g0={self.g0}, edges={list(self.edges)})"

    def __eq__(self, other):
        return (
            isinstance(other, StarTree)
            and self.g0 == other.g0
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.g0, self.edges))


def _degree_splits(d: int, parts: int, lo: int = 1):
    """Non-decreasing tuples of `parts` positive integers summing to d."""
    if parts == 0:
        if d == 0:
            yield ()
        return
    if parts == 1:
        if d >= lo:
            yield (d,)
        return
    for first in range(lo, d // parts + 1):
        for rest in _degree_splits(d - first, parts - 1, first):
            yield (first,) + rest


def _genus_assignments(g_rem: int, count: int):
    """All tuples of `count` genera in [0, g_rem] with sum <= g_rem."""
    if count == 0:
        yield ()
        return
    for first in range(g_rem + 1):
        for rest in _genus_assignments(g_rem - first, count - 1):
            yield (first,) + rest


def enumerate_star_trees(g: int, n: int, d: int):
    """All star rooted trees of total genus g and total degree d >= 1,
    as (StarTree, symmetry factor) pairs with unordered edge multisets.

    The symmetry factor ``1/prod(mult!)`` replaces the ordered-edge
    ``1/|E|!`` convention: summing identical contributions over the
    orderings of ``|E|`` labeled edges and dividing by ``|E|!`` is the
    same as summing over multisets with the multinomial correction.
    """
    if d < 1:
        raise DomainError("tree enumeration needs degree >= 1")
    seen = {}
    for ecount in range(1, d + 1):
        for dsplit in _degree_splits(d, ecount):
            for g0 in range(g + 1):
                for gsplit in _genus_assignments(g - g0, ecount):
                    if g0 + sum(gsplit) != g:
                        continue
                    tree = StarTree(g0, zip(gsplit, dsplit))
                    seen[tree] = tree.symmetry_factor()
    return sorted(seen.items(), key=lambda ts: (ts[0].g0, ts[0].edges))


@lru_cache(maxsize=None)
def vertex_factor(gi: int, di: int, table: HodgeTable | None = None) -> LaurentTS:
    """Localization weight of a non-root vertex of genus ``gi`` reached by
    an edge of degree ``di``, as a Laurent polynomial in T.

    For ``gi = 0`` the vertex is unstable and contributes 1.  For
    ``gi >= 1`` it is the one-point Hodge integral sum

        sum_{a} (-1)^{gi+l} T^{gi-a} (di/T)^{l+2} H(gi, a, l),
        l = 2 gi - 2 - a,

    which is homogeneous of T-degree ``-gi``.
    """
    if gi == 0:
        return monomial(0, 0)
    acc = ZERO
    for a in range(0, min(gi, 2 * gi - 2) + 1):
        l = 2 * gi - 2 - a
        h = hodge_one_point(gi, a, l, table)
        if h == 0:
            continue
        coeff = Fraction((-1) ** (gi + l)) * h * Fraction(di ** (l + 2))
        acc = acc + monomial(gi - a - l - 2, 0, coeff)
    assert acc.is_zero() or acc.is_homogeneous(-gi)
    return acc


def _compositions(total: int, parts: int):
    """Ordered tuples of `parts` non-negative integers summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _padded_partitions(total: int, parts: int):
    """Multisets of `parts` non-negative integers summing to total, as
    non-increasing tuples (partitions padded with zeros)."""
    def gen(rem, slots, cap):
        if slots == 0:
            if rem == 0:
                yield ()
            return
        for first in range(min(rem, cap), -1, -1):
            if first == 0 and rem > 0:
                return
            for rest in gen(rem - first, slots - 1, first):
                yield (first,) + rest
    yield from gen(total, parts, total)


def _submultisets(counts):
    """All sub-count vectors of a count vector (list of ints)."""
    if not counts:
        yield ()
        return
    for rest in _submultisets(counts[1:]):
        for c in range(counts[0] + 1):
            yield (c,) + rest


def _monomial_symmetric(dgroups, evalues, ecounts) -> Fraction:
    """``sum over distinct assignments of the exponent multiset to the
    edge slots of prod d_slot^{e_slot}``.

    ``dgroups`` lists (degree value, slot count); the exponent multiset is
    given by distinct ``evalues`` with multiplicities ``ecounts``.  Slots in
    a group share a degree, so the sum only depends on how many exponents
    of each value land in each group; each split contributes a multinomial
    placement count.
    """
    if not dgroups:
        return Fraction(1) if sum(ecounts) == 0 else Fraction(0)
    (dval, slots), rest = dgroups[0], dgroups[1:]
    total = Fraction(0)
    for sub in _submultisets(list(ecounts)):
        taken = sum(sub)
        if taken > slots:
            continue
        # place `sub` exponents into `slots` labeled slots of degree dval;
        # leftover slots get exponent 0 implicitly only if 0 is in evalues,
        # so require the multiset to be consumed exactly across all groups.
        ways = Fraction(_factorial(slots), _factorial(slots - taken))
        weight = Fraction(1)
        for v, c in zip(evalues, sub):
            ways /= _factorial(c)
            weight *= Fraction(dval ** v) ** c if v else Fraction(1)
        tail = _monomial_symmetric(
            rest, evalues, tuple(e - s for e, s in zip(ecounts, sub))
        )
        if tail:
            total += ways * weight * tail
    return total


def _root_integral(
    g0: int, ks: tuple, dlist: tuple, table: CorrelatorTable
) -> LaurentTS:
    """The root-vertex integral: psi powers at the legs against the
    expanded edge propagators ``1/(1 - d_i psi_{n+i} / T)``.

    Stable root: a single dimension shell survives from each geometric
    series.  The unstable cases use the closed bookkeeping conventions

        int_{M01} 1/(1 - a psi)                  = a^{-2},
        int_{M02} 1/((1 - a psi_1)(1 - b psi_2)) = (a + b)^{-1},
        int_{M02} psi_1^k / (1 - b psi_2)        = (-1)^k / b^{k+1}.
    """
    n = len(ks)
    ecount = len(dlist)
    if 2 * g0 - 2 + n + ecount > 0:
        budget = 3 * g0 - 3 + n + ecount - sum(ks)
        if budget < 0:
            return ZERO
        dgroups = [
            (v, len(tuple(grp)))
            for v, grp in itertools.groupby(sorted(dlist))
        ]
        total = Fraction(0)
        for emultiset in _padded_partitions(budget, ecount):
            corr = table.correlator(g0, ks + emultiset)
            if corr == 0:
                continue
            evalues = sorted(set(emultiset))
            ecounts = tuple(emultiset.count(v) for v in evalues)
            weight = _monomial_symmetric(dgroups, evalues, ecounts)
            if weight:
                total += corr * weight
        return monomial(-budget, 0, total) if total else ZERO
    # unstable root conventions (g0 = 0 throughout)
    if g0 != 0:
        raise DomainError("unstable root with positive genus")
    if n == 0 and ecount == 1:
        return monomial(2, 0, Fraction(1, dlist[0] ** 2))
    if n == 0 and ecount == 2:
        return monomial(1, 0, Fraction(1, dlist[0] + dlist[1]))
    if n == 1 and ecount == 1:
        k = ks[0]
        return monomial(k + 1, 0, Fraction((-1) ** k, dlist[0] ** (k + 1)))
    raise DomainError(f"unhandled unstable root (n={n}, |E|={ecount})")


@lru_cache(maxsize=None)
def equiv_descendant(g: int, ks: tuple, d: int) -> LaurentTS:
    """Degree-d equivariant descendant correlator, exact Laurent in T.

    This is the coefficient of ``Q^d`` in the correlator generating series
    with the overall normalization that makes the genus-0 three-point
    descendant series equal to ``-Q``:

        sum over star trees of
        T^{-d} * T^{2 g0 - 2 + n + |E|} (-1)^{|E|} * (symmetry factor)
        * prod_i d_i^{d_i - 1}/d_i! * (root integral) * prod_i (vertex).
    """
    if d < 1:
        raise DomainError("localization degrees start at 1")
    ks = tuple(sorted(ks))
    n = len(ks)
    table = default_table()
    total = ZERO
    for tree, sym in enumerate_star_trees(g, n, d):
        ecount = len(tree.edges)
        coeff = sym * Fraction((-1) ** ecount)
        for gi, di in tree.edges:
            coeff *= Fraction(di ** (di - 1), _factorial(di))
        dlist = tuple(di for _, di in tree.edges)
        root = _root_integral(tree.g0, ks, dlist, table)
        if root.is_zero():
            continue
        part = root.scalar_mul(coeff) * monomial(
            2 * tree.g0 - 2 + n + ecount - d, 0
        )
        for gi, di in tree.edges:
            if gi >= 1:
                part = part * vertex_factor(gi, di)
        total = total + part
    return total


# ---------------------------------------------------------------------------
# hat P and the shifted Kontsevich-Witten ancestors
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def hat_P(k: int, hbar_order: int = 2) -> tuple:
    """Coefficients of ``hbar^{2h}`` in ``hat P_k``, ``h = 0..hbar_order``.

    ``hat P_k = delta_{k>=2} V_k
       + sum_{g1>=1} hbar^{2 g1} sum_{a+l=2g1-2} (-1)^{g1+l} T^{g1-a}
             V_{k+l+2} * int psi^l lambda_{g1} lambda_a``.

    EXAMPLES::

        >>> hat_P(2)[0] == V(2)
        True
    """
    out = []
    for h in range(hbar_order + 1):
        if h == 0:
            out.append(V(k) if k >= 2 else ZERO)
            continue
        acc = ZERO
        for a in range(0, 2 * h - 1):
            l = 2 * h - 2 - a
            hv = hodge_one_point(h, a, l)
            if hv == 0:
                continue
            acc = acc + (
                V(k + l + 2)
                * monomial(h - a, 0, Fraction((-1) ** (h + l)) * hv)
            )
        out.append(acc)
    return tuple(out)


def hat_P_at_T0(k: int, h: int = 0) -> LaurentTS:
    """The ``hbar^{2h}`` part of ``hat P_k`` at T = 0 (an S-Laurent)."""
    return hat_P(k, h)[h].subs_t0()


def _insertion_multisets(budget: int, gmax: int, pairs_from=None):
    """Multisets of insertions (h, a) with total weight 3h + a - 1 summing
    to ``budget`` and total h at most ``gmax``; h = 0 requires a >= 2.

    Yields tuples of (h, a) pairs in non-increasing order.
    """
    if budget == 0:
        yield ()
        return
    if budget < 0:
        return
    # candidate pairs with weight w = 3h + a - 1 <= budget
    for h in range(min(gmax, (budget + 1) // 3) + 1):
        amin = 2 if h == 0 else 0
        for a in range(amin, budget + 1 - 3 * h + 1):
            w = 3 * h + a - 1
            if w < 1 or w > budget:
                continue
            pair = (h, a)
            if pairs_from is not None and pair > pairs_from:
                continue
            for rest in _insertion_multisets(budget - w, gmax - h, pair):
                yield (pair,) + rest


def shifted_kw_ancestor(g: int, ls, hbar_support: int | None = None) -> LaurentTS:
    """Ancestor correlator of the shifted Kontsevich-Witten potential
    ``F^{KW}(t_k - hat P_k / hbar; S hbar)`` for the exponents ``ls``.

    The result is asserted to be a polynomial in T and S (equivalently in
    T and Q), homogeneous of degree ``sum(ls) - g + 1``.
    """
    ls = tuple(sorted(ls))
    n = len(ls)
    if n < 2 or 2 * g - 2 + n <= 0:
        raise DomainError("shifted ancestors require n >= 2 and stability")
    table = default_table()
    hmax = g if hbar_support is None else min(g, hbar_support)
    budget = 3 * g - 3 + n - sum(ls)
    total = ZERO
    for insertions in _insertion_multisets(budget, hmax):
        m = len(insertions)
        hsum = sum(h for h, _ in insertions)
        gp = g - hsum
        if gp < 0 or 2 * gp - 2 + n + m <= 0:
            continue
        avec = tuple(a for _, a in insertions)
        corr = table.correlator(gp, ls + avec)
        if corr == 0:
            continue
        coeff = corr
        for _, group in itertools.groupby(insertions):
            coeff /= _factorial(len(tuple(group)))
        part = monomial(0, 2 * gp - 2 + n + m, coeff)
        for h, a in insertions:
            part = part * (-hat_P(a, h)[h])
        total = total + part
    mt, ms = total.min_t_exp(), total.min_s_exp()
    assert (mt is None or mt >= 0) and (ms is None or ms >= 0), (
        "shifted ancestors must assemble to a polynomial in T and S"
    )
    assert total.is_homogeneous(sum(ls) - g + 1)
    return total


def laurent_to_tq(f: LaurentTS) -> dict:
    """Rewrite a polynomial in (T, S) as a polynomial in (T, Q): returns
    a map ``(t_exponent, q_exponent) -> Fraction``."""
    ms = f.min_s_exp()
    if ms is not None and ms < 0:
        raise DomainError("only S-polynomials convert exactly to (T, Q)")
    out = {}
    for (i, j), v in f.c.items():
        binom = 1
        for mq in range(j + 1):
            coeff = v * binom * (-1) ** mq
            key = (i + j - mq, mq)
            acc = out.get(key, Fraction(0)) + coeff
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
            binom = binom * (j - mq) // (mq + 1)
    return out


# ---------------------------------------------------------------------------
# Ancestor/descendant transforms
# ---------------------------------------------------------------------------


def degree_zero_descendant(g: int, ks) -> LaurentTS:
    """The degree-0 equivariant descendant term ``T^{2g-2+n} <tau_k>_g``.

    Degree-0 maps contribute the plain psi intersection number weighted by
    a pure power of the equivariant parameter; the star-tree sums start at
    degree 1, so this term is supplied separately wherever the full
    descendant family is needed (notably the ancestor transform, whose
    degree-d output mixes in degree-0 descendants).
    """
    ks = tuple(ks)
    corr = default_table().correlator(g, ks)
    if corr == 0:
        return ZERO
    return monomial(2 * g - 2 + len(ks), 0, corr)


def anc_q_coefficient(g: int, ls, qd: int) -> LaurentTS:
    """Coefficient of ``Q^qd`` (qd >= 1) of the localization-side ancestor
    correlator: the triangular transform
    ``anc(l) = sum_m prod Q^{m_i}/m_i! * des(l - m)`` applied to the
    equivariant descendants (including the degree-0 term), as a Laurent
    polynomial in T."""
    ls = tuple(ls)
    if qd < 1:
        raise DomainError("localization ancestors have Q-degrees >= 1")
    total = ZERO
    for d in range(0, qd + 1):
        msum = qd - d
        for mvec in _compositions(msum, len(ls)):
            if any(m > l for m, l in zip(mvec, ls)):
                continue
            coeff = Fraction(1)
            for m in mvec:
                coeff /= _factorial(m)
            sub = tuple(l - m for l, m in zip(ls, mvec))
            des = (
                degree_zero_descendant(g, sub)
                if d == 0
                else equiv_descendant(g, sub, d)
            )
            if not des.is_zero():
                total = total + des.scalar_mul(coeff)
    return total


def anc_from_des(des_family: dict, ls: tuple) -> dict:
    """Transform a descendant family into an ancestor value.

    ``des_family`` maps exponent tuples to Q-polynomials represented as
    ``{q_exponent: value}`` dictionaries (values in any linear structure
    supporting + and scalar *).  Implements
    ``anc(l) = sum_{m <= l} prod Q^{m_i}/m_i! * des(l - m)``.
    """
    return _triangular(des_family, tuple(ls), minus=False)


def des_from_anc(anc_family: dict, ks: tuple) -> dict:
    """Inverse transform: ``des(k) = sum prod (-Q)^{m_i}/m_i! anc(k-m)``."""
    return _triangular(anc_family, tuple(ks), minus=True)


def _triangular(family: dict, exps: tuple, minus: bool) -> dict:
    out = {}
    ranges = [range(e + 1) for e in exps]
    for mvec in itertools.product(*ranges):
        key = tuple(sorted(e - m for e, m in zip(exps, mvec)))
        src = family.get(key)
        if not src:
            continue
        msum = sum(mvec)
        coeff = Fraction((-1) ** msum if minus else 1)
        for m in mvec:
            coeff /= _factorial(m)
        for qd, val in src.items():
            acc = out.get(qd + msum, Fraction(0)) + coeff * val
            if acc:
                out[qd + msum] = acc
            else:
                out.pop(qd + msum, None)
    return out


# ---------------------------------------------------------------------------
# J-pipeline
# ---------------------------------------------------------------------------


def j_pipeline_ancestor(g: int, ls) -> dict:
    """Ancestor correlator predicted by the J-classes:
    ``anc(l) = sum_d (-Q)^d int J_{2g-2+n-d} prod psi^{l_i}``, returned as
    ``{q_exponent: Fraction}``.

    Dimension counting leaves a single candidate Q-degree
    ``d = sum(ls) - g + 1``.
    """
    ls = tuple(sorted(ls))
    n = len(ls)
    d = sum(ls) - g + 1
    if d < 0:
        return {}
    p = 2 * g - 2 + n - d
    if p < 0:
        return {}
    val = Fraction((-1) ** d) * integral_j(g, ls, p)
    return {d: val} if val else {}


def j_pipeline_descendant(g: int, ks) -> dict:
    """Descendant correlators predicted by the J-pipeline, as a map
    ``{q_exponent: Fraction}``.

    EXAMPLES::

        >>> j_pipeline_descendant(1, (1,))
        {1: Fraction(-1, 12)}
    """
    ks = tuple(ks)
    family = {}
    for mvec in itertools.product(*[range(k + 1) for k in ks]):
        sub = tuple(sorted(k - m for k, m in zip(ks, mvec)))
        if sub not in family:
            family[sub] = j_pipeline_ancestor(g, sub)
    return des_from_anc(family, ks)


# ---------------------------------------------------------------------------
# The [T^0 S^d] coefficient check
# ---------------------------------------------------------------------------


def t0_sd_actual(g: int, ks, d: int, qmax: int | None = None) -> Fraction:
    """``[T^0 S^d]`` of the localization-side ancestor correlator.

    The ancestor polynomial is homogeneous of degree
    ``d_tot = sum(ks) - g + 1``, so only ``d = d_tot`` can contribute; the
    Q-degrees are summed up to ``qmax`` (default ``max(d_tot, 1)``).
    """
    ks = tuple(ks)
    d_tot = sum(ks) - g + 1
    if qmax is None:
        qmax = max(d_tot, 1)
    total = Fraction(0)
    for qd in range(1, qmax + 1):
        f = anc_q_coefficient(g, ks, qd)
        # [T^0 S^d] of Q^qd * f(T): expand Q^qd = (T - S)^qd
        want_t = d - qd  # T-exponent needed from f so that total T power is 0
        coeff = f.coefficient(want_t, 0)
        if coeff and 0 <= d <= qd:
            total += coeff * Fraction((-1) ** d) * comb(qd, d)
    return total


def t0_sd_predicted(g: int, ks, d: int) -> Fraction:
    """J-class prediction for ``[T^0 S^d]`` paired against psi powers:
    ``int J_{2g-2+n-d} prod psi^{k_i}`` plus, for one marked point and
    ``d = 0``, the correction ``(-1)^g int psi^{k} lambda_g lambda_{g-1}``."""
    ks = tuple(sorted(ks))
    n = len(ks)
    p = 2 * g - 2 + n - d
    total = Fraction(0)
    if p >= 0:
        total += integral_j(g, ks, p)
    if n == 1 and d == 0 and g >= 1:
        total += Fraction((-1) ** g) * hodge_one_point(g, g - 1, ks[0])
    return total
