"""Kappa-class calculus and the universal classes ``J_p``.

Polynomials in the kappa classes are stored as sparse dictionaries mapping
a sorted tuple of kappa indices (the product monomial
``kappa_{a_1} ... kappa_{a_m}``) to a rational coefficient; the empty tuple
is the fundamental class.

``J_p`` is the degree-``p`` part of ``exp(sum_i s_i kappa_i)`` where the
constants ``s_i`` are defined by

    exp(- sum_i s_i t^i) = sum_i (-1)^i i! t^i,

so ``s = (1, -3/2, 13/3, ...)``.  The same class has a second expansion in
multi-indexed kappa classes,

    J = 1 + sum_{m >= 1} (1/m!) sum_{a in Z_{>=1}^m}
            kappa_a  prod_i (-1)^{a_i - 1} a_i!,

where ``kappa_{a_1,...,a_m}`` is the pushforward of a product of psi
classes from ``m`` extra marked points; :func:`j_class_multiindex` evaluates
this route by expanding each multi-indexed class into ordinary kappa
products with the shuffle recursion

    kappa_{{a} u I} = kappa_a * kappa_I + sum_{b in I} kappa_{(I \\ b) u {a+b}}.

Integrals of mixed psi/kappa monomials reduce to pure psi intersection
numbers by inverting the shuffle recursion on the partition lattice: each
product of kappas is a signed sum of multi-indexed classes, whose integrals
are plain psi correlators with one extra insertion per block,

    int prod psi^{k_i} prod_{j=1}^m kappa_{b_j}
      = sum_{partitions P of {1..m}} prod_{B in P} (-1)^{|B|-1}
            * < prod tau_{k_i} prod_{B in P} tau_{1 + sum_{j in B} b_j} >_g.

(The weight per block is the compositional inverse of the weight
``(|B|-1)!`` appearing in the expansion of multi-indexed classes into
products; the generating functions are ``-log(1-x)`` and ``1 - e^{-x}``.)

EXAMPLES::

    >>> s_constants(3)
    [Fraction(1, 1), Fraction(-3, 2), Fraction(13, 3)]
    >>> mixed_integral(1, (0,), (1,))
    Fraction(1, 24)
    >>> integral_j(1, (0,), 2)
    Fraction(0, 1)
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .correlators import CorrelatorTable, default_table
from .errors import DomainError
from .series import QRING, TruncSeries, series_log


def _factorial(n: int) -> int:
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


@lru_cache(maxsize=None)
def _s_tuple(nmax: int) -> tuple:
    gen = TruncSeries.from_list(
        "t", [(-1) ** i * _factorial(i) for i in range(nmax + 1)], QRING
    )
    neg_log = series_log(gen)
    return tuple(-neg_log.coeffs[i] for i in range(1, nmax + 1))


def s_constants(nmax: int) -> list:
    """The constants ``s_1, ..., s_nmax``."""
    if nmax < 0:
        raise DomainError("negative length")
    return list(_s_tuple(nmax))


def _partitions(p: int, max_part: int | None = None):
    """Integer partitions of p as non-increasing tuples."""
    if max_part is None:
        max_part = p
    if p == 0:
        yield ()
        return
    for first in range(min(p, max_part), 0, -1):
        for rest in _partitions(p - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def j_class(p: int) -> dict:
    """Degree-``p`` part of ``exp(sum s_i kappa_i)`` as a kappa polynomial.

    The monomial ``prod kappa_{a}^{m_a}`` (for a partition of ``p``) carries
    the coefficient ``prod_a s_a^{m_a} / m_a!``.
    """
    if p < 0:
        return {}
    if p == 0:
        return {(): Fraction(1)}
    s = _s_tuple(p)
    out = {}
    for part in _partitions(p):
        coeff = Fraction(1)
        i = 0
        while i < len(part):
            a = part[i]
            m = part.count(a)
            coeff *= s[a - 1] ** m / _factorial(m)
            i += m
        out[tuple(sorted(part))] = coeff
    return out


@lru_cache(maxsize=None)
def kappa_multiindex(avec: tuple) -> dict:
    """Expand a multi-indexed kappa class into ordinary kappa products.

    ``avec`` is a multiset of positive integers; the result maps product
    monomials (sorted tuples) to integer coefficients.

    EXAMPLES::

        >>> kappa_multiindex((1, 1)) == {(1, 1): Fraction(1), (2,): Fraction(1)}
        True
    """
    if any(a < 1 for a in avec):
        raise DomainError("multi-index entries must be positive")
    avec = tuple(sorted(avec))
    if len(avec) == 0:
        return {(): Fraction(1)}
    if len(avec) == 1:
        return {avec: Fraction(1)}
    a, rest = avec[0], avec[1:]
    out = {}
    for mono, c in kappa_multiindex(rest).items():
        key = tuple(sorted(mono + (a,)))
        out[key] = out.get(key, Fraction(0)) + c
    seen = set()
    for i, b in enumerate(rest):
        if b in seen:
            continue
        seen.add(b)
        mult = rest.count(b)
        merged = tuple(sorted(rest[:i] + rest[i + 1 :] + (a + b,)))
        for mono, c in kappa_multiindex(merged).items():
            out[mono] = out.get(mono, Fraction(0)) + mult * c
    return {k: v for k, v in out.items() if v}


def j_class_multiindex(p: int) -> dict:
    """Degree-``p`` part of the multi-index expansion of ``J``.

    Agrees with :func:`j_class` for every ``p``; keeping both routes gives
    an independent consistency check on the kappa calculus.
    """
    if p < 0:
        return {}
    if p == 0:
        return {(): Fraction(1)}
    out = {}
    for part in _partitions(p):
        m = len(part)
        # number of ordered tuples realizing this multiset
        perms = _factorial(m)
        i = 0
        while i < m:
            a = part[i]
            cnt = part.count(a)
            perms //= _factorial(cnt)
            i += cnt
        weight = Fraction(perms, _factorial(m))
        for a in part:
            weight *= (-1) ** (a - 1) * _factorial(a)
        for mono, c in kappa_multiindex(tuple(part)).items():
            acc = out.get(mono, Fraction(0)) + weight * c
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
    return out


def _set_partitions(items: tuple):
    """All set partitions of a tuple, as tuples of blocks (tuples)."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield ((first,),) + part
        for i, block in enumerate(part):
            yield part[:i] + ((first,) + block,) + part[i + 1 :]


def mixed_integral(
    g: int, psi_ks, kappa_bs, table: CorrelatorTable | None = None
) -> Fraction:
    """``int_{Mbar_{g,n}} prod psi_i^{k_i} prod_j kappa_{b_j}`` (exact).

    ``n = len(psi_ks)``; degrees off the dimension shell give 0 and
    unstable ``(g, n)`` raise :class:`DomainError` (via the correlator
    table after the kappa factors are converted to extra psi insertions,
    which always leaves a stable count when ``kappa_bs`` is non-empty).
    """
    table = table or default_table()
    psi_ks = tuple(psi_ks)
    kappa_bs = tuple(kappa_bs)
    if any(b < 1 for b in kappa_bs):
        raise DomainError("kappa indices must be positive")
    total = Fraction(0)
    for part in _set_partitions(kappa_bs):
        sign = Fraction(1)
        extra = []
        for block in part:
            sign *= (-1) ** (len(block) - 1)
            extra.append(1 + sum(block))
        total += sign * table.correlator(g, psi_ks + tuple(extra))
    return total


def integral_j(
    g: int, psi_ks, p: int, table: CorrelatorTable | None = None
) -> Fraction:
    """``int_{Mbar_{g,n}} J_p prod psi_i^{k_i}`` (exact)."""
    total = Fraction(0)
    for mono, c in j_class(p).items():
        total += c * mixed_integral(g, psi_ks, mono, table)
    return total


def psi_complements(g: int, n: int, p: int):
    """Sorted psi exponent tuples with total ``3g - 3 + n - p``, length n."""
    target = 3 * g - 3 + n - p
    if target < 0:
        return
    yield from _bounded_sorted_tuples(n, target)


def _bounded_sorted_tuples(n: int, total: int, lo: int = 0):
    if n == 0:
        if total == 0:
            yield ()
        return
    if n == 1:
        if total >= lo:
            yield (total,)
        return
    for first in range(lo, total + 1):
        for rest in _bounded_sorted_tuples(n - 1, total - first, first):
            yield (first,) + rest
