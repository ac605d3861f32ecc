"""One-point Hodge integrals ``H(g, a, k) = int psi^k lambda_g lambda_a``.

``hodge_one_point(g, a, k)`` returns the integral over the moduli space of
genus ``g`` one-pointed stable curves of ``psi_1^k lambda_g lambda_a``
(with ``lambda_0 = 1``).  Only entries on the dimension shell
``k + g + a = 3g - 2`` are nonzero; off-shell queries return 0.

Built-in coverage (complete for ``g <= 2``):

* ``a = 0`` for all ``g >= 1``:
  ``int psi^{2g-2} lambda_g = (2^{2g-1} - 1) / 2^{2g-1} * |B_{2g}| / (2g)!``;
* ``a = g - 1`` for all ``g >= 1``:
  ``int psi^{g-1} lambda_g lambda_{g-1}
      = |B_{2g}| / (2^{2g-1} (2g-1)!! 2g)``.

Entries outside the built-in range raise :class:`HodgeUnsupportedError`
carrying the key, unless supplied by a user table (see
:func:`load_hodge_table`, text format ``hodge v1`` with lines
``g;a;k;p/q``).

EXAMPLES::

    >>> hodge_one_point(1, 0, 0)
    Fraction(1, 24)
    >>> hodge_one_point(2, 1, 1)
    Fraction(1, 2880)
    >>> hodge_one_point(2, 0, 2)
    Fraction(7, 5760)
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import CacheFormatError, DomainError, HodgeUnsupportedError
from .correlators import double_factorial

HODGE_HEADER = "hodge v1"


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli numbers with the ``B_1 = +1/2`` convention.

    Generated by ``t e^t / (e^t - 1)``.

    EXAMPLES::

        >>> [bernoulli(i) for i in range(5)]
        [Fraction(1, 1), Fraction(1, 2), Fraction(1, 6), Fraction(0, 1), Fraction(-1, 30)]
    """
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    # B_n = sum via the recurrence sum_{k=0}^{n} binom(n+1, k) B_k = n + 1
    # for the +1/2 convention.
    bs = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * bs[k]
            binom = binom * (m + 1 - k) // (k + 1)
        bs.append((Fraction(m + 1) - acc) / (m + 1))
    return bs[n]


def _factorial(n: int) -> int:
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


def _abs_bernoulli(n: int) -> Fraction:
    b = bernoulli(n)
    return b if b >= 0 else -b


class HodgeTable:
    """Lookup table for one-point Hodge integrals with built-in families."""

    def __init__(self, extra=None):
        self._extra = dict(extra or {})

    def value(self, g: int, a: int, k: int) -> Fraction:
        if g < 0 or a < 0 or k < 0:
            raise DomainError("negative index in one-point Hodge integral")
        if a > g:
            return Fraction(0)
        if a == g and g >= 1:
            # lambda_g^2 = 0, so every integral against it vanishes.
            return Fraction(0)
        if g == 0:
            # Mbar_{0,1} is empty; every genus-zero one-point integral is 0.
            return Fraction(0)
        if k + g + a != 3 * g - 2:
            return Fraction(0)
        key = (g, a, k)
        if key in self._extra:
            return self._extra[key]
        if a == 0:
            return Fraction(2 ** (2 * g - 1) - 1, 2 ** (2 * g - 1)) * _abs_bernoulli(
                2 * g
            ) / _factorial(2 * g)
        if a == g - 1:
            return _abs_bernoulli(2 * g) / (
                2 ** (2 * g - 1) * double_factorial(2 * g - 1) * (2 * g)
            )
        raise HodgeUnsupportedError(key)


def load_hodge_table(path) -> HodgeTable:
    """Read a ``hodge v1`` file of lines ``g;a;k;p/q``.

    Entries that overlap the built-in families must agree with them,
    otherwise :class:`CacheFormatError` is raised.
    """
    extra = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != HODGE_HEADER:
            raise CacheFormatError(f"bad hodge table header: {header!r}")
        for ln, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            try:
                gs, as_, ks, vs = line.split(";")
                g, a, k = int(gs), int(as_), int(ks)
                num, den = vs.split("/")
                v = Fraction(int(num), int(den))
            except (ValueError, ZeroDivisionError) as exc:
                raise CacheFormatError(f"bad hodge line {ln}: {line!r}") from exc
            extra[(g, a, k)] = v
    base = HodgeTable()
    for (g, a, k), v in extra.items():
        try:
            builtin = base.value(g, a, k)
        except HodgeUnsupportedError:
            continue
        if builtin != v:
            raise CacheFormatError(
                f"hodge table entry ({g},{a},{k}) = {v} conflicts with"
                f" built-in value {builtin}"
            )
    return HodgeTable(extra)


_DEFAULT = HodgeTable()


def hodge_one_point(g: int, a: int, k: int, table: HodgeTable | None = None) -> Fraction:
    """``int_{Mbar_{g,1}} psi_1^k lambda_g lambda_a`` (exact)."""
    return (table or _DEFAULT).value(g, a, k)
