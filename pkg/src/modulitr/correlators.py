"""Intersection numbers of psi classes via the Virasoro (DVV) recursion.

``wk_correlator(g, ks)`` returns the intersection number
``< tau_{k_1} ... tau_{k_n} >_g`` of psi classes on the moduli space of
stable curves.  The value is nonzero only on the dimension shell
``sum k_i = 3g - 3 + n``; off-shell queries return 0 silently because the
localization sums generate such terms freely.  Unstable ``(g, n)`` raise
:class:`DomainError`.

Evaluation strategy: string and dilaton equations remove exponents 0 and 1,
then the recursion pivots on the largest exponent:

    (2k+1)!! <tau_k X>_g =
        sum_j ((2k + 2k_j - 1)!! / (2k_j - 1)!!) <tau_{k+k_j-1} X\\j>_g
      + 1/2 sum_{a+b=k-2} (2a+1)!!(2b+1)!! [ <tau_a tau_b X>_{g-1}
             + sum over stable splittings <tau_a X_1>_{g_1} <tau_b X_2>_{g_2} ].

Base cases: ``<tau_0^3>_0 = 1`` and ``<tau_1>_1 = 1/24``.

All values are memoized in a :class:`CorrelatorTable` which supports
concurrent readers with exclusive-writer insertion and a versioned
line-based text format for persistence.

EXAMPLES::

    >>> wk_correlator(2, (4,))
    Fraction(1, 1152)
    >>> wk_correlator(1, (2, 2, 0, 0))
    Fraction(1, 6)
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .errors import CacheFormatError, DomainError

CACHE_HEADER = "wkcache v1"


def double_factorial(n: int) -> int:
    """(2m+1)!! for odd n = 2m+1; also defined as 1 for n in {-1, 0}."""
    if n < -1:
        raise DomainError(f"double factorial of {n}")
    r = 1
    while n > 1:
        r *= n
        n -= 2
    return r


def string_reduce(g: int, ks: tuple) -> list:
    """String equation: ``<tau_0 X> = sum_j <... tau_{k_j - 1} ...>``.

    ``ks`` must contain a 0; returns the list of (key, coefficient) pairs.
    """
    ks = tuple(sorted(ks))
    if 0 not in ks:
        raise DomainError("string equation needs a tau_0 insertion")
    rest = list(ks)
    rest.remove(0)
    out = []
    for j in range(len(rest)):
        if rest[j] >= 1:
            reduced = tuple(sorted(rest[:j] + [rest[j] - 1] + rest[j + 1 :]))
            out.append(((g, reduced), Fraction(1)))
    return out


def dilaton_reduce(g: int, ks: tuple):
    """Dilaton equation: ``<tau_1 X>_g = (2g - 2 + n - 1) <X>_g``."""
    ks = tuple(sorted(ks))
    if 1 not in ks:
        raise DomainError("dilaton equation needs a tau_1 insertion")
    rest = list(ks)
    rest.remove(1)
    return (g, tuple(rest)), Fraction(2 * g - 2 + len(rest))


class CorrelatorTable:
    """Thread-safe memo table for psi intersection numbers."""

    version = CACHE_HEADER

    def __init__(self):
        self._values = {
            (0, (0, 0, 0)): Fraction(1),
            (1, (1,)): Fraction(1, 24),
        }
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._values)

    def items(self):
        return sorted(self._values.items())

    def correlator(self, g: int, ks) -> Fraction:
        ks = tuple(sorted(ks))
        n = len(ks)
        if 2 * g - 2 + n <= 0:
            raise DomainError(f"unstable correlator (g={g}, n={n})")
        if any(k < 0 for k in ks):
            raise DomainError("negative psi exponent")
        if sum(ks) != 3 * g - 3 + n:
            return Fraction(0)
        return self._eval(g, ks)

    def _stable_or_zero(self, g: int, ks: tuple) -> Fraction:
        n = len(ks)
        if g < 0 or 2 * g - 2 + n <= 0:
            return Fraction(0)
        if sum(ks) != 3 * g - 3 + n:
            return Fraction(0)
        return self._eval(g, tuple(sorted(ks)))

    def _eval(self, g: int, ks: tuple) -> Fraction:
        # ks sorted, on the dimension shell, stable
        hit = self._values.get((g, ks))
        if hit is not None:
            return hit
        if 0 in ks:
            val = sum(
                (c * self._eval(k[0], k[1]) for k, c in string_reduce(g, ks)),
                Fraction(0),
            )
        elif 1 in ks:
            key, c = dilaton_reduce(g, ks)
            val = c * self._eval(key[0], key[1])
        else:
            val = self._dvv(g, ks)
        with self._lock:
            self._values[(g, ks)] = val
        return val

    def _dvv(self, g: int, ks: tuple) -> Fraction:
        k = ks[-1]  # pivot: the largest exponent (>= 2 here)
        rest = ks[:-1]
        total = Fraction(0)
        for j in range(len(rest)):
            if j > 0 and rest[j] == rest[j - 1]:
                continue
            mult = rest.count(rest[j])
            kj = rest[j]
            merged = list(rest)
            del merged[j]
            merged.append(k + kj - 1)
            coeff = Fraction(
                double_factorial(2 * (k + kj) - 1), double_factorial(2 * kj - 1)
            )
            total += mult * coeff * self._stable_or_zero(g, tuple(merged))
        half = Fraction(0)
        for a in range(0, k - 1):
            b = k - 2 - a
            w = Fraction(double_factorial(2 * a + 1) * double_factorial(2 * b + 1))
            half += w * self._stable_or_zero(g - 1, rest + (a, b))
            for g1 in range(0, g + 1):
                g2 = g - g1
                for mask in range(1 << len(rest)):
                    part1 = tuple(
                        rest[i] for i in range(len(rest)) if mask >> i & 1
                    )
                    part2 = tuple(
                        rest[i] for i in range(len(rest)) if not mask >> i & 1
                    )
                    half += w * self._stable_or_zero(
                        g1, part1 + (a,)
                    ) * self._stable_or_zero(g2, part2 + (b,))
        total += half / 2
        return total / double_factorial(2 * k + 1)

    # -- persistence ----------------------------------------------------

    def merge(self, other: "CorrelatorTable"):
        """Absorb all cached values from another table."""
        with self._lock:
            self._values.update(other._values)

    def save(self, path):
        lines = [CACHE_HEADER]
        for (g, ks), v in self.items():
            lines.append(f"{g};{','.join(map(str, ks))};{v.numerator}/{v.denominator}")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path) -> "CorrelatorTable":
        table = cls()
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n")
            if header != CACHE_HEADER:
                raise CacheFormatError(f"bad cache header: {header!r}")
            for ln, line in enumerate(fh, start=2):
                line = line.strip()
                if not line:
                    continue
                try:
                    gs, kss, vs = line.split(";")
                    g = int(gs)
                    ks = tuple(sorted(int(x) for x in kss.split(","))) if kss else ()
                    num, den = vs.split("/")
                    v = Fraction(int(num), int(den))
                except (ValueError, ZeroDivisionError) as exc:
                    raise CacheFormatError(f"bad cache line {ln}: {line!r}") from exc
                table._values[(g, ks)] = v
        return table


_DEFAULT = CorrelatorTable()


def default_table() -> CorrelatorTable:
    return _DEFAULT


def wk_correlator(g: int, ks) -> Fraction:
    """Intersection number of psi classes on the moduli of stable curves."""
    return _DEFAULT.correlator(g, ks)
