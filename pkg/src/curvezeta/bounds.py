"""Upper bounds for the number of rational points of curves over F_q.

Everything is integer arithmetic: floor(2 sqrt q) is ``isqrt_floor(4q)``
and the one irrational comparison in the genus-2 formula is decided by
squaring with the signs tracked.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import UnsupportedGenus
from .finite_field import PrimePower


def isqrt_floor(n: int) -> int:
    """Largest s with s*s <= n, by integer Newton iteration."""
    if n < 0:
        raise ValueError("square root of a negative number")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 1) // 2)  # x >= sqrt(n)
    while True:
        y = (x + n // x) // 2
        if y >= x:
            return x
        x = y


def is_square(n: int) -> bool:
    return n >= 0 and isqrt_floor(n) ** 2 == n


def hws_width(q) -> int:
    """m = floor(2 sqrt q)."""
    return isqrt_floor(4 * PrimePower.of(q).q)


def hws_bound(q, g: int) -> int:
    """Hasse-Weil-Serre bound q + 1 + g*floor(2 sqrt q)."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    q = PrimePower.of(q)
    return q.q + 1 + g * hws_width(q)


def deuring_offsets(q) -> list[int]:
    """Traces t such that some elliptic curve over F_q has q + 1 - t points.

    Waterhouse's classification for q = p^n, with m = floor(2 sqrt q):
    every |t| <= m prime to p, plus the supersingular traces
    +-2 p^{n/2} (n even), +-p^{n/2} (n even, p != 1 mod 3),
    +-p^{(n+1)/2} (n odd, p in {2, 3}) and 0 (n odd, or p != 1 mod 4).
    """
    q = PrimePower.of(q)
    p, n = q.p, q.e
    m = hws_width(q)
    traces = {t for t in range(-m, m + 1) if gcd(p, t) == 1}
    if n % 2 == 0:
        r = p ** (n // 2)
        traces |= {-2 * r, 2 * r}
        if p % 3 != 1:
            traces |= {-r, r}
    elif p in (2, 3):
        r = p ** ((n + 1) // 2)
        traces |= {-r, r}
    if n % 2 == 1 or p % 4 != 1:
        traces.add(0)
    return sorted(traces)


def deuring_set(q) -> list[int]:
    """Possible values of #E(F_q), ascending (q + 1 + t over the symmetric trace set)."""
    q = PrimePower.of(q)
    return [t + q.q + 1 for t in deuring_offsets(q)]


@dataclass(frozen=True)
class DeuringReport:
    q: PrimePower
    m: int
    offsets: tuple
    cardinals: tuple


def deuring_report(q) -> DeuringReport:
    q = PrimePower.of(q)
    return DeuringReport(q, hws_width(q), tuple(deuring_offsets(q)), tuple(deuring_set(q)))


def _fraction_exceeds_golden(q: int, m: int) -> bool:
    """Decide 2 sqrt(q) - m > (sqrt(5) - 1)/2 exactly.

    Equivalent to 4 sqrt(q) > a + sqrt(5) with a = 2m - 1 >= 1; squaring
    gives 16q - a^2 - 5 > 2a sqrt(5), true iff the left side is positive
    and its square beats 20 a^2 (equality is impossible, sqrt(5) is irrational).
    """
    a = 2 * m - 1
    lhs = 16 * q - a * a - 5
    return lhs > 0 and lhs * lhs > 20 * a * a


def _special_genus2(q: PrimePower, m: int) -> bool:
    """p | m, or q = x^2 + 1, x^2 + x + 1 or x^2 + x + 2 for an integer x."""
    return (
        m % q.p == 0
        or is_square(q.q - 1)
        or is_square(4 * q.q - 3)
        or is_square(4 * q.q - 7)
    )


SERRE_GENUS3 = {2: 7, 3: 10, 4: 14, 5: 16, 7: 20, 8: 24, 9: 28}


def serre_nq(q, g: int) -> int | None:
    """Maximal number of F_q-points on a genus-g curve, for g in {1, 2, 3}.

    Returns None where the value is not known in closed form (g = 3 and q
    outside the small table).
    """
    q = PrimePower.of(q)
    if g not in (1, 2, 3):
        raise UnsupportedGenus(f"N_q(g) is only provided for g = 1, 2, 3 (got {g})")
    m = hws_width(q)
    if g == 1:
        return max(deuring_set(q))
    if g == 2:
        if q.q == 4:
            return 10
        if q.q == 9:
            return 20
        if q.e % 2 == 0 or not _special_genus2(q, m):
            return q.q + 1 + 2 * m
        if _fraction_exceeds_golden(q.q, m):
            return q.q + 2 * m
        return q.q + 2 * m - 1
    return SERRE_GENUS3.get(q.q)


@dataclass(frozen=True)
class BoundsReport:
    q: PrimePower
    g: int
    N1: int
    hws: int
    serre: int | None
    is_hws_maximal: bool
    meets_serre: bool


def compare_to_bounds(q, g: int, N1: int) -> BoundsReport:
    q = PrimePower.of(q)
    hws = hws_bound(q, g)
    serre = serre_nq(q, g) if g in (1, 2, 3) else None
    return BoundsReport(
        q=q,
        g=g,
        N1=N1,
        hws=hws,
        serre=serre,
        is_hws_maximal=N1 == hws,
        meets_serre=serre is not None and N1 == serre,
    )
