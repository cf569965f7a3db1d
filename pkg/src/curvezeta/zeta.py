"""Zeta-function numerators of curves and the point-count bootstrap.

For a smooth curve C of genus g over F_q,

    Z(T) = exp(sum N_r T^r / r) = P(T) / ((1 - T)(1 - qT)),
    P(T) = 1 + c_1 T + ... + c_{2g} T^{2g},

and the power sums S_r = q^r + 1 - N_r of the reciprocal roots of P are
tied to the c_j by the Girard-Newton identities. The functional equation
gives c_{g+l} = q^l c_{g-l}, so N_1..N_g already determine every N_r.

Everything here is exact (``int`` / ``Fraction``); sequences are
ordinary 0-based Python lists holding N_1, N_2, ... in that order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import EmptyCounts, LengthMismatch
from .finite_field import PrimePower

Number = int | Fraction


def _normalize(x) -> Number:
    """Collapse integral Fractions back to int."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class CountSequence:
    q: PrimePower
    counts: tuple

    def __post_init__(self):
        if not self.counts:
            raise EmptyCounts("a count sequence needs at least N_1")

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    def at(self, r: int) -> Number:
        """N_r, 1-based."""
        return self.counts[r - 1]

    @property
    def nonnegative(self) -> bool:
        return all(n >= 0 for n in self.counts)


@dataclass(frozen=True)
class PowerSums:
    q: PrimePower
    S: tuple

    def __len__(self):
        return len(self.S)

    def __iter__(self):
        return iter(self.S)

    def __getitem__(self, i):
        return self.S[i]

    def at(self, r: int) -> Number:
        return self.S[r - 1]


@dataclass(frozen=True)
class ZetaNumerator:
    """Coefficients c_0..c_{2g} of P(T), lowest degree first."""

    q: PrimePower
    g: int
    c: tuple

    @property
    def integral(self) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.c)

    @property
    def symmetric(self) -> bool:
        """Whether c_{g+l} == q^l c_{g-l} for l = 1..g."""
        q, g = self.q.q, self.g
        return all(self.c[g + l] == q**l * self.c[g - l] for l in range(1, g + 1))

    @property
    def leading_ok(self) -> bool:
        return self.c[0] == 1 and self.c[-1] == self.q.q**self.g

    def __str__(self):
        terms = []
        for j, cj in enumerate(self.c):
            if cj == 0:
                continue
            mono = "" if j == 0 else "T" if j == 1 else f"T^{j}"
            terms.append(f"{cj}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")


@dataclass(frozen=True)
class BootstrapResult:
    """Output of the bootstrap plus the validity certificates.

    ``integral`` and ``weil_ok`` are diagnostics: the recurrences are
    formal, so impossible input data still yields a (rational) sequence.
    """

    counts: CountSequence
    numerator: ZetaNumerator
    power_sums: PowerSums
    weil: tuple = field(default=())

    @property
    def integral(self) -> bool:
        return self.numerator.integral and all(
            Fraction(n).denominator == 1 for n in self.counts
        )

    @property
    def weil_ok(self) -> bool:
        return all(self.weil)

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, i):
        return self.counts[i]


def counts_to_power_sums(q, counts: Sequence[Number]) -> PowerSums:
    q = PrimePower.of(q)
    if not len(counts):
        raise EmptyCounts("no point counts given")
    return PowerSums(q, tuple(_normalize(q.q**j + 1 - n) for j, n in enumerate(counts, 1)))


def power_sums_to_counts(q, S: Sequence[Number]) -> CountSequence:
    q = PrimePower.of(q)
    return CountSequence(q, tuple(_normalize(q.q**j + 1 - s) for j, s in enumerate(S, 1)))


def newton_c_from_S(S: Sequence[Number]) -> list[Number]:
    """c_1..c_m from S_1..S_m via  S_j + c_1 S_{j-1} + ... + c_{j-1} S_1 + j c_j = 0."""
    if not len(S):
        raise EmptyCounts("need at least S_1")
    c: list[Fraction] = [Fraction(1)]
    for j in range(1, len(S) + 1):
        acc = Fraction(S[j - 1])
        for i in range(1, j):
            acc += c[i] * S[j - i - 1]
        c.append(-acc / j)
    return [_normalize(x) for x in c[1:]]


def newton_S_within(c: Sequence[Number], S: Sequence[Number], j: int) -> Number:
    """S_j for j <= n from c_1..c_j and S_1..S_{j-1} (the same identity solved for S_j)."""
    acc = j * Fraction(c[j - 1])
    for i in range(1, j):
        acc += Fraction(c[i - 1]) * S[j - i - 1]
    return _normalize(-acc)


def newton_extend_S(c: Sequence[Number], S: Sequence[Number], j: int) -> Number:
    """S_j for j > n = len(c), via S_j + c_1 S_{j-1} + ... + c_n S_{j-n} = 0."""
    n = len(c)
    if j <= n:
        raise ValueError(f"index {j} is not beyond the {n} roots; use newton_S_within")
    if len(S) < j - 1:
        raise ValueError(f"need S_1..S_{j - 1}, got {len(S)} values")
    acc = Fraction(0)
    for i in range(1, n + 1):
        acc += Fraction(c[i - 1]) * S[j - i - 1]
    return _normalize(-acc)


def _check_genus(counts, genus):
    if not len(counts):
        raise EmptyCounts("no point counts given")
    if genus is not None and genus != len(counts):
        raise LengthMismatch(f"genus {genus} but {len(counts)} counts given")


def zeta_numerator(q, counts: Sequence[Number], genus: int | None = None) -> ZetaNumerator:
    """P(T) from N_1..N_g, the remaining half filled in by the functional equation."""
    q = PrimePower.of(q)
    _check_genus(counts, genus)
    g = len(counts)
    low = [1] + newton_c_from_S(counts_to_power_sums(q, counts).S)
    high = [_normalize(q.q**l * low[g - l]) for l in range(1, g + 1)]
    return ZetaNumerator(q, g, tuple(low + high))


def weil_bound_check(q, g: int, S: Sequence[Number]) -> list[bool]:
    """Per index r, whether S_r^2 <= 4 g^2 q^r (so |S_r| <= 2g sqrt(q^r))."""
    q = PrimePower.of(q).q
    return [Fraction(s) ** 2 <= 4 * g * g * q**r for r, s in enumerate(S, 1)]


def _finish(q, g, numerator, S, k) -> BootstrapResult:
    counts = power_sums_to_counts(q, S[:k])
    ps = PowerSums(q, tuple(S[:k]))
    return BootstrapResult(counts, numerator, ps, tuple(weil_bound_check(q, g, ps.S)))


def bootstrap_improved(q, counts: Sequence[Number], k: int, genus: int | None = None) -> BootstrapResult:
    """N_1..N_k from N_1..N_g (g = len(counts)).

    c_1..c_g come from the Newton identities, c_{g+1}..c_{2g} from the
    functional equation; S_{g+1}..S_{2g} are then read off the identity
    for j <= 2g and later S_j from the linear recurrence of length 2g.
    For k <= g the input prefix is returned as is.
    """
    q = PrimePower.of(q)
    _check_genus(counts, genus)
    if k < 1:
        raise ValueError("horizon k must be at least 1")
    g = len(counts)
    P = zeta_numerator(q, counts)
    S = list(counts_to_power_sums(q, counts).S)
    c = P.c[1:]
    for j in range(g + 1, k + 1):
        S.append(newton_S_within(c, S, j) if j <= 2 * g else newton_extend_S(c, S, j))
    if k <= g:
        # keep the inputs verbatim, even if they are not normalized ints
        result = _finish(q, g, P, S, k)
        return BootstrapResult(CountSequence(q, tuple(counts[:k])), P, result.power_sums, result.weil)
    return _finish(q, g, P, S, k)


def bootstrap_basic(q, counts: Sequence[Number], g: int, k: int) -> BootstrapResult:
    """N_1..N_k from N_1..N_{2g}, all of c_1..c_{2g} from the Newton identities.

    No use is made of the functional equation, so comparing
    ``numerator.symmetric`` with the improved variant tests it.
    """
    q = PrimePower.of(q)
    if len(counts) != 2 * g:
        raise LengthMismatch(f"basic bootstrap needs 2g = {2 * g} counts, got {len(counts)}")
    if k < 1:
        raise ValueError("horizon k must be at least 1")
    S = list(counts_to_power_sums(q, counts).S)
    c = newton_c_from_S(S)
    P = ZetaNumerator(q, g, tuple([1] + c))
    for j in range(2 * g + 1, k + 1):
        S.append(newton_extend_S(c, S, j))
    if k <= 2 * g:
        result = _finish(q, g, P, S, k)
        return BootstrapResult(CountSequence(q, tuple(counts[:k])), P, result.power_sums, result.weil)
    return _finish(q, g, P, S, k)


# -- formal power series cross-check ------------------------------------------

def _series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def _series_div(a, b, order):
    """a / b to O(T^{order+1}); requires b[0] != 0."""
    b = list(b) + [0] * (order + 1 - len(b))
    a = list(a) + [0] * (order + 1 - len(a))
    out = []
    for r in range(order + 1):
        acc = Fraction(a[r]) - sum(out[i] * b[r - i] for i in range(r))
        out.append(acc / b[0])
    return out


def zeta_series_check(q, numerator, counts: Sequence[Number]) -> bool:
    """Expand Z(T) = P(T)/((1-T)(1-qT)) and compare T Z'/Z with sum N_r T^r.

    ``numerator`` is a ZetaNumerator or a bare coefficient list (so P = [1]
    covers the projective line).
    """
    q = PrimePower.of(q).q
    coeffs = numerator.c if isinstance(numerator, ZetaNumerator) else tuple(numerator)
    k = len(counts)
    denom = _series_mul([1, -1], [1, -q], k + 1)
    Z = _series_div(coeffs, denom, k + 1)
    dZ = [0] + [r * Z[r] for r in range(1, k + 2)]  # T * Z'(T)
    log_deriv = _series_div(dZ, Z, k)
    return all(log_deriv[r] == counts[r - 1] for r in range(1, k + 1))


def subsequence_check(q, counts: Sequence[Number], s: int, k: int) -> bool:
    """The counts of C over F_{q^s} are those of the bootstrap from q^s.

    Compare N_s, N_2s, ..., N_ks from the base sequence with the sequence
    bootstrapped over q^s from N_s, ..., N_gs alone.
    """
    q = PrimePower.of(q)
    if s < 1:
        raise ValueError("stride must be at least 1")
    g = len(counts)
    long = bootstrap_improved(q, counts, s * max(k, g)).counts
    seed = [long.at(s * j) for j in range(1, g + 1)]
    short = bootstrap_improved(q.power(s), seed, k).counts
    return all(short.at(j) == long.at(s * j) for j in range(1, k + 1))
