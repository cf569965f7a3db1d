"""Exact arithmetic in F_p and in extensions F_{p^n} = F_p[x]/(m(x)).

Polynomials over F_p are plain tuples of residues, lowest degree first.
Elements are immutable ``FieldElement`` values tied to a ``FieldCtx``.
``LogTables`` turns a context into discrete-log tables used by the
vectorized point counter in :mod:`curvezeta.oracle`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import Iterator, Sequence

import numpy as np

from .errors import CtxMismatch, DivisionByZero, InvalidPrimePower

Poly = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for d in bases:
        if n % d == 0:
            return n == d
    # deterministic Miller-Rabin for n < 3.3e24, plenty for field sizes
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return d
    return n


@dataclass(frozen=True)
class PrimePower:
    """A validated q = p^e."""

    p: int
    e: int
    q: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p) or self.e < 1:
            raise InvalidPrimePower(f"{self.p}^{self.e} is not a prime power")
        object.__setattr__(self, "q", self.p**self.e)

    @classmethod
    def of(cls, q) -> PrimePower:
        if isinstance(q, PrimePower):
            return q
        if isinstance(q, bool) or not isinstance(q, int) or q < 2:
            raise InvalidPrimePower(f"{q!r} is not a prime power")
        p = q if is_prime(q) else smallest_prime_factor(q)
        e, rest = 0, q
        while rest % p == 0:
            rest //= p
            e += 1
        if rest != 1:
            raise InvalidPrimePower(f"{q} is not a prime power")
        return cls(p, e)

    def power(self, s: int) -> PrimePower:
        """The prime power q^s."""
        return PrimePower(self.p, self.e * s)

    def __int__(self):
        return self.q

    def __str__(self):
        return str(self.q)


# -- polynomials over F_p ---------------------------------------------------

def poly_trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[Poly, Poly]:
    a, b = list(poly_trim(a)), poly_trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 1)
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d] * inv_lead % p
        if c:
            quot[d - db] = c
            for k in range(db + 1):
                a[d - db + k] = (a[d - db + k] - c * b[k]) % p
    return poly_trim(quot), poly_trim(a[:db])


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(out)


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return poly_trim((x - y) % p for x, y in zip(a, b))


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    """Monic gcd (the empty tuple when both inputs vanish)."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def poly_powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> Poly:
    result: Poly = (1,)
    base = poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, p), mod, p)[1]
        base = poly_divmod(poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def monic_polys(p: int, degree: int) -> Iterator[Poly]:
    for tail in itertools.product(range(p), repeat=degree):
        yield tuple(reversed(tail)) + (1,)


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    f = poly_trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for g in monic_polys(p, d):
            if not poly_divmod(f, g, p)[1]:
                return False
    return True


def find_irreducible(p: int, n: int) -> Poly:
    """Lexicographically smallest monic irreducible of degree n over F_p.

    The order is on (c_{n-1}, ..., c_0). For n == 1 this is ``x`` itself,
    which serves as the modulus convention for the prime field.
    """
    if not is_prime(p) or n < 1:
        raise InvalidPrimePower(f"no field of order {p}^{n}")
    for tail in itertools.product(range(p), repeat=n):
        f = tuple(reversed(tail)) + (1,)
        if is_irreducible(f, p):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


def poly_str(f: Sequence[int], var: str = "x") -> str:
    parts = []
    for d in range(len(f) - 1, -1, -1):
        c = f[d]
        if not c:
            continue
        mono = "" if d == 0 else var if d == 1 else f"{var}^{d}"
        if not mono:
            parts.append(str(c))
        else:
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts) or "0"


# -- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldCtx:
    p: int
    n: int
    modulus: Poly

    def __post_init__(self):
        mod = poly_trim(self.modulus)
        if len(mod) != self.n + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.n}")
        if not is_irreducible(mod, self.p):
            raise ValueError(f"{poly_str(mod)} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def order(self) -> int:
        return self.p**self.n

    def __call__(self, value) -> FieldElement:
        """Build an element from an int (embedded constant) or coefficient list."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise CtxMismatch("element belongs to another field")
            return value
        if isinstance(value, int):
            coeffs = [value % self.p]
        else:
            coeffs = [c % self.p for c in value]
        rem = poly_divmod(coeffs, self.modulus, self.p)[1] if len(coeffs) > self.n else coeffs
        rem = list(rem) + [0] * (self.n - len(rem))
        return FieldElement(self, tuple(rem))

    def from_index(self, index: int) -> FieldElement:
        """Inverse of ``FieldElement.index`` (base-p digits, degree 0 first)."""
        digits = []
        for _ in range(self.n):
            index, d = divmod(index, self.p)
            digits.append(d)
        return FieldElement(self, tuple(digits))

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    @property
    def gen(self) -> FieldElement:
        """The class of x; for n == 1 this is the residue 0."""
        return self([0, 1])

    def __str__(self):
        if self.n == 1:
            return f"F_{self.p}"
        return f"F_{self.order} = F_{self.p}[a]/({poly_str(self.modulus, 'a')})"


@lru_cache(maxsize=None)
def field(p: int, n: int = 1) -> FieldCtx:
    """Canonical context for F_{p^n} using the lex-smallest modulus."""
    return FieldCtx(p, n, find_irreducible(p, n))


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def _other(self, other) -> FieldElement:
        if isinstance(other, int):
            return self.ctx(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.ctx != self.ctx:
            raise CtxMismatch(f"cannot combine elements of {self.ctx} and {other.ctx}")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.ctx(poly_mul(self.coeffs, other.coeffs, self.ctx.p) or (0,))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise DivisionByZero(f"zero has no inverse in {self.ctx}")
        p = self.ctx.p
        # extended Euclid: track s with s*self == r (mod modulus)
        r0, r1 = self.ctx.modulus, poly_trim(self.coeffs)
        s0, s1 = (), (1,)
        while len(r1) > 1:
            quot, rem = poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, poly_sub(s0, poly_mul(quot, s1, p), p)
        inv_c = pow(r1[0], -1, p)
        return self.ctx([c * inv_c for c in s1])

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.ctx(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.ctx.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    @property
    def index(self) -> int:
        return sum(c * self.ctx.p**i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        if self.ctx.n == 1:
            return str(self.coeffs[0])
        return poly_str(self.coeffs, "a")


def element_arithmetic(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Dispatch on an operator name: add, sub, mul or div."""
    if a.ctx != b.ctx:
        raise CtxMismatch(f"cannot combine elements of {a.ctx} and {b.ctx}")
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](b)


def enumerate_elements(ctx: FieldCtx) -> Iterator[FieldElement]:
    """All p^n elements in index order: 0, 1, ..., p-1, a, a+1, ..."""
    for i in range(ctx.order):
        yield ctx.from_index(i)


def evaluate(poly: Sequence[int], x: FieldElement) -> FieldElement:
    """Horner evaluation of an F_p-polynomial at an element of an extension."""
    acc = x.ctx.zero
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def solve_in_field(poly: Sequence[int], ctx: FieldCtx) -> set[FieldElement]:
    """All roots of ``poly`` (coefficients in F_p, lowest first) lying in ctx."""
    if not poly_trim([c % ctx.p for c in poly]):
        raise ValueError("zero polynomial has every element as a root")
    return {x for x in enumerate_elements(ctx) if evaluate(poly, x).is_zero()}


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_element(ctx: FieldCtx) -> FieldElement:
    """Smallest-index generator of the multiplicative group."""
    m = ctx.order - 1
    cofactors = [m // ell for ell in _prime_divisors(m)]
    for i in range(1, ctx.order):
        g = ctx.from_index(i)
        if all(g**c != ctx.one for c in cofactors):
            return g
    raise AssertionError("multiplicative group of a finite field is cyclic")


class LogTables:
    """Discrete-log view of a field for vectorized evaluation.

    Nonzero elements are handled by their logarithm base a generator; the
    sum of several elements is accumulated in a packed integer encoding
    where each base-p digit gets its own bit field. For p == 2 addition
    is XOR; for odd p a guard bit per field lets one subtraction reduce
    every digit mod p at once.

    ``ZERO_LOG`` is a sentinel: any log sum involving it indexes the
    zero-filled upper half of ``packed``.
    """

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        p, n = ctx.p, ctx.n
        self.order = ctx.order
        self.m = m = ctx.order - 1
        self.generator = g = primitive_element(ctx)

        powers = []
        cur = ctx.one
        for _ in range(m):
            powers.append(cur)
            cur = cur * g
        self.exp_index = np.array([e.index for e in powers], dtype=np.int64)
        self.log_of_index = np.full(ctx.order, -1, dtype=np.int64)
        self.log_of_index[self.exp_index] = np.arange(m, dtype=np.int64)

        self.w = (2 * p - 2).bit_length()
        self.width = self.w + 1
        if p != 2 and self.width * n > 62:
            raise ValueError(f"packed encoding does not fit {ctx}")
        width = 1 if p == 2 else self.width
        digits = np.array([e.coeffs for e in powers], dtype=np.int64).reshape(m, n)
        shifts = np.arange(n, dtype=np.int64) * width
        packed = (digits << shifts).sum(axis=1)

        self.ZERO_LOG = 2 * m
        # indices [0, 2m) wrap around the group, [2m, 4m] hit zero
        self.packed = np.zeros(4 * m + 1, dtype=np.int64)
        self.packed[:m] = packed
        self.packed[m:2 * m] = packed
        self.carry_const = sum((2**self.w - p) << (self.width * f) for f in range(n))
        self.guard_mask = sum(1 << (self.width * f) for f in range(n))

    def log(self, x: FieldElement) -> int:
        if x.is_zero():
            return self.ZERO_LOG
        return int(self.log_of_index[x.index])

    def element(self, log: int) -> FieldElement:
        if log >= self.ZERO_LOG:
            return self.ctx.zero
        return self.ctx.from_index(int(self.exp_index[log % self.m]))

    def all_logs(self) -> np.ndarray:
        """Logs of every element in index order (zero first)."""
        out = np.empty(self.order, dtype=np.int64)
        out[0] = self.ZERO_LOG
        out[1:] = self.log_of_index[1:]
        return out

    def scaled_logs(self, logs: np.ndarray, power: int, const_log: int) -> np.ndarray:
        """Log of c * x^power for each x; zero stays on the sentinel."""
        if power == 0:
            return np.full(logs.shape, const_log, dtype=np.int64)
        out = (logs * power + const_log) % self.m
        out[logs == self.ZERO_LOG] = self.ZERO_LOG
        return out

    def add_packed(self, acc: np.ndarray, v: np.ndarray) -> np.ndarray:
        if self.ctx.p == 2:
            return acc ^ v
        acc = acc + v
        acc -= ((acc + self.carry_const) >> self.w & self.guard_mask) * self.ctx.p
        return acc


@lru_cache(maxsize=16)
def log_tables(ctx: FieldCtx) -> LogTables:
    return LogTables(ctx)
