"""Brute-force point counting on plane curves over F_{p^r}.

This is the ground truth the bootstrap is checked against, so it shares
nothing with :mod:`curvezeta.zeta`. Projective points are enumerated in
three strata: (x, y, 1), (x, 1, 0) and (1, 0, 0).

The affine stratum dominates (q^2 evaluations) and is vectorized with
numpy over slices of x values; ``workers`` spreads the slices over a
thread pool and the total is independent of how the plane is sliced.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import BudgetExceeded
from .finite_field import LogTables, field, log_tables

DEFAULT_BUDGET = 10**9
_CHUNK = 1 << 20  # grid cells per numpy slice
_ONE_LOG = np.zeros(1, dtype=np.int64)  # y = 1 on the line at infinity

Terms = Mapping[tuple[int, int, int], int]


@dataclass(frozen=True)
class PlaneCurve:
    """A homogeneous polynomial F(x, y, z) over F_p; the curve is F = 0."""

    p: int
    terms: tuple  # sorted ((i, j, k), coeff) pairs, coeff in [1, p)
    degree: int

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a plane curve needs at least one term")
        for (i, j, k), c in self.terms:
            if i + j + k != self.degree:
                raise ValueError(f"term x^{i} y^{j} z^{k} is not of degree {self.degree}")
            if not 0 < c < self.p:
                raise ValueError(f"coefficient {c} is not a nonzero residue mod {self.p}")

    @classmethod
    def from_terms(cls, p: int, terms: Terms) -> PlaneCurve:
        clean = {tuple(e): c % p for e, c in terms.items() if c % p}
        degree = sum(next(iter(clean))) if clean else 0
        return cls(p, tuple(sorted(clean.items(), reverse=True)), degree)

    @classmethod
    def parse(cls, src: str, p: int) -> PlaneCurve:
        from .parse import parse_poly

        return parse_poly(src, p)

    @property
    def term_dict(self) -> dict:
        return dict(self.terms)

    def permuted(self, perm: tuple[int, int, int]) -> PlaneCurve:
        """Substitute variable perm[v] for variable v (a coordinate relabeling)."""
        out = {}
        for e, c in self.terms:
            new = [0, 0, 0]
            for v in range(3):
                new[perm[v]] = e[v]
            out[tuple(new)] = c
        return PlaneCurve.from_terms(self.p, out)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "degree": self.degree,
            "terms": [{"i": i, "j": j, "k": k, "coeff": c} for (i, j, k), c in self.terms],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> PlaneCurve:
        terms = {(t["i"], t["j"], t["k"]): t["coeff"] for t in obj["terms"]}
        curve = cls.from_terms(obj["p"], terms)
        if curve.degree != obj.get("degree", curve.degree):
            raise ValueError("degree field disagrees with the terms")
        return curve

    def __str__(self):
        parts = []
        for (i, j, k), c in self.terms:
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip("xyz", (i, j, k)) if e
            )
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def partial_derivative(terms: Terms, var: int, p: int) -> dict:
    """Formal derivative of a homogeneous polynomial in variable 0, 1 or 2."""
    out = {}
    for e, c in dict(terms).items():
        if e[var] == 0:
            continue
        coeff = c * e[var] % p
        if coeff:
            new = list(e)
            new[var] -= 1
            out[tuple(new)] = coeff
    return out


@dataclass(frozen=True)
class PointCount:
    r: int
    count: int

    def __int__(self):
        return self.count


# -- vectorized evaluation -------------------------------------------------

def _zero_mask(tables: LogTables, terms2: Iterable, xlogs: np.ndarray, ylogs: np.ndarray) -> np.ndarray:
    """Boolean grid: does sum c x^i y^j vanish at (x, y)?  terms2 = [((i, j), c)]."""
    acc = np.zeros((len(xlogs), len(ylogs)), dtype=np.int64)
    one = tables.ctx.one
    for (i, j), c in terms2:
        cl = tables.log(one * c)
        a = tables.scaled_logs(xlogs, i, cl)
        b = tables.scaled_logs(ylogs, j, 0)
        acc = tables.add_packed(acc, tables.packed[a[:, None] + b[None, :]])
    return acc == 0


def _affine_terms(terms: Terms) -> list:
    """Dehomogenize at z = 1 (the exponent of z is dropped)."""
    return [((i, j), c) for (i, j, _k), c in dict(terms).items()]


def _infinity_terms(terms: Terms) -> list:
    """Restrict to z = 0, y = 1: only monomials free of z survive."""
    return [((i, 0), c) for (i, _j, k), c in dict(terms).items() if k == 0]


def _slices(n: int, rows: int) -> list[slice]:
    return [slice(s, min(n, s + rows)) for s in range(0, n, rows)]


def count_affine_zeros(tables: LogTables, terms2: list, rows: int | None = None, workers: int = 1) -> int:
    """Number of (x, y) in F_Q^2 with sum c x^i y^j = 0."""
    logs = tables.all_logs()
    if rows is None:
        rows = max(1, _CHUNK // tables.order)
    parts = _slices(tables.order, rows)

    def work(sl):
        return int(np.count_nonzero(_zero_mask(tables, terms2, logs[sl], logs)))

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return sum(pool.map(work, parts))
    return sum(map(work, parts))


def _check_budget(needed: int, budget: int | None):
    budget = DEFAULT_BUDGET if budget is None else budget
    if needed > budget:
        raise BudgetExceeded(needed, budget)


def count_points(curve: PlaneCurve, r: int, *, budget: int | None = None,
                 workers: int = 1, rows: int | None = None) -> PointCount:
    """Number of points of the projective curve over F_{p^r}."""
    if r < 1:
        raise ValueError("extension degree must be at least 1")
    Q = curve.p**r
    _check_budget(Q * Q + Q + 1, budget)
    tables = log_tables(field(curve.p, r))
    terms = curve.term_dict
    n = count_affine_zeros(tables, _affine_terms(terms), rows=rows, workers=workers)
    n += int(np.count_nonzero(_zero_mask(tables, _infinity_terms(terms), tables.all_logs(), _ONE_LOG)))
    n += (curve.degree, 0, 0) not in terms  # F(1, 0, 0) is the x^d coefficient
    return PointCount(r, n)


def count_points_reference(curve: PlaneCurve, r: int, *, budget: int | None = None) -> PointCount:
    """Slow pure-Python count through ``FieldElement`` arithmetic (for cross-checks)."""
    ctx = field(curve.p, r)
    Q = ctx.order
    _check_budget(Q * Q + Q + 1, budget)
    elems = [ctx.from_index(i) for i in range(Q)]
    one, zero = ctx.one, ctx.zero

    def F(x, y, z):
        acc = zero
        for (i, j, k), c in curve.terms:
            acc = acc + (x**i) * (y**j) * (z**k) * c
        return acc

    n = sum(F(x, y, one).is_zero() for x in elems for y in elems)
    n += sum(F(x, one, zero).is_zero() for x in elems)
    n += F(one, zero, zero).is_zero()
    return PointCount(r, n)


# -- Weierstrass cubics ---------------------------------------------------

@dataclass(frozen=True)
class WeierstrassCubic:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_p."""

    p: int
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @property
    def a(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def affine_terms(self) -> list:
        """Terms of y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 in (x, y)."""
        p = self.p
        raw = {(0, 2): 1, (1, 1): self.a1, (0, 1): self.a3, (3, 0): -1,
               (2, 0): -self.a2, (1, 0): -self.a4, (0, 0): -self.a6}
        return [(e, c % p) for e, c in raw.items() if c % p]

    def to_plane_curve(self) -> PlaneCurve:
        return PlaneCurve.from_terms(self.p, {(i, j, 3 - i - j): c for (i, j), c in self.affine_terms()})

    def __str__(self):
        def side(parts):
            out = []
            for c, mono in parts:
                if c % self.p:
                    out.append(mono if c % self.p == 1 and mono else f"{c % self.p}{'*' + mono if mono else ''}")
            return " + ".join(out) or "0"

        lhs = side([(1, "y^2"), (self.a1, "x*y"), (self.a3, "y")])
        rhs = side([(1, "x^3"), (self.a2, "x^2"), (self.a4, "x"), (self.a6, "")])
        return f"{lhs} = {rhs}"


def weierstrass_discriminant(E: WeierstrassCubic) -> int:
    a1, a2, a3, a4, a6 = E.a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return (-b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6) % E.p


def weierstrass_count(E: WeierstrassCubic, r: int, *, budget: int | None = None) -> PointCount:
    """Affine solutions over F_{p^r} plus the single point at infinity."""
    Q = E.p**r
    _check_budget(Q * Q, budget)
    tables = log_tables(field(E.p, r))
    return PointCount(r, count_affine_zeros(tables, E.affine_terms()) + 1)


def classify_cubics(p: int = 2, *, budget: int | None = None) -> dict[int, list[WeierstrassCubic]]:
    """Nonsingular normal-form cubics over F_p grouped by N_1, in enumeration order."""
    _check_budget(p**5 * p * p, budget)
    groups: dict[int, list[WeierstrassCubic]] = {}
    for a in itertools.product(range(p), repeat=5):
        E = WeierstrassCubic(p, *a)
        if weierstrass_discriminant(E):
            groups.setdefault(weierstrass_count(E, 1).count, []).append(E)
    return dict(sorted(groups.items()))


# -- singularity search ---------------------------------------------------

@dataclass(frozen=True)
class SmoothnessVerdict:
    """Outcome of a bounded search; a clean verdict certifies nothing beyond r_max."""

    r_max: int
    singular_point: tuple | None = None
    r: int | None = None

    @property
    def singular(self) -> bool:
        return self.singular_point is not None

    def __str__(self):
        if self.singular:
            return f"singular at ({' : '.join(map(repr, self.singular_point))}) over F_p^{self.r}"
        return f"no singular point over F_p^r for r <= {self.r_max}"


def smoothness_probe(curve: PlaneCurve, r_max: int = 3, *, budget: int | None = None) -> SmoothnessVerdict:
    """Look for a common zero of F, F_x, F_y, F_z over F_{p^r}, r = 1..r_max."""
    p = curve.p
    _check_budget(sum(4 * (p**r) ** 2 for r in range(1, r_max + 1)), budget)
    polys = [curve.term_dict] + [partial_derivative(curve.term_dict, v, p) for v in range(3)]
    for r in range(1, r_max + 1):
        ctx = field(p, r)
        tables = log_tables(ctx)
        logs = tables.all_logs()
        rows = max(1, _CHUNK // tables.order)
        for sl in _slices(tables.order, rows):
            mask = np.ones((sl.stop - sl.start, tables.order), dtype=bool)
            for t in polys:
                mask &= _zero_mask(tables, _affine_terms(t), logs[sl], logs)
            hits = np.argwhere(mask)
            if len(hits):
                ix, iy = hits[0]
                return SmoothnessVerdict(r_max, (ctx.from_index(sl.start + int(ix)), ctx.from_index(int(iy)), ctx.one), r)
        mask = np.ones(tables.order, dtype=bool)
        for t in polys:
            mask &= _zero_mask(tables, _infinity_terms(t), logs, _ONE_LOG)[:, 0]
        hits = np.flatnonzero(mask)
        if len(hits):
            return SmoothnessVerdict(r_max, (ctx.from_index(int(hits[0])), ctx.one, ctx.zero), r)
        if all((curve.degree - (v > 0), 0, 0) not in t for v, t in enumerate(polys)):
            return SmoothnessVerdict(r_max, (ctx.one, ctx.zero, ctx.zero), r)
    return SmoothnessVerdict(r_max)

