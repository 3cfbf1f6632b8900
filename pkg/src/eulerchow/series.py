"""Product forms and their truncated expansions in the monoid ring Z[Z^r].

A :class:`ProductForm` stands for ``prod (1 - t^m)^(-n)`` over its factors
``(m, n)``.  :func:`expand` turns it into a :class:`TruncatedSeries`, the
exact coefficients on a half-space region ``{a : w.a <= B}``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import grading
from .errors import RankMismatch, SpecMismatch, ZeroMonomial
from .grading import Multidegree, TruncationSpec

Factor = tuple[Multidegree, int]


def _normalize(rank: int, factors: Iterable[tuple[Sequence[int], int]]) -> tuple[Factor, ...]:
    merged: dict[Multidegree, int] = defaultdict(int)
    for m, n in factors:
        m = grading.degree(m)
        if len(m) != rank:
            raise RankMismatch(f"factor monomial {m} does not have rank {rank}")
        if not any(m):
            raise ZeroMonomial("a product form factor cannot have the zero monomial")
        merged[m] += int(n)
    return tuple(sorted((m, n) for m, n in merged.items() if n))


@dataclass(frozen=True)
class ProductForm:
    """Canonical ``prod (1 - t^m)^(-n)``: factors merged, sorted, no zero exponents."""

    rank: int
    factors: tuple[Factor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", _normalize(self.rank, self.factors))

    @property
    def monomials(self) -> list[Multidegree]:
        return [m for m, _ in self.factors]

    def is_one(self) -> bool:
        return not self.factors

    def __mul__(self, other: "ProductForm") -> "ProductForm":
        return pf_mul(self, other)

    def __pow__(self, k: int) -> "ProductForm":
        return pf_power(self, k)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for m, n in self.factors:
            mono = "*".join(
                f"t{i}" if e == 1 else f"t{i}^{e}" for i, e in enumerate(m) if e
            )
            parts.append(f"(1-{mono})^{-n}")
        return "*".join(parts)


def one(rank: int) -> ProductForm:
    return ProductForm(rank)


def geometric(m: Sequence[int]) -> ProductForm:
    """``1/(1 - t^m)``."""
    m = grading.degree(m)
    if not any(m):
        raise ZeroMonomial("geometric series of the zero monomial")
    return ProductForm(len(m), ((m, 1),))


def pf_power(p: ProductForm, k: int) -> ProductForm:
    return ProductForm(p.rank, tuple((m, n * k) for m, n in p.factors))


def pf_mul(p: ProductForm, q: ProductForm) -> ProductForm:
    if p.rank != q.rank:
        raise RankMismatch(f"cannot multiply forms of rank {p.rank} and {q.rank}")
    return ProductForm(p.rank, p.factors + q.factors)


def pf_odot(p: ProductForm, q: ProductForm) -> ProductForm:
    """External product on Z^(r+s): ``(p odot q)(a, b) = p(a) q(b)``."""
    r, s = p.rank, q.rank
    factors = [(m + (0,) * s, n) for m, n in p.factors]
    factors += [((0,) * r + m, n) for m, n in q.factors]
    return ProductForm(r + s, tuple(factors))


def odot(*forms: ProductForm) -> ProductForm:
    result = ProductForm(0)
    for f in forms:
        result = pf_odot(result, f)
    return result


@dataclass(frozen=True)
class TruncatedSeries:
    """Sparse coefficients on the region of ``spec``.

    Degrees missing from ``coefficients`` have coefficient zero.  When
    ``complete`` is false, ``uncertified`` lists the in-region degrees whose
    value is not proven exact; ``None`` there means no degree is certified.
    """

    rank: int
    spec: TruncationSpec
    coefficients: Mapping[Multidegree, int]
    complete: bool = True
    uncertified: frozenset[Multidegree] | None = field(default_factory=frozenset)

    def __post_init__(self):
        if self.spec.rank != self.rank:
            raise RankMismatch(f"spec of rank {self.spec.rank} for a rank {self.rank} series")
        coeffs = {}
        for d in sorted(self.coefficients):
            c = self.coefficients[d]
            if not c:
                continue
            if len(d) != self.rank:
                raise RankMismatch(f"degree {d} in a rank {self.rank} series")
            if not self.spec.contains(d):
                raise ValueError(f"degree {d} lies outside the truncation region")
            coeffs[d] = c
        object.__setattr__(self, "coefficients", coeffs)
        if self.uncertified is not None:
            object.__setattr__(self, "uncertified", frozenset(self.uncertified))
        if self.complete and self.uncertified:
            raise ValueError("a complete series cannot list uncertified degrees")

    def __getitem__(self, d: Sequence[int]) -> int:
        return self.coefficients.get(tuple(d), 0)

    def certified(self, d: Sequence[int]) -> bool:
        if self.complete:
            return True
        if self.uncertified is None:
            return False
        return tuple(d) not in self.uncertified

    def items(self):
        return self.coefficients.items()

    def __len__(self) -> int:
        return len(self.coefficients)


def _factor_terms(n: int, dmax: int) -> list[int]:
    """Coefficients of ``(1 - x)^(-n)`` up to ``x^dmax``."""
    terms = [1]
    if n > 0:
        c = 1
        for d in range(1, dmax + 1):
            c = c * (n - 1 + d) // d
            terms.append(c)
    else:
        k = -n
        c = 1
        for d in range(1, min(k, dmax) + 1):
            c = -c * (k - d + 1) // d
            terms.append(c)
    return terms


def expand(p: ProductForm, spec: TruncationSpec) -> TruncatedSeries:
    """Exact coefficients of ``p`` on the region of ``spec``.

    Factors are convolved one at a time and out-of-region degrees are
    dropped immediately; since every monomial has positive grade, a dropped
    degree can never contribute back into the region.
    """
    if spec.rank != p.rank:
        raise RankMismatch(f"spec of rank {spec.rank} for a rank {p.rank} form")
    w = spec.functional
    grading.validate_functional(w, p.monomials)
    bound = spec.bound
    coeffs: dict[Multidegree, int] = {grading.zero(p.rank): 1}
    for m, n in p.factors:
        step = w(m)
        terms = _factor_terms(n, bound // step)
        acc: dict[Multidegree, int] = defaultdict(int)
        for a, c in coeffs.items():
            room = (bound - w(a)) // step
            shift = a
            for cd in terms[: room + 1]:
                acc[shift] += c * cd
                shift = grading.add(shift, m)
        coeffs = {d: c for d, c in acc.items() if c}
    return TruncatedSeries(p.rank, spec, coeffs)


def _check_compatible(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if f.rank != g.rank:
        raise RankMismatch(f"series of rank {f.rank} and {g.rank}")
    if f.spec != g.spec:
        raise SpecMismatch(f"truncation specs differ: {f.spec} vs {g.spec}")


def ts_mul(f: TruncatedSeries, g: TruncatedSeries, *, graded: bool = True) -> TruncatedSeries:
    """Convolution restricted to the common region.

    ``graded`` asserts both true series are supported where the functional
    is nonnegative; only then is the truncated product exact.
    """
    _check_compatible(f, g)
    spec = f.spec
    w, bound = spec.functional, spec.bound
    if graded:
        for s in (f, g):
            for d in s.coefficients:
                if w(d) < 0:
                    raise ValueError(f"degree {d} has negative grade; series is not graded")
    fg = {d: w(d) for d in f.coefficients}
    gg = sorted(((w(d), d, c) for d, c in g.coefficients.items()))
    acc: dict[Multidegree, int] = defaultdict(int)
    for a, ca in f.coefficients.items():
        room = bound - fg[a]
        for gb, b, cb in gg:
            if gb > room:
                break
            acc[grading.add(a, b)] += ca * cb

    if not graded or f.uncertified is None or g.uncertified is None:
        return TruncatedSeries(f.rank, spec, acc, complete=False, uncertified=None)
    if f.complete and g.complete:
        return TruncatedSeries(f.rank, spec, acc)
    # a product degree is unproven iff some contributing pair has an unproven side
    unc = set()
    f_all = set(f.coefficients) | f.uncertified
    g_all = set(g.coefficients) | g.uncertified
    for a in f.uncertified:
        for b in g_all:
            d = grading.add(a, b)
            if spec.contains(d):
                unc.add(d)
    for b in g.uncertified:
        for a in f_all:
            d = grading.add(a, b)
            if spec.contains(d):
                unc.add(d)
    return TruncatedSeries(f.rank, spec, acc, complete=not unc, uncertified=frozenset(unc))


def ts_odot(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """External product ``(f odot g)(a, b) = f(a) g(b)`` on the joint region.

    Both inputs must share a bound; the joint functional concatenates
    their weights.  Both series are assumed graded, as in :func:`ts_mul`.
    """
    if f.spec.bound != g.spec.bound:
        raise SpecMismatch(f"bounds differ: {f.spec.bound} vs {g.spec.bound}")
    bound = f.spec.bound
    spec = TruncationSpec(
        grading.GradingFunctional(f.spec.functional.weights + g.spec.functional.weights), bound
    )
    wf, wg = f.spec.functional, g.spec.functional
    gg = sorted((wg(b), b, c) for b, c in g.coefficients.items())
    coeffs = {}
    for a, ca in f.coefficients.items():
        room = bound - wf(a)
        for gb, b, cb in gg:
            if gb > room:
                break
            coeffs[a + b] = ca * cb
    rank = f.rank + g.rank
    if f.uncertified is None or g.uncertified is None:
        return TruncatedSeries(rank, spec, coeffs, complete=False, uncertified=None)
    unc = {
        a + b
        for a in f.uncertified
        for b in set(g.coefficients) | g.uncertified
        if spec.contains(a + b)
    }
    unc |= {
        a + b
        for a in set(f.coefficients) | f.uncertified
        for b in g.uncertified
        if spec.contains(a + b)
    }
    return TruncatedSeries(rank, spec, coeffs, complete=not unc, uncertified=frozenset(unc))


@dataclass(frozen=True)
class ComparisonReport:
    """Degrees where two truncated series disagree.

    Degrees not certified on both sides are left out of ``diffs`` and listed
    in ``skipped`` instead.
    """

    diffs: tuple[tuple[Multidegree, int, int], ...]
    left_complete: bool
    right_complete: bool
    skipped: tuple[Multidegree, ...] = ()

    @property
    def equal(self) -> bool:
        return not self.diffs


def ts_eq(f: TruncatedSeries, g: TruncatedSeries) -> ComparisonReport:
    _check_compatible(f, g)
    diffs, skipped = [], []
    for d in sorted(set(f.coefficients) | set(g.coefficients)):
        a, b = f[d], g[d]
        if a == b:
            continue
        if f.certified(d) and g.certified(d):
            diffs.append((d, a, b))
        else:
            skipped.append(d)
    return ComparisonReport(tuple(diffs), f.complete, g.complete, tuple(skipped))
