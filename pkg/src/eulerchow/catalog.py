"""Closed forms and grading maps for projective spaces, ruled surfaces and
three-summand scrolls, plus the generic two-route bundle check.

Target gradings list the lowest cycle dimension first: a p-cycle class on
``P(E_1 + E_2 + E_3)`` over ``W`` is graded by ``(Pi_{p-2}(W), Pi_{p-1}(W),
Pi_p(W))`` with variables ``(t0, t1, t2)``; on a ruled surface the 1-cycle
grading is ``(Pi_0(C), Pi_1(C))`` with variables ``(t0, t1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .pushforward import MonoidMap, domain_spec, finite_fibers, push_numeric, push_symbolic
from .errors import InfiniteFiber, RankMismatch
from .grading import TruncationSpec
from .series import (
    ComparisonReport,
    ProductForm,
    TruncatedSeries,
    expand,
    geometric,
    odot,
    pf_power,
    ts_eq,
)


def _binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k else 0


@dataclass(frozen=True)
class RuledSurfaceSpec:
    g: int
    e: int

    def __post_init__(self):
        if self.g < 0 or self.e < 0:
            raise ValueError(f"need g >= 0 and e >= 0, got g={self.g}, e={self.e}")


@dataclass(frozen=True)
class ScrollSpec:
    n: int
    h: int
    p: int

    def __post_init__(self):
        if self.n < 1 or self.h < 0 or self.p < 2:
            raise ValueError(f"need n >= 1, h >= 0, p >= 2, got {self}")


def mcdonald_e0(chi: int) -> ProductForm:
    """Zero-cycle series ``(1 - t)^(-chi)`` of a connected variety with Euler characteristic chi."""
    return pf_power(geometric((1,)), chi)


def euler_chow_pn(n: int, p: int) -> ProductForm:
    """``(1 - t)^(-binom(n+1, p+1))``; the series 1 once ``p > n``."""
    if n < 0 or p < 0:
        raise ValueError(f"need n >= 0 and p >= 0, got n={n}, p={p}")
    return pf_power(geometric((1,)), _binom(n + 1, p + 1))


def ruled_series(s: RuledSurfaceSpec | tuple[int, int], p: int) -> ProductForm:
    if not isinstance(s, RuledSurfaceSpec):
        s = RuledSurfaceSpec(*s)
    if p == 0:
        return mcdonald_e0(4 - 4 * s.g)
    if p == 2:
        return geometric((1,))
    if p == 1:
        return ProductForm(2, (((1, 0), 2 - 2 * s.g), ((0, 1), 1), ((-s.e, 1), 1)))
    raise ValueError(f"a ruled surface has cycle dimensions 0, 1, 2; got p={p}")


def ruled_psi1(e: int) -> MonoidMap:
    """``(a, b, c) -> (a - c*e, b + c)``."""
    if e < 0:
        raise ValueError(f"e must be >= 0, got {e}")
    return two_bundle_psi(-e)


def two_bundle_psi(d: int) -> MonoidMap:
    """``(a, b, c) -> (a + d*c, b + c)`` for a line bundle with ``xi`` acting as d."""
    return MonoidMap([[1, 0, d], [0, 1, 1]])


def scroll3_psi(xi_c: int, xi_d: int, xi2_f: int, xi2_g: int) -> MonoidMap:
    """Domain order (a, b, c, d, e, f, g); target (Pi_{p-2}, Pi_{p-1}, Pi_p)."""
    return MonoidMap(
        [
            [1, 0, xi_c, xi_d, 0, 0, 0],
            [0, 1, 1, 1, 0, xi2_f, xi2_g],
            [0, 0, 0, 0, 1, 1, 1],
        ]
    )


def scroll3_factors(n: int, p: int) -> list[ProductForm]:
    """The seven rank-1 factors when every fiber product collapses to P^n."""
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    return (
        [euler_chow_pn(n, p - 2)]
        + [euler_chow_pn(n, p - 1)] * 3
        + [euler_chow_pn(n, p)] * 3
    )


def scroll3_printed_formula(n: int, h: int, p: int, sign: int) -> ProductForm:
    """The closed form with the mixed monomials ``t0^(sign*h) t1`` and
    ``t1^(sign*h) t2``; ``sign=-1`` is the negative-exponent variant."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    b0, b1, b2 = _binom(n + 1, p - 1), _binom(n + 1, p), _binom(n + 1, p + 1)
    return ProductForm(
        3,
        (
            ((1, 0, 0), b0),
            ((0, 1, 0), b1),
            ((0, 0, 1), b2),
            ((sign * h, 1, 0), 2 * b1),
            ((0, sign * h, 1), 2 * b2),
        ),
    )


@dataclass(frozen=True)
class BundleAssembly:
    """External product of ``factors`` pushed forward along ``psi``."""

    factors: tuple[ProductForm, ...]
    psi: MonoidMap

    def __init__(self, factors: Sequence[ProductForm], psi: MonoidMap):
        object.__setattr__(self, "factors", tuple(factors))
        object.__setattr__(self, "psi", psi)
        total = sum(f.rank for f in self.factors)
        if total != psi.domain_rank:
            raise RankMismatch(f"factor ranks sum to {total}, map domain rank is {psi.domain_rank}")

    @property
    def domain_form(self) -> ProductForm:
        return odot(*self.factors)


def ruled_assembly(g: int, e: int) -> BundleAssembly:
    return BundleAssembly(
        [mcdonald_e0(2 - 2 * g), geometric((1,)), geometric((1,))], ruled_psi1(e)
    )


def scroll3_assembly(n: int, h: int, p: int) -> BundleAssembly:
    return BundleAssembly(scroll3_factors(n, p), scroll3_psi(h, h, h, h))


@dataclass(frozen=True)
class AssemblyResult:
    form: ProductForm
    numeric: TruncatedSeries
    report: ComparisonReport


def bundle_assembly(asm: BundleAssembly, spec: TruncationSpec) -> AssemblyResult:
    """Push the assembly forward symbolically and numerically and compare.

    The domain series is expanded on the pulled-back region, so every
    target coefficient inside ``spec`` is certified.
    """
    if not finite_fibers(asm.psi):
        raise InfiniteFiber(f"{asm.psi.matrix} has a nonnegative kernel vector")
    domain = asm.domain_form
    form = push_symbolic(asm.psi, domain)
    numeric = push_numeric(asm.psi, expand(domain, domain_spec(asm.psi, spec)), spec)
    return AssemblyResult(form, numeric, ts_eq(expand(form, spec), numeric))
