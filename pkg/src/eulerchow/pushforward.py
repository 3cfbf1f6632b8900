"""Pushforward of series along integer monoid maps ``Z_+^k -> Z^r``.

Two independent routes are provided: :func:`push_numeric` sums
coefficients over fibers, :func:`push_symbolic` substitutes monomials in a
product form.  Fiber finiteness and fiber enumeration are decided exactly
with Fourier-Motzkin elimination.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from . import _fm, grading
from .errors import InfiniteFiber, NotCoordinateSplit, RankMismatch, ZeroImageMonomial
from .grading import GradingFunctional, Multidegree, TruncationSpec
from .series import ProductForm, TruncatedSeries


@dataclass(frozen=True)
class MonoidMap:
    """Integer matrix acting on column vectors of the domain ``Z_+^k``."""

    matrix: tuple[tuple[int, ...], ...]
    domain_rank: int

    def __init__(self, matrix: Sequence[Sequence[int]], domain_rank: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        if domain_rank is None:
            if not rows:
                raise ValueError("domain_rank is required for a map with no rows")
            domain_rank = len(rows[0])
        if any(len(row) != domain_rank for row in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "domain_rank", domain_rank)

    @classmethod
    def identity(cls, rank: int) -> "MonoidMap":
        return cls([[int(i == j) for j in range(rank)] for i in range(rank)], rank)

    @property
    def target_rank(self) -> int:
        return len(self.matrix)

    @property
    def columns(self) -> list[Multidegree]:
        return [tuple(row[j] for row in self.matrix) for j in range(self.domain_rank)]

    def __call__(self, m: Sequence[int]) -> Multidegree:
        if len(m) != self.domain_rank:
            raise RankMismatch(f"rank {len(m)} degree fed to a map with domain rank {self.domain_rank}")
        return grading.degree(sum(a * x for a, x in zip(row, m)) for row in self.matrix)

    def pullback(self, functional: GradingFunctional) -> tuple[int, ...]:
        """Weights ``w o psi`` on the domain coordinates."""
        return tuple(functional(c) for c in self.columns)


@lru_cache(maxsize=256)
def finite_fibers(psi: MonoidMap) -> bool:
    """True iff the only nonnegative kernel vector of ``psi`` is zero."""
    k = psi.domain_rank
    if k == 0:
        return True
    eqs = [row + (0,) for row in psi.matrix]
    ineqs = [tuple(int(i == j) for j in range(k)) + (0,) for i in range(k)]
    ineqs.append((1,) * k + (-1,))
    chain = _fm.elimination_chain(_fm.System.build(ineqs, eqs), range(k - 1, -1, -1))
    return chain[-1].infeasible


@lru_cache(maxsize=256)
def _fiber_chain(psi: MonoidMap) -> list[_fm.System]:
    # layout: (m_0..m_{k-1}, a_0..a_{r-1}, 1); the a_i are never eliminated
    k, r = psi.domain_rank, psi.target_rank
    eqs = [row + tuple(-int(i == j) for j in range(r)) + (0,) for i, row in enumerate(psi.matrix)]
    ineqs = [tuple(int(i == j) for j in range(k + r)) + (0,) for i in range(k)]
    return _fm.elimination_chain(_fm.System.build(ineqs, eqs), range(k - 1, 0, -1))


def fiber(psi: MonoidMap, alpha: Sequence[int]) -> list[Multidegree]:
    """All ``m >= 0`` with ``psi(m) == alpha``, in lexicographic order.

    Depth-first search over the domain coordinates; the range of each
    coordinate comes from the exact projection of the fiber polytope, so
    every visited prefix extends to a rational point.
    """
    alpha = tuple(alpha)
    k, r = psi.domain_rank, psi.target_rank
    if len(alpha) != r:
        raise RankMismatch(f"target degree of rank {len(alpha)} for a map into rank {r}")
    if k == 0:
        return [()] if not any(alpha) else []
    chain = _fiber_chain(psi)
    values = [0] * k + list(alpha)
    out: list[Multidegree] = []

    def dfs(j: int) -> None:
        bounds = _fm.integer_interval(chain[k - 1 - j], j, values)
        if bounds is None:
            return
        lo, hi = bounds
        if hi is None:
            raise InfiniteFiber(f"coordinate {j} is unbounded over the fiber of {alpha}")
        for x in range(max(lo or 0, 0), hi + 1):
            values[j] = x
            if j + 1 == k:
                out.append(tuple(values[:k]))
            else:
                dfs(j + 1)
        values[j] = 0

    dfs(0)
    return out


def domain_spec(psi: MonoidMap, target: TruncationSpec) -> TruncationSpec:
    """Domain region whose image covers every fiber over ``target``.

    Uses the pulled-back weights with the same bound, so that a domain point
    lies in the region exactly when its image does.
    """
    if target.rank != psi.target_rank:
        raise RankMismatch(f"target spec of rank {target.rank} for a map into rank {psi.target_rank}")
    grading.validate_functional(target.functional, psi.columns)
    return TruncationSpec(GradingFunctional(psi.pullback(target.functional)), target.bound)


def _domain_points(psi: MonoidMap, target: TruncationSpec) -> Iterator[Multidegree]:
    yield from grading.enumerate_region(psi.domain_rank, domain_spec(psi, target))


def push_numeric(psi: MonoidMap, f: TruncatedSeries, target: TruncationSpec) -> TruncatedSeries:
    """Fiber sums of ``f`` on the region of ``target``.

    A target degree is certified when its whole fiber lies inside the region
    of ``f``; the others are recorded in ``uncertified``.
    """
    if f.rank != psi.domain_rank:
        raise RankMismatch(f"series of rank {f.rank} for a map with domain rank {psi.domain_rank}")
    if target.rank != psi.target_rank:
        raise RankMismatch(f"target spec of rank {target.rank} for a map into rank {psi.target_rank}")
    if not finite_fibers(psi):
        raise InfiniteFiber(f"{psi.matrix} has a nonnegative kernel vector")
    if not f.complete:
        raise ValueError("push_numeric needs a complete domain series")
    w = target.functional
    grading.validate_functional(w, psi.columns)

    acc: dict[Multidegree, int] = defaultdict(int)
    for m, c in f.items():
        a = psi(m)
        if target.contains(a):
            acc[a] += c

    # fiber points m of a satisfy nu.m <= ratio * w(a)
    mu = psi.pullback(w)
    nu = f.spec.functional.weights
    ratio = max(Fraction(n, u) for n, u in zip(nu, mu)) if mu else Fraction(0)
    unc: set[Multidegree] = set()
    if ratio * target.bound > f.spec.bound:
        for m in _domain_points(psi, target):
            if not f.spec.contains(m):
                unc.add(psi(m))
    return TruncatedSeries(psi.target_rank, target, acc, complete=not unc, uncertified=frozenset(unc))


def push_symbolic(psi: MonoidMap, p: ProductForm) -> ProductForm:
    """Substitute ``t^(x e_j) -> t^(x psi(e_j))`` in a coordinate-split form."""
    if p.rank != psi.domain_rank:
        raise RankMismatch(f"form of rank {p.rank} for a map with domain rank {psi.domain_rank}")
    if not finite_fibers(psi):
        raise InfiniteFiber(f"{psi.matrix} has a nonnegative kernel vector")
    factors = []
    for m, n in p.factors:
        support = [x for x in m if x]
        if len(support) != 1 or support[0] < 0:
            raise NotCoordinateSplit(f"factor monomial {m} is not a positive multiple of one coordinate")
        image = psi(m)
        if not any(image):
            raise ZeroImageMonomial(f"factor monomial {m} maps to zero")
        factors.append((image, n))
    return ProductForm(psi.target_rank, tuple(factors))
