"""Multidegrees, positive grading functionals and truncation regions.

A multidegree is a plain tuple of ints.  Components are kept inside the
signed 64-bit range; leaving it raises :class:`DegreeOverflow` instead of
silently growing.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from . import _fm
from .errors import (
    DegreeOverflow,
    NonPositiveMonomial,
    NoPositiveFunctional,
    RankMismatch,
    UnboundedRegion,
)

MAX_RANK = 16
_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1

Multidegree = tuple[int, ...]


def _check64(v: int) -> int:
    if not _INT64_MIN <= v <= _INT64_MAX:
        raise DegreeOverflow(f"degree component {v} outside the 64-bit range")
    return v


def degree(components: Iterable[int]) -> Multidegree:
    """Validate and freeze an exponent vector."""
    d = tuple(_check64(int(c)) for c in components)
    if len(d) > MAX_RANK:
        raise ValueError(f"rank {len(d)} exceeds the cap of {MAX_RANK}")
    return d


def zero(rank: int) -> Multidegree:
    return (0,) * rank


def add(a: Multidegree, b: Multidegree) -> Multidegree:
    if len(a) != len(b):
        raise RankMismatch(f"cannot add degrees of rank {len(a)} and {len(b)}")
    return tuple(_check64(x + y) for x, y in zip(a, b))


def scale(k: int, a: Multidegree) -> Multidegree:
    return tuple(_check64(k * x) for x in a)


def dot(w: Sequence[int], a: Sequence[int]) -> int:
    if len(w) != len(a):
        raise RankMismatch(f"rank {len(w)} functional applied to rank {len(a)} degree")
    return sum(x * y for x, y in zip(w, a))


@dataclass(frozen=True)
class GradingFunctional:
    """Positive integer weights ``w``; the grade of ``a`` is ``w . a``."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not self.weights:
            # rank 0 is allowed: the only degree is ()
            return
        if len(self.weights) > MAX_RANK:
            raise ValueError(f"rank {len(self.weights)} exceeds the cap of {MAX_RANK}")
        if any(w < 1 for w in self.weights):
            raise ValueError(f"weights must all be >= 1, got {self.weights}")

    @property
    def rank(self) -> int:
        return len(self.weights)

    def __call__(self, a: Sequence[int]) -> int:
        return dot(self.weights, a)

    @classmethod
    def ones(cls, rank: int) -> "GradingFunctional":
        return cls((1,) * rank)


@dataclass(frozen=True)
class TruncationSpec:
    """The region ``{a : functional(a) <= bound}``."""

    functional: GradingFunctional
    bound: int

    def __post_init__(self):
        if not isinstance(self.functional, GradingFunctional):
            object.__setattr__(self, "functional", GradingFunctional(self.functional))
        if self.bound < 0:
            raise ValueError(f"bound must be nonnegative, got {self.bound}")

    @property
    def rank(self) -> int:
        return self.functional.rank

    def contains(self, a: Sequence[int]) -> bool:
        return self.functional(a) <= self.bound


def validate_functional(functional: GradingFunctional, monomials: Iterable[Sequence[int]]) -> None:
    """Raise :class:`NonPositiveMonomial` unless every monomial has grade >= 1."""
    for m in monomials:
        v = functional(m)
        if v < 1:
            raise NonPositiveMonomial(m, v)


def auto_functional(monomials: Sequence[Sequence[int]]) -> GradingFunctional:
    """Find positive integer weights grading every monomial at least 1.

    The all-ones vector is returned whenever it works.  Otherwise the system
    ``w_i >= 1, w . m >= 1`` is solved by Fourier-Motzkin elimination and the
    rational solution is scaled to a primitive integer vector.
    """
    monomials = [tuple(m) for m in monomials]
    if not monomials:
        raise ValueError("auto_functional needs at least one monomial")
    r = len(monomials[0])
    for m in monomials:
        if len(m) != r:
            raise RankMismatch("monomials of different ranks")
        if not any(m):
            raise NoPositiveFunctional("the zero monomial cannot be graded")
    ones = GradingFunctional.ones(r)
    if all(ones(m) >= 1 for m in monomials):
        return ones

    rows = [tuple(m) + (-1,) for m in monomials]
    rows += [tuple(int(i == j) for j in range(r)) + (-1,) for i in range(r)]
    point = _fm.feasible_point(_fm.System.build(rows), r)
    if point is None:
        raise NoPositiveFunctional(
            f"no positive weights grade all of {sorted(set(monomials))} positively"
        )
    den = lcm(*(x.denominator for x in point))
    w = [int(x * den) for x in point]
    g = 0
    for x in w:
        g = gcd(g, x)
    w = [x // g for x in w]
    result = GradingFunctional(w)
    validate_functional(result, monomials)
    return result


def enumerate_region(rank: int, spec: TruncationSpec, positive_orthant_only: bool = True) -> Iterator[Multidegree]:
    """Yield the points of ``Z_+^rank`` inside ``spec`` in lexicographic order."""
    if not positive_orthant_only:
        raise UnboundedRegion("regions of Z^r are only enumerable inside the positive orthant")
    if spec.rank != rank:
        raise RankMismatch(f"spec of rank {spec.rank} used for rank {rank}")
    w = spec.functional.weights

    def rec(i: int, budget: int, prefix: tuple[int, ...]) -> Iterator[Multidegree]:
        if i == rank:
            yield prefix
            return
        for x in range(budget // w[i] + 1):
            yield from rec(i + 1, budget - x * w[i], prefix + (x,))

    yield from rec(0, spec.bound, ())
