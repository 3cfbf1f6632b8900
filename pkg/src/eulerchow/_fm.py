"""Exact Fourier-Motzkin elimination over the integers.

A constraint is a tuple of ints ``(a_0, ..., a_{k-1}, c)`` read as
``a.x + c >= 0`` (inequality) or ``a.x + c == 0`` (equality).  Rows are kept
primitive (divided by the gcd of their entries) so that elimination never
leaves exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Sequence

Row = tuple[int, ...]


def _primitive(row: Sequence[int], *, orient: bool = False) -> Row:
    g = 0
    for v in row:
        g = gcd(g, v)
    if g > 1:
        row = [v // g for v in row]
    if orient:
        for v in row:
            if v:
                if v < 0:
                    row = [-x for x in row]
                break
    return tuple(row)


@dataclass(frozen=True)
class System:
    """Inequalities and equalities over a common variable layout."""

    ineqs: tuple[Row, ...]
    eqs: tuple[Row, ...]

    @classmethod
    def build(cls, ineqs, eqs=()) -> "System":
        return _clean([_primitive(r) for r in ineqs], [_primitive(r, orient=True) for r in eqs])

    @property
    def infeasible(self) -> bool:
        """True when a constant row is violated (only meaningful for rows
        with every variable coefficient zero)."""
        for r in self.ineqs:
            if not any(r[:-1]) and r[-1] < 0:
                return True
        for r in self.eqs:
            if not any(r[:-1]) and r[-1] != 0:
                return True
        return False


def _clean(ineqs: list[Row], eqs: list[Row]) -> System:
    # keep the tightest constant per coefficient vector; drop tautologies
    best: dict[Row, int] = {}
    for r in ineqs:
        a, c = r[:-1], r[-1]
        if not any(a) and c >= 0:
            continue
        if a not in best or c < best[a]:
            best[a] = c
    eqset = {r for r in eqs if any(r)}
    return System(
        tuple(sorted(a + (c,) for a, c in best.items())),
        tuple(sorted(eqset)),
    )


def eliminate(system: System, var: int) -> System:
    """Project ``var`` out of ``system`` exactly (over the rationals)."""
    pivot = None
    for r in system.eqs:
        if r[var]:
            if pivot is None or abs(r[var]) < abs(pivot[var]):
                pivot = r
    if pivot is not None:
        p = pivot[var]
        if p < 0:
            pivot = tuple(-v for v in pivot)
            p = -p

        def subst(r: Row) -> Row:
            a = r[var]
            if not a:
                return r
            return tuple(p * x - a * y for x, y in zip(r, pivot))

        ineqs = [_primitive(subst(r)) for r in system.ineqs]
        # the pivot row substitutes to zero and is dropped by _clean
        eqs = [_primitive(subst(r), orient=True) for r in system.eqs]
        return _clean(ineqs, eqs)

    pos, neg, rest = [], [], []
    for r in system.ineqs:
        a = r[var]
        (pos if a > 0 else neg if a < 0 else rest).append(r)
    for P in pos:
        for N in neg:
            p, n = P[var], -N[var]
            rest.append(_primitive(tuple(n * x + p * y for x, y in zip(P, N))))
    return _clean(rest, list(system.eqs))


def elimination_chain(system: System, variables: Sequence[int]) -> list[System]:
    """Eliminate ``variables`` in order; return every intermediate system.

    ``chain[0]`` is the input and ``chain[i]`` has the first ``i`` listed
    variables projected out.
    """
    chain = [system]
    for v in variables:
        chain.append(eliminate(chain[-1], v))
    return chain


def interval(system: System, var: int, values: Sequence) -> tuple[Fraction | None, Fraction | None] | None:
    """Rational bounds on ``var`` when every other variable takes ``values``.

    Entries of ``values`` at positions with zero coefficient everywhere are
    ignored.  Returns ``None`` if the system is infeasible at this partial
    assignment, else ``(lo, hi)`` with ``None`` marking an open side.
    """
    lo: Fraction | None = None
    hi: Fraction | None = None
    n = len(values)
    for r in system.eqs:
        rest = r[-1] + sum(r[i] * values[i] for i in range(n) if i != var and r[i])
        a = r[var]
        if a:
            x = Fraction(-rest, a)
            if (lo is not None and x < lo) or (hi is not None and x > hi):
                return None
            lo = hi = x
        elif rest != 0:
            return None
    for r in system.ineqs:
        rest = r[-1] + sum(r[i] * values[i] for i in range(n) if i != var and r[i])
        a = r[var]
        if a > 0:
            x = Fraction(-rest, a)
            if lo is None or x > lo:
                lo = x
        elif a < 0:
            x = Fraction(rest, -a)
            if hi is None or x < hi:
                hi = x
        elif rest < 0:
            return None
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def integer_interval(system: System, var: int, values: Sequence) -> tuple[int | None, int | None] | None:
    bounds = interval(system, var, values)
    if bounds is None:
        return None
    lo, hi = bounds
    ilo = None if lo is None else ceil(lo)
    ihi = None if hi is None else floor(hi)
    if ilo is not None and ihi is not None and ilo > ihi:
        return None
    return ilo, ihi


def feasible_point(system: System, nvars: int) -> list[Fraction] | None:
    """A rational point satisfying ``system`` or ``None`` if there is none.

    Variables are eliminated from the last to the first, then assigned
    front to back, each at its lower bound when one exists.
    """
    order = list(range(nvars - 1, -1, -1))
    chain = elimination_chain(system, order)
    if chain[-1].infeasible:
        return None
    values: list = [0] * nvars
    # chain[nvars - j] still contains variable j-1 and all earlier ones
    for j in range(nvars):
        bounds = interval(chain[nvars - j - 1], j, values)
        if bounds is None:
            return None
        lo, hi = bounds
        values[j] = lo if lo is not None else hi if hi is not None else Fraction(0)
    return [Fraction(v) for v in values]
