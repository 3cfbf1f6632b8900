"""The acceptance checks, runnable from the CLI (``eulerchow selftest``) and
from pytest.

Each check returns ``(passed, detail)``.  Details never contain timings so
that repeated runs print byte-identical summaries.
"""

from __future__ import annotations

import io
import random
import sys
import time
from math import comb
from typing import Callable, TextIO

from . import catalog, dsl, series
from .grading import GradingFunctional, TruncationSpec, auto_functional
from .pushforward import MonoidMap, domain_spec, fiber, finite_fibers, push_numeric
from .errors import NoPositiveFunctional

Check = Callable[[], tuple[bool, str]]

RULED_CASES = [(0, 0), (0, 1), (0, 2), (1, 1), (2, 3)]
SCROLL_HS = [0, 1, 2, 3]
HOMOMORPHISM_SEED = 20240601
HOMOMORPHISM_PAIRS = 100

DETERMINISM_SCRIPT = """\
# decomposable ruled surface, g = 0, e = 1
map Psi = [[1,0,-1],[0,1,1]]
series E1 = ruled_e1(0, 1)
series Dom = odot(mcdonald(2), gf([1],1), gf([1],1))
expand E1 order 6
compare E1, push(Psi, Dom) order 12
expand pn(2, 1) order 4
"""


def check_ruled_two_path() -> tuple[bool, str]:
    start = time.perf_counter()
    bad = []
    for g, e in RULED_CASES:
        spec = TruncationSpec(GradingFunctional((1, e + 1)), 25)
        result = catalog.bundle_assembly(catalog.ruled_assembly(g, e), spec)
        closed = series.expand(catalog.ruled_series(catalog.RuledSurfaceSpec(g, e), 1), spec)
        report = series.ts_eq(closed, result.numeric)
        if not (report.equal and result.report.equal and result.numeric.complete):
            bad.append((g, e))
    elapsed = time.perf_counter() - start
    if bad:
        return False, f"diffs for (g,e) in {bad}"
    if elapsed >= 10:
        return False, "exceeded 10 s"
    return True, f"{len(RULED_CASES)} (g,e) cases equal on B=25"


def check_hirzebruch_spots() -> tuple[bool, str]:
    spec = TruncationSpec(GradingFunctional((1, 2)), 8)
    asm = catalog.ruled_assembly(0, 1)
    result = catalog.bundle_assembly(asm, spec)
    domain = series.expand(asm.domain_form, domain_spec(asm.psi, spec))
    expected = {(0, 0): 1, (1, 0): 2, (0, 1): 3}
    got = {}
    for alpha, want in expected.items():
        by_fiber = sum(domain[m] for m in fiber(asm.psi, alpha))
        got[alpha] = (result.numeric[alpha], by_fiber, series.expand(result.form, spec)[alpha])
        if got[alpha] != (want, want, want):
            return False, f"coefficient at {alpha}: {got[alpha]} != {want}"
    return True, "(0,0)=1 (1,0)=2 (0,1)=3"


def check_scroll() -> tuple[bool, str]:
    n, p, bound = 1, 2, 20
    matching = {}
    for h in SCROLL_HS:
        asm = catalog.scroll3_assembly(n, h, p)
        printed = {s: catalog.scroll3_printed_formula(n, h, p, s) for s in (1, -1)}
        gens = list(asm.psi.columns)
        for form in printed.values():
            gens += form.monomials
        spec = TruncationSpec(auto_functional(gens), bound)
        result = catalog.bundle_assembly(asm, spec)
        if not (result.report.equal and result.numeric.complete):
            return False, f"two-path disagreement at h={h}"
        matching[h] = [
            s for s, form in printed.items()
            if series.ts_eq(series.expand(form, spec), result.numeric).equal
        ]
    for h, signs in matching.items():
        if h == 0 and len(signs) != 2:
            return False, f"h=0: signs {signs} match, expected both"
        if h >= 1 and len(signs) != 1:
            return False, f"h={h}: {len(signs)} printed signs match, expected exactly one"
    found = sorted({matching[h][0] for h in SCROLL_HS if h >= 1})
    if len(found) != 1:
        return False, f"matching sign varies with h: {matching}"
    sign = "+1" if found[0] > 0 else "-1"
    return True, f"two paths agree for h=0..3; printed sign {sign} matches (t0^({sign[0]}h) t1)"


def check_two_bundle() -> tuple[bool, str]:
    for e in (0, 1, 2):
        spec = TruncationSpec(GradingFunctional((1, e + 1)), 25)
        asm = catalog.BundleAssembly(
            [catalog.mcdonald_e0(2), series.geometric((1,)), series.geometric((1,))],
            catalog.two_bundle_psi(-e),
        )
        result = catalog.bundle_assembly(asm, spec)
        target = catalog.ruled_series(catalog.RuledSurfaceSpec(0, e), 1)
        closed = series.expand(target, spec)
        if result.form != target or not series.ts_eq(closed, result.numeric).equal:
            return False, f"mismatch at e={e}"
    return True, "e=0,1,2 reproduce the ruled E_1"


def check_pn_first_order() -> tuple[bool, str]:
    spec = TruncationSpec(GradingFunctional((1,)), 1)
    for n in range(6):
        for p in range(n + 1):
            got = series.expand(catalog.euler_chow_pn(n, p), spec)[(1,)]
            if got != comb(n + 1, p + 1):
                return False, f"n={n} p={p}: {got} != {comb(n + 1, p + 1)}"
    return True, "21 (n,p) pairs"


def check_mcdonald() -> tuple[bool, str]:
    spec = TruncationSpec(GradingFunctional((1,)), 30)
    pos = series.expand(catalog.mcdonald_e0(2), spec)
    if any(pos[(d,)] != d + 1 for d in range(31)):
        return False, "chi=2 coefficients differ from d+1"
    neg = series.expand(catalog.mcdonald_e0(-2), spec)
    if dict(neg.items()) != {(0,): 1, (1,): -2, (2,): 1}:
        return False, f"chi=-2 gives {dict(neg.items())}"
    return True, "chi=2 -> d+1 (d<=30); chi=-2 -> 1-2t+t^2"


def check_e2_ruled() -> tuple[bool, str]:
    spec = TruncationSpec(GradingFunctional((1,)), 50)
    for g, e in [(0, 1), (3, 2)]:
        ts = series.expand(catalog.ruled_series(catalog.RuledSurfaceSpec(g, e), 2), spec)
        if any(ts[(d,)] != 1 for d in range(51)):
            return False, f"(g,e)=({g},{e}) has a coefficient != 1"
    return True, "all 51 coefficients are 1"


def random_form(rng: random.Random, rank: int) -> series.ProductForm:
    factors = []
    for _ in range(rng.randint(0, 3)):
        m = tuple(rng.randint(0, 2) for _ in range(rank))
        if not any(m):
            j = rng.randrange(rank)
            m = tuple(int(i == j) for i in range(rank))
        factors.append((m, rng.randint(-3, 3)))
    return series.ProductForm(rank, tuple(factors))


def random_map(rng: random.Random, domain_rank: int) -> tuple[MonoidMap, GradingFunctional]:
    """A finite-fiber map with entries in [-2, 2] whose columns admit a
    positive grading; draws are repeated until both hold."""
    while True:
        r = rng.randint(1, 3)
        psi = MonoidMap([[rng.randint(-2, 2) for _ in range(domain_rank)] for _ in range(r)])
        if not finite_fibers(psi):
            continue
        try:
            return psi, auto_functional(psi.columns)
        except NoPositiveFunctional:
            continue


def check_homomorphism(seed: int = HOMOMORPHISM_SEED, pairs: int = HOMOMORPHISM_PAIRS) -> tuple[bool, str]:
    start = time.perf_counter()
    rng = random.Random(seed)
    for i in range(pairs):
        k = rng.randint(1, 3)
        psi, w = random_map(rng, k)
        f, g = random_form(rng, k), random_form(rng, k)
        target = TruncationSpec(w, rng.randint(1, 12))
        dom = domain_spec(psi, target)
        F, G = series.expand(f, dom), series.expand(g, dom)
        lhs = push_numeric(psi, series.ts_mul(F, G), target)
        rhs = series.ts_mul(push_numeric(psi, F, target), push_numeric(psi, G, target))
        report = series.ts_eq(lhs, rhs)
        if not report.equal or not (lhs.complete and rhs.complete):
            return False, f"pair {i}: psi={psi.matrix} f={f} g={g} diffs={report.diffs[:3]}"
    if time.perf_counter() - start >= 60:
        return False, "exceeded 60 s"
    return True, f"{pairs} seeded pairs (seed {seed})"


def _run_script_output(text: str) -> str:
    from .cli import write_results

    buf = io.StringIO()
    write_results(dsl.evaluate(dsl.parse(text)), buf, "json")
    return buf.getvalue()


def check_determinism() -> tuple[bool, str]:
    first = _run_script_output(DETERMINISM_SCRIPT)
    second = _run_script_output(DETERMINISM_SCRIPT)
    if first != second:
        return False, "script output differs between runs"
    return True, f"{len(first.encode())} identical bytes twice"


CRITERIA: list[tuple[int, str, Check]] = [
    (1, "ruled surface E_1 two-path identity", check_ruled_two_path),
    (2, "Hirzebruch spot coefficients", check_hirzebruch_spots),
    (3, "scroll two-path + printed sign", check_scroll),
    (4, "two-bundle map consistency", check_two_bundle),
    (5, "P^n first-order coefficients", check_pn_first_order),
    (6, "zero-cycle series", check_mcdonald),
    (7, "ruled surface E_2 all ones", check_e2_ruled),
    (8, "pushforward is multiplicative", check_homomorphism),
    (9, "run output determinism", check_determinism),
]


def run_selftest(out: TextIO | None = None) -> int:
    out = out or sys.stdout
    failed = None
    for num, title, check in CRITERIA:
        try:
            ok, detail = check()
        except Exception as exc:  # a crash is a failed criterion
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.write(f"#{num:<2} {'PASS' if ok else 'FAIL'}  {title:<38} {detail}\n")
        if not ok and failed is None:
            failed = (num, title)
    if failed:
        out.write(f"FAILED: acceptance #{failed[0]} ({failed[1]})\n")
        return 1
    out.write(f"all {len(CRITERIA)} acceptance criteria passed\n")
    return 0
