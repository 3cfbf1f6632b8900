"""A small script language for defining series, maps and comparisons.

Example::

    map Psi = [[1,0,-1],[0,1,1]]
    series E1 = ruled_e1(0, 1)
    compare E1, push(Psi, odot(mcdonald(2), gf([1],1), gf([1],1))) order 10

``push`` is evaluated by fiber sums, so a ``compare`` against a catalog
closed form checks one route against the other.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from . import catalog, grading, series
from .errors import EulerChowError, RankMismatch
from .grading import GradingFunctional, TruncationSpec
from .pushforward import MonoidMap, domain_spec, push_numeric
from .series import ComparisonReport, ProductForm, TruncatedSeries


@dataclass(frozen=True)
class Span:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ScriptError(EulerChowError):
    def __init__(self, span: Span | None, message: str):
        self.span = span
        self.message = message
        super().__init__(f"{span}: {message}" if span else message)


class DslSyntaxError(ScriptError):
    def __init__(self, span: Span, expected: tuple[str, ...], found: str):
        self.expected = expected
        self.found = found
        super().__init__(span, f"expected {' or '.join(expected)}, found {found}")


class DuplicateName(ScriptError):
    pass


class UnboundName(ScriptError):
    pass


class WrongKind(ScriptError):
    pass


# -- lexer -----------------------------------------------------------------

KEYWORDS = {
    "series", "map", "functional", "expand", "compare", "order",
    "one", "gf", "mcdonald", "pn", "ruled_e1", "ruled", "scroll3", "odot", "push",
}

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>\#[^\n]*)"
    r"|(?P<int>-?[0-9]+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[=,*()\[\]+-])"
)

INT64_MIN, INT64_MAX = -(2**63), 2**63 - 1


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "kw", "sym", "eof"
    text: str
    span: Span

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        span = Span(line, pos - line_start + 1)
        if m is None:
            raise DslSyntaxError(span, ("a token",), repr(text[pos]))
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            word = m.group()
            tokens.append(Token("kw" if word in KEYWORDS else "ident", word, span))
        elif kind == "int":
            value = int(m.group())
            if not INT64_MIN <= value <= INT64_MAX:
                raise ScriptError(span, f"integer {m.group()} outside the 64-bit range")
            tokens.append(Token("int", m.group(), span))
        elif kind == "sym":
            tokens.append(Token("sym", m.group(), span))
        pos = m.end()
    tokens.append(Token("eof", "", Span(line, pos - line_start + 1)))
    return tokens


# -- AST -------------------------------------------------------------------

_span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Ref:
    name: str
    span: Span | None = _span


@dataclass(frozen=True)
class One:
    span: Span | None = _span


@dataclass(frozen=True)
class Gf:
    monomial: tuple[int, ...]
    exponent: int
    span: Span | None = _span


@dataclass(frozen=True)
class Call:
    """Catalog constructor with integer (or sign) arguments."""

    name: str
    args: tuple[int, ...]
    span: Span | None = _span


@dataclass(frozen=True)
class Odot:
    operands: tuple["Expr", ...]
    span: Span | None = _span


@dataclass(frozen=True)
class Push:
    map_name: str
    operand: "Expr"
    span: Span | None = _span


@dataclass(frozen=True)
class Product:
    terms: tuple["Expr", ...]
    span: Span | None = _span


Expr = Union[Ref, One, Gf, Call, Odot, Push, Product]


@dataclass(frozen=True)
class SeriesDef:
    name: str
    expr: Expr
    span: Span | None = _span


@dataclass(frozen=True)
class MapDef:
    name: str
    matrix: tuple[tuple[int, ...], ...]
    span: Span | None = _span


@dataclass(frozen=True)
class FunctionalDef:
    name: str
    weights: tuple[int, ...]
    span: Span | None = _span


@dataclass(frozen=True)
class Expand:
    expr: Expr
    order: int
    functional: str | None = None
    span: Span | None = _span


@dataclass(frozen=True)
class Compare:
    left: Expr
    right: Expr
    order: int
    functional: str | None = None
    span: Span | None = _span


Statement = Union[SeriesDef, MapDef, FunctionalDef, Expand, Compare]


@dataclass(frozen=True)
class Script:
    statements: tuple[Statement, ...]


# -- parser ----------------------------------------------------------------

# catalog term name -> number of integer arguments (scroll3 takes a trailing sign)
_CALL_ARITY = {"mcdonald": 1, "pn": 2, "ruled_e1": 2, "ruled": 3, "scroll3": 3}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.kinds: dict[str, str] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def fail(self, *expected: str):
        raise DslSyntaxError(self.tok.span, expected, self.tok.describe())

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("sym", "kw"):
            self.fail(repr(text))
        return self.advance()

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail("an integer")
        return int(self.advance().text)

    def ident(self) -> Token:
        if self.tok.kind != "ident":
            self.fail("a name")
        return self.advance()

    def bind(self, tok: Token, kind: str) -> str:
        if tok.text in self.kinds:
            raise DuplicateName(tok.span, f"{tok.text!r} is already bound")
        self.kinds[tok.text] = kind
        return tok.text

    def use(self, tok: Token, kind: str) -> str:
        bound = self.kinds.get(tok.text)
        if bound is None:
            raise UnboundName(tok.span, f"{tok.text!r} is not bound")
        if bound != kind:
            raise WrongKind(tok.span, f"{tok.text!r} is a {bound}, expected a {kind}")
        return tok.text

    def script(self) -> Script:
        statements = []
        while self.tok.kind != "eof":
            statements.append(self.statement())
        return Script(tuple(statements))

    def statement(self) -> Statement:
        tok = self.tok
        span = tok.span
        if tok.kind == "kw" and tok.text == "series":
            self.advance()
            name_tok = self.ident()
            self.expect("=")
            expr = self.expr()
            return SeriesDef(self.bind(name_tok, "series"), expr, span)
        if tok.kind == "kw" and tok.text == "map":
            self.advance()
            name_tok = self.ident()
            self.expect("=")
            matrix = self.matrix()
            return MapDef(self.bind(name_tok, "map"), matrix, span)
        if tok.kind == "kw" and tok.text == "functional":
            self.advance()
            name_tok = self.ident()
            self.expect("=")
            vector = self.vector()
            return FunctionalDef(self.bind(name_tok, "functional"), vector, span)
        if tok.kind == "kw" and tok.text == "expand":
            self.advance()
            expr = self.expr()
            order, fname = self.order_clause()
            return Expand(expr, order, fname, span)
        if tok.kind == "kw" and tok.text == "compare":
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            order, fname = self.order_clause()
            return Compare(left, right, order, fname, span)
        self.fail("'series'", "'map'", "'functional'", "'expand'", "'compare'")

    def order_clause(self) -> tuple[int, str | None]:
        line = self.expect("order").span.line
        order = self.integer()
        fname = None
        # on a later line, 'functional' starts a new definition
        if self.tok.kind == "kw" and self.tok.text == "functional" and self.tok.span.line == line:
            self.advance()
            fname = self.use(self.ident(), "functional")
        return order, fname

    def expr(self) -> Expr:
        span = self.tok.span
        terms = [self.term()]
        while self.tok.kind == "sym" and self.tok.text == "*":
            self.advance()
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Product(tuple(terms), span)

    def term(self) -> Expr:
        tok = self.tok
        span = tok.span
        if tok.kind == "ident":
            self.advance()
            return Ref(self.use(tok, "series"), span)
        if tok.kind != "kw":
            self.fail("a series term")
        name = tok.text
        if name == "one":
            self.advance()
            return One(span)
        if name == "gf":
            self.advance()
            self.expect("(")
            vec = self.vector()
            self.expect(",")
            n = self.integer()
            self.expect(")")
            return Gf(vec, n, span)
        if name in _CALL_ARITY:
            self.advance()
            self.expect("(")
            args = [self.integer()]
            for _ in range(_CALL_ARITY[name] - 1):
                self.expect(",")
                args.append(self.integer())
            if name == "scroll3":
                self.expect(",")
                if self.tok.kind == "sym" and self.tok.text in "+-":
                    args.append(1 if self.advance().text == "+" else -1)
                else:
                    self.fail("'+'", "'-'")
            self.expect(")")
            return Call(name, tuple(args), span)
        if name == "odot":
            self.advance()
            self.expect("(")
            operands = [self.expr()]
            while self.tok.kind == "sym" and self.tok.text == ",":
                self.advance()
                operands.append(self.expr())
            self.expect(")")
            return Odot(tuple(operands), span)
        if name == "push":
            self.advance()
            self.expect("(")
            map_name = self.use(self.ident(), "map")
            self.expect(",")
            operand = self.expr()
            self.expect(")")
            return Push(map_name, operand, span)
        self.fail("a series term")

    def vector(self) -> tuple[int, ...]:
        self.expect("[")
        items = [self.integer()]
        while self.tok.kind == "sym" and self.tok.text == ",":
            self.advance()
            items.append(self.integer())
        self.expect("]")
        return tuple(items)

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        self.expect("[")
        rows = [self.vector()]
        while self.tok.kind == "sym" and self.tok.text == ",":
            self.advance()
            rows.append(self.vector())
        self.expect("]")
        return tuple(rows)


def parse(text: str) -> Script:
    return _Parser(text).script()


# -- pretty printer --------------------------------------------------------

def _vec(v) -> str:
    return "[" + ", ".join(str(x) for x in v) + "]"


def format_expr(e: Expr) -> str:
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, One):
        return "one"
    if isinstance(e, Gf):
        return f"gf({_vec(e.monomial)}, {e.exponent})"
    if isinstance(e, Call):
        args = [str(a) for a in e.args]
        if e.name == "scroll3":
            args[-1] = "+" if e.args[-1] > 0 else "-"
        return f"{e.name}({', '.join(args)})"
    if isinstance(e, Odot):
        return f"odot({', '.join(format_expr(x) for x in e.operands)})"
    if isinstance(e, Push):
        return f"push({e.map_name}, {format_expr(e.operand)})"
    if isinstance(e, Product):
        return " * ".join(format_expr(t) for t in e.terms)
    raise TypeError(e)


def format_statement(s: Statement) -> str:
    if isinstance(s, SeriesDef):
        return f"series {s.name} = {format_expr(s.expr)}"
    if isinstance(s, MapDef):
        return f"map {s.name} = [{', '.join(_vec(r) for r in s.matrix)}]"
    if isinstance(s, FunctionalDef):
        return f"functional {s.name} = {_vec(s.weights)}"
    suffix = f" functional {s.functional}" if s.functional else ""
    if isinstance(s, Expand):
        return f"expand {format_expr(s.expr)} order {s.order}{suffix}"
    return f"compare {format_expr(s.left)}, {format_expr(s.right)} order {s.order}{suffix}"


def format_script(script: Script) -> str:
    return "".join(format_statement(s) + "\n" for s in script.statements)


# -- evaluation ------------------------------------------------------------

class Value:
    """A series that can be expanded on any region grading its generators."""

    rank: int

    def generators(self) -> list[grading.Multidegree]:
        raise NotImplementedError

    def expand(self, spec: TruncationSpec) -> TruncatedSeries:
        raise NotImplementedError


@dataclass(frozen=True)
class FormValue(Value):
    form: ProductForm

    @property
    def rank(self) -> int:
        return self.form.rank

    def generators(self):
        return self.form.monomials

    def expand(self, spec):
        return series.expand(self.form, spec)


@dataclass(frozen=True)
class ProductValue(Value):
    factors: tuple[Value, ...]

    @property
    def rank(self) -> int:
        return self.factors[0].rank

    def generators(self):
        return [m for f in self.factors for m in f.generators()]

    def expand(self, spec):
        result = self.factors[0].expand(spec)
        for f in self.factors[1:]:
            result = series.ts_mul(result, f.expand(spec))
        return result


@dataclass(frozen=True)
class OdotValue(Value):
    parts: tuple[Value, ...]

    @property
    def rank(self) -> int:
        return sum(p.rank for p in self.parts)

    def generators(self):
        out, offset = [], 0
        for p in self.parts:
            pad = self.rank - offset - p.rank
            out += [(0,) * offset + tuple(m) + (0,) * pad for m in p.generators()]
            offset += p.rank
        return out

    def expand(self, spec):
        result = None
        offset = 0
        for p in self.parts:
            weights = spec.functional.weights[offset : offset + p.rank]
            part = p.expand(TruncationSpec(GradingFunctional(weights), spec.bound))
            result = part if result is None else series.ts_odot(result, part)
            offset += p.rank
        return result


@dataclass(frozen=True)
class PushValue(Value):
    psi: MonoidMap
    operand: Value

    @property
    def rank(self) -> int:
        return self.psi.target_rank

    def generators(self):
        return self.psi.columns

    def expand(self, spec):
        inner = self.operand.expand(domain_spec(self.psi, spec))
        return push_numeric(self.psi, inner, spec)


def _catalog_form(name: str, args: tuple[int, ...]) -> ProductForm:
    if name == "mcdonald":
        return catalog.mcdonald_e0(*args)
    if name == "pn":
        return catalog.euler_chow_pn(*args)
    if name == "ruled_e1":
        return catalog.ruled_series(catalog.RuledSurfaceSpec(*args), 1)
    if name == "ruled":
        g, e, p = args
        return catalog.ruled_series(catalog.RuledSurfaceSpec(g, e), p)
    if name == "scroll3":
        return catalog.scroll3_printed_formula(*args)
    raise ValueError(name)


@dataclass(frozen=True)
class CommandResult:
    """Outcome of one ``expand`` or ``compare`` statement."""

    statement: Statement
    spec: TruncationSpec
    series: TruncatedSeries | None = None
    report: ComparisonReport | None = None

    @property
    def kind(self) -> str:
        return "series" if self.series is not None else "compare"


def _annotate(exc: EulerChowError, span: Span | None) -> EulerChowError:
    if getattr(exc, "span", None) is None:
        exc.span = span
    return exc


class Evaluator:
    def __init__(self):
        self.series: dict[str, Value] = {}
        self.maps: dict[str, MonoidMap] = {}
        self.functionals: dict[str, GradingFunctional] = {}

    def value(self, e: Expr) -> Value:
        try:
            return self._value(e)
        except ScriptError:
            raise
        except EulerChowError as exc:
            raise _annotate(exc, e.span)
        except ValueError as exc:
            raise ScriptError(e.span, str(exc)) from exc

    def _value(self, e: Expr) -> Value:
        if isinstance(e, Ref):
            return self.series[e.name]
        if isinstance(e, One):
            return FormValue(series.one(0))
        if isinstance(e, Gf):
            return FormValue(series.pf_power(series.geometric(e.monomial), e.exponent))
        if isinstance(e, Call):
            return FormValue(_catalog_form(e.name, e.args))
        if isinstance(e, Odot):
            parts = tuple(self.value(x) for x in e.operands)
            if all(isinstance(p, FormValue) for p in parts):
                return FormValue(series.odot(*(p.form for p in parts)))
            return OdotValue(parts)
        if isinstance(e, Push):
            psi = self.maps[e.map_name]
            operand = self.value(e.operand)
            if operand.rank != psi.domain_rank:
                raise RankMismatch(
                    f"push of a rank {operand.rank} series along a map with domain rank {psi.domain_rank}"
                )
            return PushValue(psi, operand)
        if isinstance(e, Product):
            terms = [self.value(t) for t in e.terms]
            # 'one' is rank-free: it adopts the rank of its neighbours
            ranked = [t for t in terms if not _is_unit(t)]
            if not ranked:
                return terms[0]
            rank = ranked[0].rank
            for t in ranked:
                if t.rank != rank:
                    raise RankMismatch(f"cannot multiply series of rank {rank} and {t.rank}")
            if all(isinstance(t, FormValue) for t in ranked):
                form = ranked[0].form
                for t in ranked[1:]:
                    form = series.pf_mul(form, t.form)
                return FormValue(form)
            return ProductValue(tuple(ranked))
        raise TypeError(e)

    def _spec(self, values: list[Value], order: int, fname: str | None, span) -> TruncationSpec:
        rank = values[0].rank
        if fname is not None:
            functional = self.functionals[fname]
            if functional.rank != rank:
                raise RankMismatch(f"functional {fname} has rank {functional.rank}, series has rank {rank}")
            return TruncationSpec(functional, order)
        gens = [m for v in values for m in v.generators()]
        if not gens:
            return TruncationSpec(GradingFunctional.ones(rank), order)
        return TruncationSpec(grading.auto_functional(gens), order)

    def run(self, script: Script) -> Iterator[CommandResult]:
        for s in script.statements:
            try:
                result = self._statement(s)
            except ScriptError:
                raise
            except EulerChowError as exc:
                raise _annotate(exc, s.span)
            except ValueError as exc:
                raise ScriptError(s.span, str(exc)) from exc
            if result is not None:
                yield result

    def _statement(self, s: Statement) -> CommandResult | None:
        if isinstance(s, SeriesDef):
            self.series[s.name] = self.value(s.expr)
        elif isinstance(s, MapDef):
            self.maps[s.name] = MonoidMap(s.matrix)
        elif isinstance(s, FunctionalDef):
            self.functionals[s.name] = GradingFunctional(s.weights)
        elif isinstance(s, Expand):
            v = _fix_unit(self.value(s.expr), None)
            spec = self._spec([v], s.order, s.functional, s.span)
            return CommandResult(s, spec, series=v.expand(spec))
        elif isinstance(s, Compare):
            left, right = self.value(s.left), self.value(s.right)
            left, right = _fix_unit(left, right), _fix_unit(right, left)
            if left.rank != right.rank:
                raise RankMismatch(f"cannot compare series of rank {left.rank} and {right.rank}")
            spec = self._spec([left, right], s.order, s.functional, s.span)
            f, g = left.expand(spec), right.expand(spec)
            return CommandResult(s, spec, report=series.ts_eq(f, g))
        return None


def _is_unit(v: Value) -> bool:
    return isinstance(v, FormValue) and v.form.rank == 0


def _fix_unit(v: Value, other: Value | None) -> Value:
    if _is_unit(v):
        if other is not None and not _is_unit(other):
            return FormValue(series.one(other.rank))
        return FormValue(series.one(1))
    return v


def evaluate(script: Script) -> list[CommandResult]:
    return list(Evaluator().run(script))
