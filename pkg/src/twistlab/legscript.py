"""A small language for leg-indexed operator equations.

Grammar (one statement per ``check``; ``#`` starts a comment)::

    script := ('check' expr '==' expr ';')*
    expr   := atom ('*' atom)*
    atom   := NAME '_' legs ['(' arg ')'] | '~' atom | '(' expr ')'
    legs   := (DIGIT | '[' DIGIT+ ']')+
    arg    := 'y' | 'y' '*' 'T' ('+' | '-') DIGITS '@' DIGIT

A bracketed leg group such as ``F_1[23]`` places a tensor factor on the
composite module ``V2 (x) V3``, i.e. applies the coproduct to that factor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence, Union

from .errors import TwistlabError
from .polymat import LegOp, LegSpace, embed_on_legs
from .quasihopf import (
    alpha_matrix,
    beta_matrix,
    boundary_matrix,
    coassociator_matrix,
    rh_matrix,
    ry_matrix,
    substitute_arg,
    twist_matrix,
)
from .rep import JordanianRep, Spin, build_jordanian, tensor_rep
from .report import CheckReport, CheckResult, compare


class ScriptSyntaxError(TwistlabError):
    def __init__(self, message: str, line: int, col: int, expected: Sequence[str] = ()):
        self.line, self.col, self.expected = line, col, tuple(sorted(set(expected)))
        exp = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"line {line}, column {col}: {message}{exp}")


class EvaluationError(TwistlabError):
    pass


# -- AST -----------------------------------------------------------------------

@dataclass(frozen=True)
class Name:
    id: str
    legs: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Inv:
    expr: "Expr"


@dataclass(frozen=True)
class Product:
    factors: tuple["Expr", ...]


@dataclass(frozen=True)
class ShiftedArg:
    expr: "Expr"
    target_leg: int
    power: int


@dataclass(frozen=True)
class Check:
    lhs: "Expr"
    rhs: "Expr"
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Script:
    checks: tuple[Check, ...]


Expr = Union[Name, Inv, Product, ShiftedArg]
ScriptAst = Script


# -- lexer ---------------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<eq>==) | (?P<name>[A-Za-z][A-Za-z]*) | (?P<digits>[0-9]+)
  | (?P<punct>[_\[\]()*~;+\-@])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    tokens, line, line_start, pos = [], 1, 0, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        col = pos - line_start + 1
        if not m:
            raise ScriptSyntaxError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind == "eq":
            tokens.append(Token("==", "==", line, col))
        elif kind == "name":
            tokens.append(Token("check" if m.group() == "check" else "NAME", m.group(), line, col))
        elif kind == "digits":
            tokens.append(Token("DIGITS", m.group(), line, col))
        elif kind == "punct":
            tokens.append(Token(m.group(), m.group(), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# -- parser ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, expected: Sequence[str]):
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ScriptSyntaxError(f"unexpected {found}", t.line, t.col, expected)

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            self.fail([text or kind])
        self.i += 1
        return t

    def script(self) -> Script:
        checks = []
        while self.tok.kind != "EOF":
            line = self.expect("check").line
            lhs = self.expr()
            self.expect("==")
            rhs = self.expr()
            self.expect(";")
            checks.append(Check(lhs, rhs, line))
        return Script(tuple(checks))

    def expr(self) -> Expr:
        factors = [self.atom()]
        while self.tok.kind == "*":
            self.i += 1
            factors.append(self.atom())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "~":
            self.i += 1
            return Inv(self.atom())
        if t.kind == "(":
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "NAME":
            self.i += 1
            self.expect("_")
            node = Name(t.text, self.legs())
            if self.tok.kind == "(":
                self.i += 1
                node = self.arg(node)
                self.expect(")")
            return node
        self.fail(["NAME", "~", "("])

    def legs(self) -> tuple[tuple[int, ...], ...]:
        groups: list[tuple[int, ...]] = []
        while True:
            t = self.tok
            if t.kind == "DIGITS":
                groups.extend((int(c),) for c in t.text)
                self.i += 1
            elif t.kind == "[":
                self.i += 1
                d = self.expect("DIGITS")
                self.expect("]")
                groups.append(tuple(int(c) for c in d.text))
            else:
                break
        if not groups:
            self.fail(["DIGITS", "["])
        flat = [l for g in groups for l in g]
        if 0 in flat or len(set(flat)) != len(flat):
            t = self.toks[self.i - 1]
            raise ScriptSyntaxError("leg indices must be distinct and start at 1", t.line, t.col)
        return tuple(groups)

    def arg(self, node: Name) -> Expr:
        y = self.tok
        if y.kind != "NAME" or y.text != "y":
            self.fail(["y"])
        self.i += 1
        if self.tok.kind != "*":
            return node
        self.i += 1
        self.expect("NAME", "T")
        sign_tok = self.tok
        if sign_tok.kind not in ("+", "-"):
            self.fail(["+", "-"])
        self.i += 1
        power_tok = self.expect("DIGITS")
        power = int(power_tok.text) * (1 if sign_tok.kind == "+" else -1)
        if power not in (2, -2, 4, -4):
            raise ScriptSyntaxError("shift power must be one of +2, -2, +4, -4",
                                    power_tok.line, power_tok.col)
        self.expect("@")
        target = self.expect("DIGITS")
        if len(target.text) != 1 or target.text == "0":
            raise ScriptSyntaxError("shift target must be a single leg digit", target.line, target.col)
        leg = int(target.text)
        if leg in {l for g in node.legs for l in g}:
            raise ScriptSyntaxError("shift target overlaps the operand's legs", target.line, target.col)
        return ShiftedArg(node, leg, power)


def parse(src: str) -> Script:
    return _Parser(src).script()


# -- pretty printer ------------------------------------------------------------------------

def _legs_text(legs) -> str:
    return "".join(str(g[0]) if len(g) == 1 else "[" + "".join(map(str, g)) + "]" for g in legs)


def pretty(node) -> str:
    if isinstance(node, Script):
        return "\n".join(pretty(c) for c in node.checks) + ("\n" if node.checks else "")
    if isinstance(node, Check):
        return f"check {pretty(node.lhs)} == {pretty(node.rhs)};"
    if isinstance(node, Name):
        return f"{node.id}_{_legs_text(node.legs)}"
    if isinstance(node, ShiftedArg):
        sign = "+" if node.power > 0 else "-"
        return f"{pretty(node.expr)}(y*T{sign}{abs(node.power)}@{node.target_leg})"
    if isinstance(node, Inv):
        inner = pretty(node.expr)
        return f"~({inner})" if isinstance(node.expr, Product) else f"~{inner}"
    if isinstance(node, Product):
        return " * ".join(f"({pretty(f)})" if isinstance(f, Product) else pretty(f) for f in node.factors)
    raise TypeError(node)


def max_leg(node) -> int:
    if isinstance(node, Script):
        return max((max_leg(c) for c in node.checks), default=0)
    if isinstance(node, Check):
        return max(max_leg(node.lhs), max_leg(node.rhs))
    if isinstance(node, Name):
        return max(l for g in node.legs for l in g)
    if isinstance(node, ShiftedArg):
        return max(max_leg(node.expr), node.target_leg)
    if isinstance(node, Inv):
        return max_leg(node.expr)
    return max(max_leg(f) for f in node.factors)


# -- evaluation ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Binding:
    arity: int
    build: Callable[..., object]


def default_env() -> dict[str, Binding]:
    """``R``/``Ry`` is the twisted R(y), ``Rh`` the untwisted one."""
    return {
        "R": Binding(2, ry_matrix),
        "Ry": Binding(2, ry_matrix),
        "Rh": Binding(2, rh_matrix),
        "F": Binding(2, twist_matrix),
        "Phi": Binding(3, coassociator_matrix),
        "M": Binding(1, boundary_matrix),
        "alpha": Binding(1, alpha_matrix),
        "beta": Binding(1, beta_matrix),
    }


class _Evaluator:
    def __init__(self, env: dict[str, Binding], reps: Sequence[JordanianRep]):
        self.env = env
        self.reps = list(reps)
        self.space = LegSpace(tuple(r.dim for r in reps))

    def group_rep(self, group: tuple[int, ...]) -> JordanianRep:
        r = self.reps[group[0] - 1]
        for l in group[1:]:
            r = tensor_rep(r, self.reps[l - 1])
        return r

    def eval(self, node) -> LegOp:
        if isinstance(node, Name):
            b = self.env.get(node.id)
            if b is None:
                raise EvaluationError(f"unbound name {node.id!r}")
            if len(node.legs) != b.arity:
                raise EvaluationError(f"{node.id} takes {b.arity} leg groups, got {len(node.legs)}")
            for g in node.legs:
                for l in g:
                    if l > len(self.reps):
                        raise EvaluationError(f"leg {l} exceeds the {len(self.reps)} declared spins")
            mat = b.build(*(self.group_rep(g) for g in node.legs))
            return embed_on_legs(self.space, mat, [l for g in node.legs for l in g])
        if isinstance(node, ShiftedArg):
            inner = self.eval(node.expr)
            w = self.reps[node.target_leg - 1].T_power(node.power)
            return substitute_arg(inner, node.target_leg, w)
        if isinstance(node, Inv):
            return self.eval(node.expr).inverse()
        if isinstance(node, Product):
            ops = [self.eval(f) for f in node.factors]
            acc = ops[0]
            for op in ops[1:]:
                acc = acc @ op
            return acc
        raise TypeError(node)


def evaluate_sides(check: Check, spins: Sequence, env: dict[str, Binding] | None = None) -> tuple[LegOp, LegOp]:
    ev = _Evaluator(env or default_env(), [build_jordanian(Spin.parse(s)) for s in spins])
    return ev.eval(check.lhs), ev.eval(check.rhs)


def evaluate(ast: Script, env: dict[str, Binding] | None, spins: Sequence, name: str = "script") -> CheckReport:
    spins = [Spin.parse(s) for s in spins]
    need = max_leg(ast)
    if need != len(spins):
        raise EvaluationError(f"script uses {need} legs but {len(spins)} spins were given")
    out = CheckReport()
    for k, check in enumerate(ast.checks):
        lhs, rhs = evaluate_sides(check, spins, env)
        out.add(compare(f"script:{name}:{k}", pretty(check), spins, lhs, rhs))
    return out


# -- shipped scripts -------------------------------------------------------------------------

def shipped_dir() -> Path:
    return Path(str(resources.files("twistlab") / "scripts"))


def shipped_scripts(directory: Path | str | None = None) -> list[Path]:
    d = Path(directory) if directory is not None else shipped_dir()
    return sorted(d.glob("*.eq"))


def load(path: Path | str) -> Script:
    return parse(Path(path).read_text(encoding="utf-8"))


def run_script(path: Path | str, spins: Sequence) -> CheckReport:
    path = Path(path)
    return evaluate(load(path), None, spins, path.stem)


def direct_results(stem: str, spins: Sequence) -> list[CheckResult] | None:
    """Results of the module API checks that each shipped script restates."""
    from . import gnf, quasihopf

    table = {
        "gnf": (gnf.check_gnf, ["gnf"]),
        "quasi_ybe": (gnf.check_gnf, ["quasi_yang_baxter"]),
        "r_shift": (gnf.check_gnf, ["r_shift_by_coassociator"]),
        "quasitriangular": (gnf.check_gnf, ["quasitriangular_id_delta", "quasitriangular_delta_id"]),
        "cocycle": (quasihopf.check_twist_identities, ["twist_cocycle"]),
        "coboundary": (lambda a, b: quasihopf.check_twist_identities(a, b, b), ["twist_coboundary"]),
        "coassociator": (lambda a, b, c: quasihopf.check_axioms(a, b, c, pentagon=False),
                         ["coassociator_coboundary_form"]),
        "symmetric_gnf": (gnf.check_symmetric_gnf, ["symmetric_gnf"]),
    }
    if stem not in table:
        return None
    fn, ids = table[stem]
    rep = fn(*spins)
    return [r for i in ids for r in rep.by_id(i)]


def cross_check(path: Path | str, spins: Sequence) -> CheckReport:
    """Evaluate a script and compare status and witness with the direct API check."""
    path = Path(path)
    script_rep = run_script(path, spins)
    direct = direct_results(path.stem, spins)
    out = CheckReport(list(script_rep.results))
    labels = tuple(str(Spin.parse(s)) for s in spins)
    if direct is None:
        return out
    ok = len(direct) == len(script_rep.results) and all(
        a.status == b.status and a.witness == b.witness for a, b in zip(script_rep.results, direct))
    witness = None if ok else {
        "script": [(r.status, r.witness) for r in script_rep.results],
        "direct": [(r.status, r.witness) for r in direct],
    }
    out.add(CheckResult(f"script_agreement:{path.stem}", "script result = direct API result", labels,
                        "pass" if ok else "fail", witness))
    return out
