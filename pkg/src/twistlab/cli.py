"""Command-line entry point: ``twistlab verify | emit-rmatrix | emit-generators | contract``."""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import contraction, gnf, legscript, quasihopf
from .errors import ConfigError, TwistlabError
from .polymat import RingMatrix, matrix_to_json, matrix_to_latex
from .rep import Spin, build_jordanian
from .report import CheckReport, compare

SUITES = ("algebra", "twist", "axioms", "gnf", "exchange", "symmetric", "rll", "contraction", "scripts")
FORMATS = ("json", "latex", "text")

# number of tensor legs in the largest space each suite builds
_SUITE_LEGS = {"algebra": 2, "twist": 3, "axioms": 4, "gnf": 3, "exchange": 2,
               "symmetric": 3, "rll": 3, "contraction": 2}


@dataclass
class RunConfig:
    suites: tuple[str, ...] = SUITES
    spins: tuple[Spin, ...] = (Spin(1), Spin(2))
    max_dim: int = 81
    output: Path | None = None
    format: str = "json"
    scripts_dir: Path | None = None

    def validate(self) -> None:
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ConfigError(f"unknown suite(s): {', '.join(sorted(unknown))}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if not self.spins:
            raise ConfigError("no spins given")
        need = self.required_dim()
        if need > self.max_dim:
            raise ConfigError(f"largest tensor space has dimension {need} > --max-dim {self.max_dim}")

    def script_paths(self) -> list[Path]:
        paths = legscript.shipped_scripts(self.scripts_dir)
        if self.scripts_dir is not None and not paths:
            raise ConfigError(f"no .eq scripts in {self.scripts_dir}")
        return paths

    def required_dim(self) -> int:
        legs = [_SUITE_LEGS[s] for s in self.suites if s in _SUITE_LEGS]
        if "scripts" in self.suites:
            legs += [legscript.max_leg(legscript.load(p)) for p in self.script_paths()]
        biggest = max(s.dim for s in self.spins)
        return biggest ** max(legs, default=1)


def _tuples(spins, n):
    return list(itertools.product([str(s) for s in spins], repeat=n))


def _algebra(j) -> CheckReport:
    rep = build_jordanian(Spin.parse(j))
    out = CheckReport()
    for k, (name, res) in enumerate(rep.relation_residuals().items()):
        out.add(compare(f"algebra_relation_{k}", name, (j,), res, RingMatrix.zeros(res.dim)))
    return out


def _coproduct_pair(j1, j2) -> CheckReport:
    return quasihopf.check_coproduct_homomorphism(j1, j2).extend(
        quasihopf.check_coproduct_homomorphism(j1, j2, twisted=True))


def _scripts(path, spins) -> CheckReport:
    return legscript.cross_check(path, spins)


def _axioms(j1, j2, j3) -> CheckReport:
    return quasihopf.check_axioms(j1, j2, j3, antipode=False)


def _contraction_pair(j1, j2) -> CheckReport:
    return contraction.check_R_contraction(j1, j2).extend(contraction.check_F_contraction(j1, j2))


def _comrep_and_symmetric(j1, j2, j3) -> CheckReport:
    out = CheckReport()
    if j3 == j1:
        # pair-level comrep checks reported once per pair
        out.extend(gnf._comrep_report(j1, j2))
    return out.extend(gnf.check_symmetric_gnf(j1, j2, j3))


def _gnf_triple(j1, j2, j3) -> CheckReport:
    out = gnf.check_gnf(j1, j2, j3)
    if j3 == j1:
        out.extend(gnf.check_closed_forms(j1, j2))
    return out


_TASK_FUNCS = {
    "algebra": _algebra,
    "coproduct": _coproduct_pair,
    "twist": quasihopf.check_twist_identities,
    "axioms": _axioms,
    "antipode": quasihopf.check_antipode_axioms,
    "gnf": _gnf_triple,
    "exchange": gnf.check_exchange,
    "symmetric": _comrep_and_symmetric,
    "rll": gnf.check_rll,
    "contraction_identities": contraction.check_contraction_identities,
    "contraction": _contraction_pair,
    "scripts": _scripts,
}


def _run_task(task: tuple) -> dict:
    name, args = task
    return json.loads(_TASK_FUNCS[name](*args).to_json())


def build_tasks(cfg: RunConfig) -> list[tuple[str, tuple]]:
    sp = cfg.spins
    tasks: list[tuple[str, tuple]] = []
    for suite in cfg.suites:
        if suite == "algebra":
            tasks += [("algebra", t) for t in _tuples(sp, 1)]
            tasks += [("coproduct", t) for t in _tuples(sp, 2)]
        elif suite in ("twist", "axioms", "gnf", "symmetric", "rll"):
            tasks += [(suite, t) for t in _tuples(sp, 3)]
            if suite == "axioms":
                tasks += [("antipode", t) for t in _tuples(sp, 1)]
        elif suite == "exchange":
            tasks += [("exchange", t) for t in _tuples(sp, 2)]
        elif suite == "contraction":
            tasks += [("contraction_identities", t) for t in _tuples(sp, 1)]
            tasks += [("contraction", t) for t in _tuples(sp, 2)]
        elif suite == "scripts":
            for p in cfg.script_paths():
                n = legscript.max_leg(legscript.load(p))
                tasks += [("scripts", (str(p), t)) for t in _tuples(sp, n)]
    return tasks


def worker_count(n_tasks: int) -> int:
    cap = os.environ.get("TWISTLAB_THREADS")
    try:
        limit = int(cap) if cap else (os.cpu_count() or 1)
    except ValueError:
        raise ConfigError(f"TWISTLAB_THREADS must be an integer, got {cap!r}") from None
    return max(1, min(limit, n_tasks))


def run_verify(cfg: RunConfig) -> tuple[int, CheckReport]:
    cfg.validate()
    tasks = build_tasks(cfg)
    workers = worker_count(len(tasks))
    if workers == 1:
        parts = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_task, tasks))
    report = CheckReport()
    for part in parts:
        report.extend(CheckReport.from_json(json.dumps(part)))
    report = report.sorted()
    return exit_status(report), report


def exit_status(report: CheckReport) -> int:
    return 0 if report.ok else 1


def render(report: CheckReport, fmt: str) -> str:
    return {"json": report.to_json, "latex": report.to_latex, "text": report.to_text}[fmt]()


# -- emitters --------------------------------------------------------------------------------

def _mat(m: RingMatrix, fmt: str):
    return matrix_to_json(m) if fmt == "json" else matrix_to_latex(m)


def rmatrix_document(j1, j2, fmt: str = "json") -> dict:
    a, b = Spin.parse(j1), Spin.parse(j2)
    r = quasihopf.ry_matrix(build_jordanian(a), build_jordanian(b))
    d = b.dim
    doc = {"j1": str(a), "j2": str(b), "matrix": _mat(r, fmt)}
    blocks = {f"{i + 1},{k + 1}": r.block(i, k, d) for i in range(a.dim) for k in range(a.dim)}
    doc["blocks"] = {key: _mat(m, fmt) for key, m in blocks.items()}
    if a.two_j == 2:
        doc["named_blocks"] = {name: _mat(blocks[key], fmt)
                               for name, key in (("A", "1,2"), ("B", "1,3"), ("C", "2,3"))}
    return doc


def emit_rmatrix(j1, j2, fmt: str = "json") -> str:
    doc = rmatrix_document(j1, j2, fmt)
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    parts = [f"% R-matrix for spins ({doc['j1']}, {doc['j2']})", doc["matrix"]]
    for key, tex in doc.get("named_blocks", doc["blocks"]).items():
        parts.append(f"% block {key}\n{tex}")
    return "\n".join(parts) + "\n"


def emit_generators(j, fmt: str = "json") -> str:
    rep = build_jordanian(Spin.parse(j))
    names = ("T", "Tinv", "X", "Y", "H")
    if fmt == "json":
        doc = {"j": str(rep.j), **{n: matrix_to_json(rep.generator(n)) for n in names}}
        return json.dumps(doc, indent=2) + "\n"
    return "\n".join(f"% {n}\n{matrix_to_latex(rep.generator(n))}" for n in names) + "\n"


def contract_document(j1, j2, trace: bool = False) -> dict:
    lim = contraction.contract(j1, j2)
    a, b = Spin.parse(j1), Spin.parse(j2)
    ra, rb = build_jordanian(a), build_jordanian(b)
    doc = {
        "j1": str(a), "j2": str(b),
        "convention": "right_placed",
        "reparametrisation": "x^2 = y*(q - 1)",
        "R_limit": matrix_to_json(lim["R"]),
        "F_limit": matrix_to_json(lim["F"]),
        "R_limit_equals_Rh": lim["R"] == quasihopf.rh_matrix(ra, rb),
        "F_limit_equals_Fh": lim["F"] == quasihopf.twist_matrix(ra, rb),
    }
    if trace:
        ctx = contraction.ContractionContext.create(a, b)
        doc["R_order_trace"] = contraction.order_trace_csv(contraction.conjugated_Rq(ctx))
        doc["F_order_trace"] = contraction.order_trace_csv(contraction.conjugated_Fx(ctx))
    return doc


# -- argument handling -------------------------------------------------------------------------

def _spin_list(text: str) -> tuple[Spin, ...]:
    try:
        return tuple(dict.fromkeys(Spin.parse(t) for t in text.split(",") if t.strip()))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _suite_list(text: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in text.split(",") if t.strip())


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twistlab", description="Exact verification of Jordanian quasi-Hopf identities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suites", type=_suite_list, default=SUITES,
                   help=f"comma-separated subset of {','.join(SUITES)} (default: all)")
    v.add_argument("--spins", type=_spin_list, default=(Spin(1), Spin(2)), help="comma-separated spins (default 1/2,1)")
    v.add_argument("--max-dim", type=int, default=81, help="cap on tensor-space dimension (default 81)")
    v.add_argument("--output", type=Path, help="write the report here instead of stdout")
    v.add_argument("--format", choices=FORMATS, default="json")
    v.add_argument("--scripts-dir", type=Path, help="directory of .eq scripts (default: shipped scripts)")

    r = sub.add_parser("emit-rmatrix", help="print R(y) for a pair of spins")
    r.add_argument("--j1", required=True)
    r.add_argument("--j2", required=True)
    r.add_argument("--format", choices=("json", "latex"), default="json")
    r.add_argument("--output", type=Path)

    g = sub.add_parser("emit-generators", help="print the Jordanian generators for one spin")
    g.add_argument("--j", required=True)
    g.add_argument("--format", choices=("json", "latex"), default="json")
    g.add_argument("--output", type=Path)

    c = sub.add_parser("contract", help="q -> 1 limits of the conjugated R_q and F(x)")
    c.add_argument("--j1", required=True)
    c.add_argument("--j2", required=True)
    c.add_argument("--trace", action="store_true", help="include per-entry pole/zero orders (CSV)")
    c.add_argument("--output", type=Path)
    return p


def _write(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        output.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            cfg = RunConfig(args.suites, args.spins, args.max_dim, args.output, args.format, args.scripts_dir)
            status, report = run_verify(cfg)
            _write(render(report, cfg.format), cfg.output)
            return status
        if args.command == "emit-rmatrix":
            _write(emit_rmatrix(args.j1, args.j2, args.format), args.output)
        elif args.command == "emit-generators":
            _write(emit_generators(args.j, args.format), args.output)
        elif args.command == "contract":
            _write(json.dumps(contract_document(args.j1, args.j2, args.trace), indent=2), args.output)
        return 0
    except ConfigError as exc:
        print(f"twistlab: configuration error: {exc}", file=sys.stderr)
        return 2
    except (TwistlabError, ValueError) as exc:
        print(f"twistlab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
