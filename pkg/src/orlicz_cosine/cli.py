"""Command-line front end.

Every command writes a JSON report (``--out``, default
``<command>-report.json``) and optionally a CSV (``--csv``).  Exit status:
0 satisfied or computed, 2 violated, 3 inconclusive, 1 usage or
precondition error.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
import warnings
from pathlib import Path

from . import group
from ._solvers import SolverError
from .criteria import (SCHEMA, STRATEGIES, PreconditionError, check_direct_sum,
                       check_mixing, check_transitive)
from .example import (DEFAULT_EPS, DEFAULT_HORIZON, DEFAULT_K, DEFAULT_STRATEGY,
                      WITNESS_NS, reproduce_example)
from .expr import ExprEvalError, ParseError, compile_expr, parse_expr
from .ops import Weight, WeightError, WeightedTranslation
from .seq import FinSupSeq, luxemburg_norm, modular, orlicz_norm, orlicz_norm_dual_bound
from .witness import verify_witness
from .young import (UnboundedConjugateError, YoungFunction, YoungFunctionError,
                    closed_form_conjugate, conjugate, is_delta2, preset, validate)

EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, EXIT_INCONCLUSIVE = 0, 1, 2, 3
COMMANDS = ("norm", "conjugate", "check-transitive", "check-mixing",
            "check-direct-sum", "witness", "reproduce-example")
NORM_KINDS = ("orlicz", "luxemburg", "dual", "modular")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# argument parsing helpers

def parse_phi(source: str) -> YoungFunction:
    """A preset name or an expression in x, checked against the axioms."""
    try:
        return preset(source)
    except KeyError:
        pass
    node = parse_expr(source)
    fn = compile_expr(node)
    phi = YoungFunction(fn=lambda t: float(fn(t)), name=source)
    return validate(phi)


def parse_weight(source) -> Weight:
    """``paper-step``, a JSON piecewise table, or an expression in i."""
    if isinstance(source, dict):
        return _piecewise(source)
    text = str(source).strip()
    if text == "paper-step":
        return Weight.paper_step()
    if text.startswith("{"):
        return _piecewise(json.loads(text))
    fn = compile_expr(parse_expr(text))

    def evaluate(x):
        try:
            return fn(float(x[0]))
        except ExprEvalError as exc:
            raise WeightError(f"weight {text!r} at {list(x)}: {exc}") from None

    return Weight(evaluate, text)


def _piecewise(table: dict) -> Weight:
    try:
        below = float(table["below"])
        steps = [(float(t), float(v)) for t, v in table.get("steps", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(
            'piecewise weight needs {"below": c, "steps": [[threshold, value], ...]}'
        ) from exc
    return Weight.piecewise(below, steps, table.get("name"))


def parse_element(source) -> tuple:
    if isinstance(source, (list, tuple, int)):
        return group.element(source)
    text = str(source).strip()
    if text.startswith("["):
        return group.element(json.loads(text))
    return group.element([int(c) for c in text.split(",")])


_RANGE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")


def parse_set(source) -> frozenset:
    """``a..b`` (inclusive, in Z), a JSON list of ints or of int arrays."""
    if isinstance(source, str):
        m = _RANGE.match(source)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise UsageError(f"empty range {source!r}")
            return group.finite_set(range(lo, hi + 1))
        source = json.loads(source)
    return group.finite_set(source)


_SHORT_RECORD = re.compile(r"\{\s*(\[[^\]]*\])\s*,\s*([^{}]+?)\s*\}")


def parse_seq(source) -> FinSupSeq:
    """JSON ``[{"point": [..], "value": v}, ...]`` or shorthand ``[{[0],1},...]``."""
    if not isinstance(source, str):
        return FinSupSeq.from_records(source)
    text = source.strip()
    try:
        return FinSupSeq.from_records(json.loads(text))
    except json.JSONDecodeError:
        pass
    records = _SHORT_RECORD.findall(text)
    leftover = _SHORT_RECORD.sub("", text).strip("[], \t")
    if leftover:
        raise UsageError(f"cannot parse sequence {source!r}")
    return FinSupSeq({tuple(json.loads(p)): _number(v) for p, v in records})


def _number(text):
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        return complex(text.replace("i", "j"))


def load_config(path: str) -> dict:
    p = Path(path)
    raw = p.read_bytes()
    if p.suffix.lower() == ".json":
        return json.loads(raw.decode("utf-8"))
    try:
        import tomllib
    except ModuleNotFoundError:  # Python 3.10
        import tomli as tomllib
    return tomllib.loads(raw.decode("utf-8"))


# ---------------------------------------------------------------------------
# parser

def _common(p: argparse.ArgumentParser, setup=True):
    p.add_argument("--config", help="TOML or JSON file with option defaults")
    p.add_argument("--out", help="JSON report path (default <command>-report.json)")
    p.add_argument("--csv", help="also write rows as CSV")
    p.add_argument("--seed", type=int, help="seed for randomized steps (default 0)")
    if setup:
        p.add_argument("--phi", help="Young function: preset or expression in x")
        p.add_argument("--weight", help="paper-step, JSON piecewise table, or expression in i")
        p.add_argument("--g", help="translation element, e.g. 1 or [1,-2]")
        p.add_argument("--K", dest="K", help="finite set: a..b or a JSON list")
        p.add_argument("--horizon", type=int)
        p.add_argument("--eps", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orlicz-cosine",
        description="Orlicz sequence norms and transitivity checks for cosine "
                    "operators of weighted translations on Z^d.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="norm of a finitely supported sequence")
    _common(p, setup=False)
    p.add_argument("--phi")
    p.add_argument("--f", help='sequence, e.g. "[{[0],1},{[1],1}]"')
    p.add_argument("--kind", choices=NORM_KINDS)
    p.add_argument("--trials", type=int, help="random starts for --kind dual")

    p = sub.add_parser("conjugate", help="complementary function and doubling test")
    _common(p, setup=False)
    p.add_argument("--phi")
    p.add_argument("--y", help="comma-separated evaluation points (default 0..5)")

    for name in ("check-transitive", "check-mixing"):
        p = sub.add_parser(name, help=f"{name[6:]} evidence up to a horizon")
        _common(p)
        if name == "check-transitive":
            p.add_argument("--strategy", choices=STRATEGIES)

    p = sub.add_parser("check-direct-sum", help="transitivity of a finite direct sum")
    _common(p)
    p.add_argument("--strategy", choices=STRATEGIES)
    p.add_argument("--component", action="append", dest="components",
                   help='JSON {"weight": ..., "g": ...}; repeat once per summand')

    p = sub.add_parser("witness", help="build and measure the approximating vectors")
    _common(p)
    p.add_argument("--strategy", choices=STRATEGIES)
    p.add_argument("--f")
    p.add_argument("--h")
    p.add_argument("--ns", help="comma-separated powers (default: dyadic picks)")

    p = sub.add_parser("reproduce-example",
                       help="full entropy / step-weight pipeline with checks")
    _common(p)
    p.add_argument("--strategy", choices=STRATEGIES)
    return parser


DEFAULTS = {"phi": "paper-entropy", "weight": "paper-step", "g": "1",
            "K": f"{DEFAULT_K[0]}..{DEFAULT_K[-1]}", "horizon": DEFAULT_HORIZON,
            "eps": DEFAULT_EPS, "strategy": "greedy", "seed": 0, "kind": "orlicz",
            "trials": 4, "csv": None, "f": None, "h": None, "ns": None, "y": None,
            "components": None}


def resolve(args: argparse.Namespace) -> dict:
    """Defaults, then the config file, then explicit flags."""
    cfg = dict(DEFAULTS)
    if args.command == "reproduce-example":
        cfg["strategy"] = DEFAULT_STRATEGY
    if args.config:
        file_cfg = load_config(args.config)
        unknown = set(file_cfg) - set(DEFAULTS) - {"out"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(file_cfg)
    for key, value in vars(args).items():
        if value is not None and key not in ("command", "config"):
            cfg[key] = value
    cfg.setdefault("out", None)
    if cfg["out"] is None:
        cfg["out"] = f"{args.command}-report.json"
    if int(cfg["horizon"]) < 1:
        raise UsageError("horizon must be >= 1")
    if not float(cfg["eps"]) > 0:
        raise UsageError("eps must be positive")
    return cfg


# ---------------------------------------------------------------------------
# commands

def _setup(cfg):
    phi = parse_phi(cfg["phi"])
    op = WeightedTranslation(parse_element(cfg["g"]), parse_weight(cfg["weight"]))
    return phi, op, parse_set(cfg["K"])


def cmd_norm(cfg):
    if cfg["f"] is None:
        raise UsageError("norm needs --f")
    phi, f = parse_phi(cfg["phi"]), parse_seq(cfg["f"])
    kind = cfg["kind"]
    if kind == "orlicz":
        value = orlicz_norm(phi, f)
    elif kind == "luxemburg":
        value = luxemburg_norm(phi, f)
    elif kind == "modular":
        value = modular(phi, f)
    elif kind == "dual":
        value = orlicz_norm_dual_bound(phi, f, int(cfg["trials"]), int(cfg["seed"]))
    else:
        raise UsageError(f"unknown norm kind {kind!r}")
    print(format(value, ".8g"))
    report = {"schema": SCHEMA, "check": "norm", "phi": phi.name, "kind": kind,
              "f": f.to_records(), "value": value}
    return report, None, EXIT_OK


def cmd_conjugate(cfg):
    phi = parse_phi(cfg["phi"])
    psi = closed_form_conjugate(phi) or conjugate(phi)
    ys = [float(v) for v in cfg["y"].split(",")] if cfg["y"] else \
        [0.5 * k for k in range(11)]
    values = []
    for y in ys:
        try:
            values.append(psi(y))
        except UnboundedConjugateError:
            values.append(math.inf)
    delta2 = is_delta2(phi)
    for y, v in zip(ys, values):
        print(f"{y:g}\t{v:.10g}")
    report = {"schema": SCHEMA, "check": "conjugate", "phi": phi.name, "psi": psi.name,
              "points": [{"y": y, "psi": v if math.isfinite(v) else None}
                         for y, v in zip(ys, values)],
              "delta2": delta2.to_dict()}
    csv = "y,psi\n" + "".join(f"{y!r},{v!r}\n" for y, v in zip(ys, values))
    return report, csv, EXIT_OK


def _verdict_result(report):
    print(f"verdict: {report.verdict.value}")
    return report.to_dict(), report.to_csv(), report.verdict.exit_code


def cmd_check_transitive(cfg):
    phi, op, K = _setup(cfg)
    return _verdict_result(check_transitive(op, phi, K, int(cfg["horizon"]),
                                            float(cfg["eps"]), cfg["strategy"]))


def cmd_check_mixing(cfg):
    phi, op, K = _setup(cfg)
    return _verdict_result(check_mixing(op, phi, K, int(cfg["horizon"]), float(cfg["eps"])))


def cmd_check_direct_sum(cfg):
    phi, base, K = _setup(cfg)
    comps = cfg["components"]
    if not comps:
        raise UsageError("check-direct-sum needs at least one --component")
    ops = []
    for c in comps:
        c = json.loads(c) if isinstance(c, str) else c
        ops.append(WeightedTranslation(parse_element(c.get("g", list(base.g))),
                                       parse_weight(c.get("weight", base.w.name))))
    return _verdict_result(check_direct_sum(ops, phi, K, int(cfg["horizon"]),
                                            float(cfg["eps"]), cfg["strategy"]))


def cmd_witness(cfg):
    phi, op, K = _setup(cfg)
    f = parse_seq(cfg["f"]) if cfg["f"] is not None else FinSupSeq.indicator(K)
    h = parse_seq(cfg["h"]) if cfg["h"] is not None else f
    ns = [int(n) for n in str(cfg["ns"]).split(",")] if cfg["ns"] else None
    if isinstance(cfg["ns"], list):
        ns = [int(n) for n in cfg["ns"]]
    trace = verify_witness(op, phi, f, h, ns, cfg["strategy"], int(cfg["horizon"]),
                           float(cfg["eps"]))
    for r in trace.rows:
        print(f"n={r.n}\tdist_to_f={r.dist_to_f:.6e}\tdist_to_h={r.dist_to_h:.6e}"
              f"\tbound={r.bound_total:.6e}")
    return trace.to_dict(), trace.to_csv(), EXIT_OK


def cmd_reproduce_example(cfg):
    phi, op, K = _setup(cfg)
    report = reproduce_example(phi, op.w, op.g, K, int(cfg["horizon"]),
                               float(cfg["eps"]), cfg["strategy"], WITNESS_NS)
    for name in ("conjugate_pair", "feasibility", "geometric_bounds",
                 "witness_convergence"):
        print(f"{name}: {'ok' if report.checks[name]['ok'] else 'FAILED'}")
    print(f"transitive: {report.transitive.verdict.value}")
    print(f"mixing: {report.mixing.verdict.value}")
    print(f"verdict: {report.verdict.value}")
    return report.to_dict(), report.to_csv(), report.verdict.exit_code


HANDLERS = {"norm": cmd_norm, "conjugate": cmd_conjugate,
            "check-transitive": cmd_check_transitive, "check-mixing": cmd_check_mixing,
            "check-direct-sum": cmd_check_direct_sum, "witness": cmd_witness,
            "reproduce-example": cmd_reproduce_example}

USER_ERRORS = (UsageError, ParseError, PreconditionError, YoungFunctionError,
               WeightError, group.AperiodicityError, ValueError, KeyError,
               UnboundedConjugateError, SolverError, ExprEvalError)


def run_command(cfg: dict, command: str) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report, csv_text, status = HANDLERS[command](cfg)
    Path(cfg["out"]).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n",
                                encoding="utf-8")
    if cfg.get("csv") and csv_text is not None:
        Path(cfg["csv"]).write_text(csv_text, encoding="utf-8")
    return status


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve(args)
        return run_command(cfg, args.command)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
