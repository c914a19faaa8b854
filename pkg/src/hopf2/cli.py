"""Command line: ``hopf2 check | build | table``.

Exit codes: 0 pass, 1 axiom or prerequisite failure, 2 input error.
Targets are JSON files or ``builtin:NAME``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .algebroid import (
    RightBialgebroid,
    check_bialgebroid_axioms,
    check_full_hopf_antipode,
    check_lambda_bijective,
    check_mu_bijective,
)
from .bicross import (
    BicrossData,
    BicrossedModule,
    Hopf2Algebra,
    build_bicrossproduct,
    build_hopf2,
    build_mirror,
    check_bicross_conditions,
    check_hopf2,
    check_peiffer,
)
from .catalog import (
    BUILTINS,
    CrossedModuleData,
    FiniteGroupData,
    InvalidStructure,
    builtin,
    two_group_from_crossed_module,
    two_group_function_algebroid,
)
from .exactlin import DimensionError, format_scalar
from .formats import InputError, digest, dumps, from_json, report_to_json, to_json
from .hopfcore import HopfData, check_hopf_axioms
from .report import CheckReport, ConstructionError
from .tensorspace import TENSOR, format_element

LEVELS = ("hopf", "bialgebroid", "hopf-algebroid", "full-hopf-algebroid", "hopf2")
MAPS = ("antipode", "full-antipode", "coproduct", "algebroid-coproduct")
TOOL = "hopf2"


class UsageError(Exception):
    """Bad input: exit code 2."""


def load_target(target: str):
    """Return ``(object, source name, input digest)``."""
    if target.startswith("builtin:"):
        name = target.split(":", 1)[1]
        if name not in BUILTINS:
            raise UsageError(f"unknown builtin {name!r}; available: {', '.join(sorted(BUILTINS))}")
        obj = builtin(name)
        return obj, target, digest(to_json(obj))
    path = Path(target)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise UsageError(f"{target}: no such file") from None
    except (OSError, UnicodeDecodeError) as err:
        raise UsageError(f"{target}: {err}") from None
    except json.JSONDecodeError as err:
        raise UsageError(f"{target}: malformed JSON: {err}") from None
    try:
        obj = from_json(data)
    except (InputError, DimensionError) as err:
        raise UsageError(f"{target}: {err}") from None
    return obj, target, digest(data)


# -- check ---------------------------------------------------------------------------

def _algebroid_suites(r: RightBialgebroid, level: str) -> CheckReport:
    report = check_bialgebroid_axioms(r)
    if level in ("hopf-algebroid", "hopf2"):
        report.extend(check_lambda_bijective(r)[1])
        report.extend(check_mu_bijective(r)[1])
    if level in ("full-hopf-algebroid", "hopf2"):
        report.extend(check_full_hopf_antipode(r))
    return report


def run_checks(obj, level: str) -> CheckReport:
    if level not in LEVELS:
        raise UsageError(f"unknown level {level!r}")
    if isinstance(obj, HopfData):
        if level != "hopf":
            raise UsageError(f"a Hopf algebra file supports only --level hopf, not {level}")
        if not obj.has_coalgebra:
            raise UsageError("structure has no coalgebra sections")
        return check_hopf_axioms(obj, "hopf")
    if isinstance(obj, (BicrossData, BicrossedModule)):
        module = obj if isinstance(obj, BicrossedModule) else None
        d = module.base if module else obj
        report = check_bicross_conditions(d)
        if module is not None:
            report.extend(check_peiffer(module))
        if level == "hopf":
            return report.extend(check_hopf_axioms(build_bicrossproduct(d, check=False)))
        if module is None:
            raise UsageError(f"bicross data without φ supports only --level hopf, not {level}")
        return report.extend(run_checks(build_hopf2(module, verify=False), level))
    if isinstance(obj, Hopf2Algebra):
        if level == "hopf":
            return check_hopf_axioms(obj.hopf, "hopf")
        report = _algebroid_suites(obj.algebroid, level)
        if level == "hopf2":
            report.extend(check_hopf2(obj))
        return report
    if isinstance(obj, RightBialgebroid):
        if level in ("hopf", "hopf2"):
            raise UsageError(f"a bialgebroid file does not support --level {level}")
        return _algebroid_suites(obj, level)
    raise UsageError(f"{type(obj).__name__} cannot be checked")


def _print_report(report: CheckReport, witness: bool, out) -> None:
    for e in report.entries:
        line = f"{e.status.upper():4}  {e.id}"
        if e.detail:
            line += f"  ({e.detail})"
        print(line, file=out)
        if witness and e.witness is not None:
            w = e.witness.to_json()
            print(f"      witness basis={w['basis']}", file=out)
            print(f"        lhs={json.dumps(w['lhs'], ensure_ascii=False)}", file=out)
            print(f"        rhs={json.dumps(w['rhs'], ensure_ascii=False)}", file=out)
            if e.witness.note:
                print(f"        note: {e.witness.note}", file=out)
    print(f"verdict: {'pass' if report.passed else 'fail'}", file=out)


def cmd_check(args, out) -> int:
    obj, source, dig = load_target(args.target)
    report = run_checks(obj, args.level)
    _print_report(report, args.witness, out)
    if args.json_report:
        doc = report_to_json(report, tool=TOOL, version=__version__, source=source, input_digest=dig,
                             level=args.level, witness=args.witness)
        Path(args.json_report).write_text(dumps(doc), encoding="utf-8")
    return 0 if report.passed else 1


# -- build ---------------------------------------------------------------------------

def _as_hopf(obj) -> HopfData:
    if isinstance(obj, HopfData):
        return obj
    raise UsageError(f"expected a Hopf algebra, got {type(obj).__name__}")


def cmd_build(args, out) -> int:
    obj, source, dig = load_target(args.input)
    try:
        if args.what == "mirror":
            h = _as_hopf(obj)
            report = check_hopf_axioms(h, "hopf") if h.has_coalgebra else None
            if report is not None and not report.passed:
                raise ConstructionError("input is not a Hopf algebra", report)
            result = build_hopf2(build_mirror(h))
        elif args.what == "bicrossproduct":
            if isinstance(obj, BicrossedModule):
                obj = obj.base
            if not isinstance(obj, BicrossData):
                raise UsageError(f"expected bicross data, got {type(obj).__name__}")
            result = build_bicrossproduct(obj)
        else:
            if isinstance(obj, CrossedModuleData):
                t = two_group_from_crossed_module(obj)
            else:
                raise UsageError(f"expected a crossed module, got {type(obj).__name__}")
            result = two_group_function_algebroid(t)
            report = _algebroid_suites(result.algebroid, "hopf2").extend(check_hopf2(result))
            if not report.passed:
                raise ConstructionError("function algebroid fails its checks", report)
    except ConstructionError as err:
        print(f"build failed: {err}", file=out)
        _print_report(err.report, True, out)
        return 1
    except InvalidStructure as err:
        print(f"build failed: {err}", file=out)
        return 1
    text = dumps(to_json(result))
    Path(args.out).write_text(text, encoding="utf-8")
    kind = json.loads(text)["kind"]
    print(f"wrote {args.out}: kind {kind}, dimension {len(json.loads(text)['basis'])}", file=out)
    return 0


# -- table ---------------------------------------------------------------------------

_TERM = re.compile(r"^(?P<coef>\d+(?:/\d+)?)?\s*[·*]?\s*(?P<label>.+)$")


def _split_terms(text: str) -> list[tuple[int, str]]:
    terms, depth, sign, buf = [], 0, 1, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-−" and buf.strip() == "" and not terms and ch != "+":
            sign = -sign
            continue
        if depth == 0 and ch in "+-−" and buf.strip():
            terms.append((sign, buf.strip()))
            sign, buf = (1 if ch == "+" else -1), ""
            continue
        if depth == 0 and ch in "+-−" and not buf.strip():
            sign = sign * (1 if ch == "+" else -1)
            continue
        buf += ch
    if buf.strip():
        terms.append((sign, buf.strip()))
    return terms


def parse_element(text: str, labels: Sequence[str]) -> dict[int, Fraction]:
    """Parse ``"2·(1⊗gx) + x⊗g"``-style input; ``@`` may stand for ``⊗``."""
    text = text.replace("@", TENSOR).strip()
    index = {lab: i for i, lab in enumerate(labels)}
    if text in index:
        return {index[text]: Fraction(1)}
    out: dict[int, Fraction] = {}
    terms = _split_terms(text)
    if not terms:
        raise UsageError(f"empty element {text!r}")
    for sign, term in terms:
        coef, label = Fraction(1), term
        if term not in index:
            m = _TERM.match(term)
            if m and m.group("coef"):
                coef, label = Fraction(m.group("coef")), m.group("label").strip()
            if label not in index and label.startswith("(") and label.endswith(")"):
                label = label[1:-1]
        if label not in index:
            raise UsageError(f"unknown basis label {label!r}")
        k = index[label]
        out[k] = out.get(k, 0) + sign * coef
    return {k: c for k, c in out.items() if c}


def _table_map(obj, which: str):
    """Return ``(domain labels, codomain labels, fn, relations)``."""
    if isinstance(obj, BicrossedModule):
        obj = build_hopf2(obj, verify=False)
    if isinstance(obj, BicrossData):
        obj = build_bicrossproduct(obj, check=False)
    if isinstance(obj, Hopf2Algebra):
        hopf, r = obj.hopf, obj.algebroid
    elif isinstance(obj, RightBialgebroid):
        hopf, r = obj.total, obj
    elif isinstance(obj, HopfData):
        hopf, r = obj, None
    else:
        raise UsageError(f"{type(obj).__name__} has no maps to tabulate")
    labels = hopf.labels
    if which == "antipode":
        if hopf.antipode is None:
            raise UsageError("structure provides no antipode")
        return labels, labels, hopf.antipode, hopf.relations
    if which == "coproduct":
        if hopf.comult is None:
            raise UsageError("structure provides no coproduct")
        n = hopf.dim
        tl = (hopf.space @ hopf.space).labels
        return labels, tl, lambda v: {a * n + b: c for (a, b), c in hopf.delta(v).items()}, hopf.relations
    if r is None:
        raise UsageError(f"structure provides no {which} (not a Hopf algebroid)")
    if which == "full-antipode":
        if r.full_antipode is None:
            raise UsageError("structure provides no full antipode")
        return labels, labels, r.full_antipode, hopf.relations
    q = r.tensor_B
    note = hopf.relations
    return labels, q.space.labels, lambda v: r.project(r.cop(v)), note


def cmd_table(args, out) -> int:
    obj, source, _ = load_target(args.target)
    dom, cod, fn, relations = _table_map(obj, args.map)
    rows = []
    for text in args.elements:
        v = parse_element(text, dom)
        rows.append((text, v, fn(v)))
    note = f"reduced to canonical basis using {relations}" if relations else ""
    if args.format == "json":
        doc = {"source": source, "map": args.map, "rows": [
            {"input": format_element(v, dom),
             "input_coords": [[k, format_scalar(c)] for k, c in sorted(v.items())],
             "output": format_element(w, cod),
             "coords": [[k, format_scalar(c)] for k, c in sorted(w.items())]} for _, v, w in rows]}
        if note:
            doc["note"] = note
        out.write(dumps(doc))
        return 0
    sym = {"antipode": "S", "full-antipode": "S", "coproduct": "Δ", "algebroid-coproduct": "▲"}[args.map]
    for _, v, w in rows:
        print(f"{sym}({format_element(v, dom)}) = {format_element(w, cod)}", file=out)
    if note:
        print(f"note: {note}", file=out)
    return 0


# -- entry point -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopf2", description="Exact verification of Hopf algebras, Hopf algebroids and Hopf 2-algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    c = sub.add_parser("check", help="run an axiom suite")
    c.add_argument("target", help="JSON file or builtin:NAME")
    c.add_argument("--level", choices=LEVELS, default="hopf")
    c.add_argument("--witness", action="store_true", help="include counterexample coordinates")
    c.add_argument("--json-report", metavar="PATH")
    b = sub.add_parser("build", help="construct a structure and write it as JSON")
    b.add_argument("what", choices=("mirror", "bicrossproduct", "two-group"))
    b.add_argument("input", help="JSON file or builtin:NAME")
    b.add_argument("--out", required=True, metavar="PATH")
    t = sub.add_parser("table", help="tabulate a structure map on elements")
    t.add_argument("target", help="JSON file or builtin:NAME")
    t.add_argument("map", choices=MAPS)
    t.add_argument("elements", nargs="+", help="label expressions such as 'x⊗g' or '2·(1⊗gx) + x@g'")
    t.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        handler = {"check": cmd_check, "build": cmd_build, "table": cmd_table}[args.command]
        return handler(args, out)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except InvalidStructure as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
