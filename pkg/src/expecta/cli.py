"""Command-line front end.

Exit status is 0 whenever a report was produced (SAT and UNSAT alike), 1
for input errors and 2 when an internal cross-check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .atoms import realize_gamble
from .coherence import is_coherent, natural_extension
from .decide import DEFAULT_MAX_PROPS, SEMANTICS, sat, sat_funcineq, sat_gamble, sat_reals
from .documents import load_assessment, load_model, model_doc, space_doc, violations_doc
from .errors import ExpectaError, InputError, InvariantBreach
from .expectation import belief_bounds, expect_bounds_credal, expect_prob, possibility_bounds, three_routes
from .fourier_motzkin import fm_feasible
from .linsolve import Feasible, dump_system, solve
from .logic.parser import parse, parse_corpus, parse_gamble
from .logic.semantics import holds
from .logic.transforms import DEFAULT_MAX_CLAUSES, to_likelihood, transform_t1, transform_t2, translate_likelihood
from .measures import CredalSet, MassFunction, PossibilityMeasure, ProbabilityMeasure, validate_model
from .syntax import LANG_E, LANG_F, LANG_G, LANG_QU, Ineq, Not, fmt_rat, leaves, show


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc


def _formulas(args, lang: str) -> list:
    if args.file:
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from exc
        return [(line, f) for line, f in zip(_corpus_lines(text), parse_corpus(text, lang))]
    if args.formula is None:
        raise InputError("give a formula or --file")
    return [(args.formula, parse(args.formula, lang))]


def _corpus_lines(text: str) -> list:
    return [ln.split("#", 1)[0].strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()]


class _SystemHooks:
    """Collects LP dumps and, with ``--oracle``, cross-checks each system."""

    def __init__(self, dump_path: Optional[str], oracle: bool):
        self.dump_path = dump_path
        self.oracle = oracle
        self.chunks = []

    def __call__(self, system):
        if self.dump_path:
            self.chunks.append(dump_system(system))
        if self.oracle:
            simplex = isinstance(solve(system, certify=False), Feasible)
            if simplex != fm_feasible(system):
                raise InvariantBreach("simplex and Fourier-Motzkin disagree on feasibility")

    def flush(self):
        if self.dump_path:
            Path(self.dump_path).write_text("\n".join(self.chunks), encoding="utf-8")

    @property
    def active(self) -> bool:
        return bool(self.dump_path or self.oracle)


# ------------------------------------------------------------ subcommands

def _bounds(model, X, oracle: bool) -> dict:
    if isinstance(model, ProbabilityMeasure):
        v = expect_prob(model, X)
        return {"lower": v, "upper": v}
    if isinstance(model, CredalSet):
        b = expect_bounds_credal(model, X)
    elif isinstance(model, MassFunction):
        if oracle:
            three_routes(model, X)
            three_routes(model, -X)
        b = belief_bounds(model, X)
    elif isinstance(model, PossibilityMeasure):
        b = possibility_bounds(model, X)
    else:
        raise InputError("unsupported model")
    return {"lower": b.lower, "upper": b.upper}


def cmd_eval(args) -> dict:
    model = load_model(_read_json(args.model))
    if (args.gamble is None) == (args.formula is None):
        raise InputError("eval needs exactly one of --gamble and --formula")
    if args.gamble is not None:
        X = realize_gamble(parse_gamble(args.gamble), model.space)
        return {k: fmt_rat(v) for k, v in _bounds(model, X, args.oracle).items()}
    f = parse(args.formula, args.language)
    return {"holds": holds(f, model)}


def _sat_one(f, args, hooks) -> dict:
    res = sat(f, args.semantics, max_props=args.max_props, max_clauses=args.max_clauses,
              allow_large=args.allow_large, on_system=hooks if hooks.active else None)
    out = {"result": res.status}
    if res.sat:
        out["witness"] = model_doc(res.witness)
    return out


def _valid_one(f, args, hooks) -> dict:
    res = sat(Not(f), args.semantics, max_props=args.max_props, max_clauses=args.max_clauses,
              allow_large=args.allow_large, on_system=hooks if hooks.active else None)
    if not res.sat:
        return {"result": "VALID"}
    return {"result": "INVALID", "countermodel": model_doc(res.witness)}


def _gamble_one(f, args, hooks) -> dict:
    res = sat_gamble(f, max_props=args.max_props, max_clauses=args.max_clauses)
    out = {"result": res.status}
    if res.sat:
        out["witness"] = space_doc(res.witness)
    return out


def _func_one(f, args, hooks) -> dict:
    kw = {"max_clauses": args.max_clauses, "on_system": hooks if hooks.active else None}
    if args.reals:
        res = sat_reals(f, **kw)
        out = {"result": res.status}
        if res.sat:
            out["witness"] = {v: fmt_rat(x) for v, x in res.witness.items()}
        return out
    res = sat_funcineq(f, **kw)
    out = {"result": res.status}
    if res.sat:
        out["witness"] = {v: [fmt_rat(x) for x in xs] for v, xs in res.witness.assignment.items()}
    return out


def _translate_one(f, args, hooks) -> dict:
    if args.form == "t1":
        g = transform_t1(f)
    elif args.form == "t2":
        g = transform_t2(f)
    else:
        langs = {a.lang for a in leaves(f) if isinstance(a, Ineq)}
        g = translate_likelihood(f) if langs == {LANG_QU} else to_likelihood(f)
    return {"formula": show(g)}


def _batch(one, lang_of):
    def run(args) -> dict:
        hooks = _SystemHooks(getattr(args, "dump_lp", None), getattr(args, "oracle", False))
        lang = lang_of(args)
        items = _formulas(args, lang)
        try:
            results = [one(f, args, hooks) for _, f in items]
        finally:
            hooks.flush()
        if args.file:
            return {"results": [dict(formula=text, **r) for (text, _), r in zip(items, results)]}
        return results[0]
    return run


def cmd_coherent(args) -> dict:
    a = load_assessment(_read_json(args.assessment))
    verdict = is_coherent(a)
    if verdict.coherent:
        return {"result": "COHERENT"}
    return {"result": "INCOHERENT", "index": verdict.index,
            "multipliers": [fmt_rat(b) for b in verdict.multipliers]}


def cmd_extend(args) -> dict:
    a = load_assessment(_read_json(args.assessment))
    Y = realize_gamble(parse_gamble(args.gamble), a.space)
    return {"lower": fmt_rat(natural_extension(a, Y))}


def cmd_validate(args) -> dict:
    model = load_model(_read_json(args.model), check=False)
    violations = validate_model(model)
    return {"valid": not violations, "violations": violations_doc(model.space, violations)}


# ------------------------------------------------------------ argument parsing

def _decision_flags(p, semantics: bool = True):
    if semantics:
        p.add_argument("--semantics", choices=SEMANTICS, default="prob")
        p.add_argument("--allow-large", action="store_true",
                       help="permit possibility decisions above three propositions")
    p.add_argument("--max-props", type=int, default=DEFAULT_MAX_PROPS)
    p.add_argument("--max-clauses", type=int, default=DEFAULT_MAX_CLAUSES)
    p.add_argument("--dump-lp", metavar="PATH", help="write every LP built to PATH")
    p.add_argument("--oracle", action="store_true", help="cross-check every LP with Fourier-Motzkin")
    p.add_argument("--file", help="corpus file, one formula per line")
    p.add_argument("formula", nargs="?")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="expecta", description="Reasoning about expectation.")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="expectation bounds of a gamble or truth of a formula in a model")
    p.add_argument("--model", required=True)
    p.add_argument("--gamble")
    p.add_argument("--formula")
    p.add_argument("--language", default=LANG_E)
    p.add_argument("--oracle", action="store_true", help="check belief expectations three ways")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("sat", help="satisfiability of an E or QU formula")
    _decision_flags(p)
    p.add_argument("--language", default=LANG_E)
    p.set_defaults(run=_batch(_sat_one, lambda a: a.language))

    p = sub.add_parser("valid", help="validity of an E or QU formula")
    _decision_flags(p)
    p.add_argument("--language", default=LANG_E)
    p.set_defaults(run=_batch(_valid_one, lambda a: a.language))

    p = sub.add_parser("gamble-sat", help="satisfiability of a gamble-inequality formula")
    _decision_flags(p, semantics=False)
    p.set_defaults(run=_batch(_gamble_one, lambda a: LANG_G))

    p = sub.add_parser("func-sat", help="satisfiability of a function-inequality formula")
    _decision_flags(p, semantics=False)
    p.add_argument("--reals", action="store_true", help="read variables as single reals")
    p.set_defaults(run=_batch(_func_one, lambda a: LANG_F))

    p = sub.add_parser("coherent", help="coherence of a lower-expectation assessment")
    p.add_argument("--assessment", required=True)
    p.set_defaults(run=cmd_coherent)

    p = sub.add_parser("extend", help="natural extension of an assessment to a gamble")
    p.add_argument("--assessment", required=True)
    p.add_argument("--gamble", required=True)
    p.set_defaults(run=cmd_extend)

    p = sub.add_parser("translate", help="rewrite a formula")
    p.add_argument("--form", choices=("t1", "t2", "qu"), required=True)
    p.add_argument("--language", default=LANG_E)
    p.add_argument("--file")
    p.add_argument("formula", nargs="?")
    p.set_defaults(run=_batch(_translate_one, lambda a: a.language))

    p = sub.add_parser("validate-model", help="check a model document against its axioms")
    p.add_argument("--model", required=True)
    p.set_defaults(run=cmd_validate)
    return ap


def _as_text(obj, indent: str = "") -> str:
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.append(_as_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{indent}- {_scalar(v)}" if not isinstance(v, (dict, list))
                         else f"{indent}-\n" + _as_text(v, indent + "  ") for v in obj)
    return indent + _scalar(obj)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v == [] or v == {}:
        return "none"
    return str(v)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        report = args.run(args)
    except InvariantBreach as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ExpectaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(_as_text(report))
    return 0


__all__ = ["main", "build_parser"]
