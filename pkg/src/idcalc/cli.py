"""Command-line front end.

Exit codes: 0 success, 1 domain error (parse/type/guard), 2 verification
failure (a relation Failed, an inequality verdict, an invariant breach).
All randomness is seeded and the seed in force is printed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .boxes import Box, BoxError, parse_box
from .evaluation import EvalError, eval_term, instantiate
from .polynomials import (CompositionGuardError, Orientation, PolyError,
                          format_polyfun, parse_polyfun, polyfun_to_json)
from .prederiv import (PreDerivError, apply as pd_apply, canonical_direction,
                       eval_smooth, format_prederiv, parse_prederiv,
                       smooth_kernel_test)
from .relations import check_all, reports_to_json
from .terms import TermError, classify, format_term, max_augment, parse_term, signature
from .words import Equal, NotEqual, WordError, normalize, parse_word, word_eq

DOMAIN_ERRORS = (BoxError, PolyError, TermError, WordError, EvalError,
                 PreDerivError, CompositionGuardError, ValueError)


def _read_env(path: Optional[str]) -> dict[str, Box]:
    """Opaque-generator preamble: one `name : <box>` per line."""
    env: dict[str, Box] = {}
    if not path:
        return env
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            name, _, box_s = line.partition(":")
            env[name.strip()] = parse_box(box_s)
    return env


def _read_inst(path: Optional[str]) -> dict:
    inst = {}
    if not path:
        return inst
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            name, _, fn_s = line.partition("=")
            inst[name.strip()] = parse_polyfun(fn_s)
    return inst


def _term_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    return arg


def _emit(payload: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="idcalc",
        description="Exact symbolic kernel: operator words, expression terms, "
                    "relation checking, pre-derivations, and the sphere demo.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_term_cmd(name: str, help_: str):
        c = sub.add_parser(name, help=help_)
        c.add_argument("term", help="term text, or - for stdin")
        c.add_argument("--env", help="opaque declarations file (name : box)")
        c.add_argument("--json", action="store_true")
        return c

    add_term_cmd("parse", "parse a term and print its normal text form")
    tc = add_term_cmd("typecheck", "infer the signature of a term")
    tc.add_argument("--permissive", action="store_true",
                    help="allow partial compositions")

    nw = sub.add_parser("normalize-word", help="canonical form of an operator word")
    nw.add_argument("word")
    nw.add_argument("--json", action="store_true")

    we = sub.add_parser("word-eq", help="decide equality of two operator words")
    we.add_argument("word1")
    we.add_argument("word2")
    we.add_argument("--trials", type=int, default=12)
    we.add_argument("--seed", type=int, default=0)
    we.add_argument("--json", action="store_true")

    add_term_cmd("normalize-term", "fully right-associated form of a term")

    ev = add_term_cmd("eval", "evaluate a term to an exact polynomial function")
    ev.add_argument("--inst", help="instantiation file (name = polyfun)")
    ev.add_argument("--permissive", action="store_true")

    cr = sub.add_parser("check-relations", help="run the relation catalogue")
    cr.add_argument("--trials", type=int, default=20)
    cr.add_argument("--seed", type=int, default=0)
    cr.add_argument("--rules", nargs="*", help="subset of rule ids")
    cr.add_argument("--orientation", choices=["upper", "lower"], default="upper")
    cr.add_argument("--report", help="write the JSON report here")
    cr.add_argument("--json", action="store_true")

    pd = sub.add_parser("prederiv", help="pre-derivation queries")
    pd.add_argument("prederiv", help="pre-derivation text, or - for stdin")
    pd.add_argument("--eval-smooth", action="store_true",
                    help="classical tangent vector")
    pd.add_argument("--apply", metavar="POLYFUN",
                    help="apply to a scalar polynomial function")
    pd.add_argument("--kernel", action="store_true",
                    help="smooth-kernel membership")
    pd.add_argument("--canonical", action="store_true",
                    help="canonical direction of a single-summand pre-derivation")
    pd.add_argument("--json", action="store_true")

    cs = sub.add_parser("comb-sphere", help="grid sweep of the combing field")
    cs.add_argument("--n", type=int, default=2)
    cs.add_argument("--grid", type=int, default=200)
    cs.add_argument("--eps", type=float, default=0.1)
    cs.add_argument("--out", help="CSV output path (default stdout)")

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except DOMAIN_ERRORS as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        if getattr(args, "json", False):
            print(json.dumps(payload), file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "parse":
        t = parse_term(_term_text(args.term), _read_env(args.env))
        _emit({"term": format_term(t)}, args.json, format_term(t))
        return 0

    if args.command == "typecheck":
        t = parse_term(_term_text(args.term), _read_env(args.env))
        sig = signature(t, strict=not args.permissive)
        frag = classify(t)
        text = f"dom {sig.dom}  cod R^{sig.cod_dim}  fragment {frag}"
        _emit({"domain": str(sig.dom), "cod_dim": sig.cod_dim, "fragment": frag},
              args.json, text)
        return 0

    if args.command == "normalize-word":
        w = normalize(parse_word(args.word))
        _emit({"word": str(w)}, args.json, str(w))
        return 0

    if args.command == "word-eq":
        verdict = word_eq(parse_word(args.word1), parse_word(args.word2),
                          trials=args.trials, seed=args.seed)
        if isinstance(verdict, Equal):
            _emit({"verdict": "Equal"}, args.json, "Equal")
            return 0
        if isinstance(verdict, NotEqual):
            payload = {"verdict": "NotEqual",
                       "witness": format_polyfun(verdict.witness)}
            _emit(payload, args.json,
                  f"NotEqual (witness {format_polyfun(verdict.witness)})")
            return 2
        _emit({"verdict": "Unknown"}, args.json, "Unknown")
        return 2

    if args.command == "normalize-term":
        t = max_augment(parse_term(_term_text(args.term), _read_env(args.env)))
        _emit({"term": format_term(t)}, args.json, format_term(t))
        return 0

    if args.command == "eval":
        t = parse_term(_term_text(args.term), _read_env(args.env))
        inst = _read_inst(args.inst)
        if inst:
            t = instantiate(t, inst)
        f = eval_term(t, permissive=args.permissive)
        _emit(polyfun_to_json(f), args.json, format_polyfun(f))
        return 0

    if args.command == "check-relations":
        orientation = Orientation(args.orientation)
        print(f"seed={args.seed} trials={args.trials} orientation={orientation.value}")
        reports = check_all(args.trials, args.seed, orientation, args.rules)
        for r in reports:
            print(r.line())
        failed = [r for r in reports if r.verdict != "Verified"]
        report_path = args.report or ("relation_report.json" if failed else None)
        if report_path:
            with open(report_path, "w", encoding="utf-8") as fh:
                fh.write(reports_to_json(reports))
            print(f"report written to {report_path}")
        return 2 if failed else 0

    if args.command == "prederiv":
        dv = parse_prederiv(_term_text(args.prederiv))
        payload: dict = {"prederiv": format_prederiv(dv)}
        lines = []
        if args.eval_smooth or not (args.apply or args.kernel or args.canonical):
            vec = eval_smooth(dv)
            payload["eval_smooth"] = [str(c) for c in vec]
            lines.append("eval-smooth (" + ", ".join(str(c) for c in vec) + ")")
        if args.apply:
            germs = pd_apply(dv, parse_polyfun(args.apply))
            payload["apply"] = [format_polyfun(g) for g in germs]
            lines.extend("apply " + format_polyfun(g) for g in germs)
        if args.kernel:
            ok = smooth_kernel_test(dv)
            payload["kernel"] = ok
            lines.append(f"kernel {ok}")
        if args.canonical:
            if len(dv.summands) != 1:
                raise PreDerivError("canonical direction needs exactly one summand")
            core, u = dv.summands[0]
            vec = canonical_direction(core, u)
            payload["canonical"] = [str(c) for c in vec]
            lines.append("canonical (" + ", ".join(str(c) for c in vec) + ")")
        _emit(payload, args.json, "\n".join(lines))
        return 0

    if args.command == "comb-sphere":
        from .sphere import comb_grid
        data = comb_grid(args.n, args.grid, args.eps)
        rows = ["y1,y2,proj1,proj2,projnorm,certificate"]
        for pt, pr, pn, ce in zip(data["points"], data["projection"],
                                  data["projection_norm"], data["certificate"]):
            rows.append(f"{pt[0]:.6f},{pt[1]:.6f},{pr[0]:.6e},{pr[1]:.6e},"
                        f"{pn:.6e},{ce:.6e}")
        body = "\n".join(rows)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(body + "\n")
        else:
            print(body)
        print(f"vanishing-radius={data['vanishing_radius']:.4f} "
              f"min-certificate={data['min_certificate']:.3e} "
              f"grid={args.grid} eps={args.eps}", file=sys.stderr)
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
