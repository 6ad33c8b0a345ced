"""Command-line front end.

Exit status: 0 when the query ran and holds (or succeeded), 1 when it ran and
fails, 2 on usage, load or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .algebra import DEFAULT_NAT_MAX, Algebra, evaluate, load_algebra, load_pairing
from .errors import HedgePropError, PreconditionViolated
from .justify import Bounds, enumerate_hedges, jus_arrow, jus_arrow_pair
from .proportion import (
    Verdict,
    functional_proportion,
    holds_arrow,
    holds_proportion,
    solve_d,
)
from .terms import Side, build_language_pair, parse_hedge, parse_term, show

TEXT_WITNESS_LIMIT = 20


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--source", help="source algebra file (JSON)")
    common.add_argument("--target", help="target algebra file (JSON)")
    common.add_argument("--pair", help="pairing file (JSON)")
    for name in ("a", "b", "c", "d"):
        common.add_argument(f"--{name}")
    common.add_argument("--term", help="ground term to evaluate")
    common.add_argument("--hedge", help="abstract hedge")
    common.add_argument("--side", choices=["source", "target"], default=None)
    defaults = Bounds()
    common.add_argument("--hedge-depth", type=int, default=defaults.hedge_depth)
    common.add_argument("--term-depth", type=int, default=defaults.term_depth)
    common.add_argument("--max-hedges", type=int, default=defaults.max_hedges)
    common.add_argument("--max-substitutions", type=int, default=defaults.max_substitutions_per_match)
    common.add_argument("--max-universe", type=int, default=None, help=f"size of built-in nat segments (default {DEFAULT_NAT_MAX})")
    common.add_argument("--json", action="store_true", help="structured output")

    p = argparse.ArgumentParser(prog="hedgeprop", description="Judge bilingual analogical proportions.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("eval", parents=[common], help="evaluate a ground term")
    sub.add_parser("hedges", parents=[common], help="list the bounded abstract hedges")
    sub.add_parser("justify", parents=[common], help="justification set of a -> b (or of a -> b :. c -> d)")
    sub.add_parser("check-arrow", parents=[common], help="decide a -> b :. c -> d")
    sub.add_parser("check-proportion", parents=[common], help="decide a : b :: c : d")
    sub.add_parser("solve", parents=[common], help="all d with a -> b :. c -> d")
    sub.add_parser("functional", parents=[common], help="certify a -> t(a) :. c -> t(c)")
    return p


class _Session:
    """Loaded inputs of one invocation."""

    def __init__(self, args):
        self.args = args
        self.bounds = Bounds(args.hedge_depth, args.term_depth, args.max_hedges, args.max_substitutions)
        self.source = self._load(args.source)
        self.target = self._load(args.target)
        if args.pair:
            if self.source is None or self.target is None:
                raise UsageError("--pair needs both --source and --target")
            self.lp = load_pairing(_read(args.pair), self.source, self.target)
        elif self.source is not None and self.target is not None:
            raise UsageError("--pair is required with two algebras")
        else:
            alg = self.source or self.target
            if alg is None:
                raise UsageError("an algebra file is required")
            decls = [(s.name, s.rank) for s in alg.symbols]
            self.lp = build_language_pair(decls, decls, [(s.name, s.name) for s in alg.symbols])
            self.source = self.target = alg

    def _load(self, path) -> Algebra | None:
        if path is None:
            return None
        return load_algebra(_read(path), self.args.max_universe)

    @property
    def algebras(self):
        return (self.source, self.target)

    def term(self, flag: str, side: Side):
        text = getattr(self.args, flag)
        if text is None:
            raise UsageError(f"--{flag} is required")
        return parse_term(text, self.lp, side)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# reports


def _verdict_lines(v: Verdict, label: str = "") -> list[str]:
    head = f"{label}: " if label else ""
    lines = [f"{head}{'holds' if v.holds else 'fails'} ({v.case.value})"]
    ws = v.witnesses.texts(nontrivial_only=True)
    for w in ws[:TEXT_WITNESS_LIMIT]:
        lines.append(f"  witness {w}")
    if len(ws) > TEXT_WITNESS_LIMIT:
        lines.append(f"  ... {len(ws) - TEXT_WITNESS_LIMIT} more witnesses")
    lines.append(f"  {len(ws)} non-trivial witnesses, {len(v.rivals)} rivals compared")
    if v.truncated:
        lines.append("  note: bounds truncated the search")
    return lines


def _bounds_line(b: Bounds) -> str:
    return "bounds: " + ", ".join(f"{k}={v}" for k, v in b.as_dict().items())


def _cmd_eval(s: _Session):
    side = Side(s.args.side) if s.args.side else (Side.SOURCE if s.args.source else Side.TARGET)
    alg = s.source if side is Side.SOURCE else s.target
    t = s.term("term", side)
    value = evaluate(t, alg)
    return 0, {"term": show(t), "value": value}, [str(value)]


def _cmd_hedges(s: _Session):
    hs = enumerate_hedges(s.lp, s.bounds)
    texts = [show(h) for h in hs]
    return 0, {"hedges": texts, "count": len(texts), "truncated": hs.truncated}, texts + [f"{len(texts)} hedges"]


def _cmd_justify(s: _Session):
    a, b = s.term("a", Side.SOURCE), s.term("b", Side.SOURCE)
    if s.args.c is not None or s.args.d is not None:
        js = jus_arrow_pair(a, b, s.term("c", Side.TARGET), s.term("d", Side.TARGET), s.lp, s.algebras, s.bounds)
    else:
        js = jus_arrow(a, b, s.source, Side.SOURCE, s.lp, s.bounds)
    trivial = {j.text for j in js.trivial_members}
    data = {
        "justifications": [{"justification": j.text, "trivial": j.text in trivial} for j in js.sorted()],
        "truncated": js.truncated,
    }
    lines = [f"{j.text}{'  (trivial)' if j.text in trivial else ''}" for j in js.sorted()]
    lines.append(f"{len(js)} justifications, {len(trivial)} trivial")
    return 0, data, lines


def _quadruple(s: _Session):
    return (
        s.term("a", Side.SOURCE),
        s.term("b", Side.SOURCE),
        s.term("c", Side.TARGET),
        s.term("d", Side.TARGET),
    )


def _cmd_check_arrow(s: _Session):
    v = holds_arrow(*_quadruple(s), s.lp, s.algebras, s.bounds)
    return (0 if v.holds else 1), v.to_dict(), _verdict_lines(v)


def _cmd_check_proportion(s: _Session):
    pv = holds_proportion(*_quadruple(s), s.lp, s.algebras, s.bounds)
    lines = [f"{'holds' if pv.holds else 'fails'}"]
    for label, v in pv.premises:
        lines.extend(_verdict_lines(v, label))
    return (0 if pv.holds else 1), pv.to_dict(), lines


def _cmd_solve(s: _Session):
    a, b, c = s.term("a", Side.SOURCE), s.term("b", Side.SOURCE), s.term("c", Side.TARGET)
    sols = solve_d(a, b, c, s.lp, s.algebras, s.bounds)
    data = {
        "holders": [
            {
                "element": x.element,
                "representative": x.representative.text,
                "case": x.verdict.case.value,
                "witnesses": x.verdict.witnesses.texts(nontrivial_only=True),
            }
            for x in sols
        ]
    }
    lines = [
        f"{x.element}  {x.representative.text}  {x.verdict.case.value}  {len(x.verdict.witnesses.nontrivial)} witnesses"
        for x in sols
    ]
    lines.append(f"{len(sols)} holders")
    return (0 if sols else 1), data, lines


def _cmd_functional(s: _Session):
    if s.args.hedge is None:
        raise UsageError("--hedge is required")
    t = parse_hedge(s.args.hedge, s.lp)
    a, c = s.term("a", Side.SOURCE), s.term("c", Side.TARGET)
    try:
        res = functional_proportion(t, a, c, s.lp, s.algebras, s.bounds)
    except PreconditionViolated as exc:
        pair = exc.counterexample or ()
        data = {"certified": False, "reason": str(exc), "counterexample": [x.display(s.lp) for x in pair]}
        return 1, data, [f"precondition fails: {exc}"]
    ok = all(v.holds for v in res.verdicts)
    data = {"certified": True, **res.to_dict(s.lp)}
    lines = [f"certificate {res.certificate.text}"]
    for p, v in zip(res.proportions, res.verdicts):
        lines.append(f"  {p}  [{'confirmed' if v.holds else 'not confirmed'}]")
    return (0 if ok else 1), data, lines


COMMANDS = {
    "eval": _cmd_eval,
    "hedges": _cmd_hedges,
    "justify": _cmd_justify,
    "check-arrow": _cmd_check_arrow,
    "check-proportion": _cmd_check_proportion,
    "solve": _cmd_solve,
    "functional": _cmd_functional,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    start = time.perf_counter()
    try:
        session = _Session(args)
        code, data, lines = COMMANDS[args.command](session)
    except (UsageError, HedgePropError, ValueError) as exc:
        print(f"hedgeprop: error: {exc}", file=err)
        return 2
    elapsed = time.perf_counter() - start
    if args.json:
        report = {"command": args.command, "exit_code": code, **data}
        report.setdefault("bounds", session.bounds.as_dict())
        report["timing_seconds"] = round(elapsed, 6)
        json.dump(report, out, indent=2)
        out.write("\n")
    else:
        for line in lines:
            print(line, file=out)
        if args.command not in ("eval", "hedges"):
            print(_bounds_line(session.bounds), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
