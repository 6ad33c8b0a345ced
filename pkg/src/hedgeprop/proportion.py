"""Judgments: arrow proportions, analogical proportions and their fast paths."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .algebra import Algebra
from .errors import PreconditionViolated
from .justify import Bounds, JustificationSet, PairContext, pair_context
from .terms import (
    X_KIND,
    App,
    Justification,
    LanguagePair,
    Node,
    Side,
    Substitution,
    Var,
    apply_substitution,
    canonicalize,
    show,
    variables,
    vars_of,
)

MAX_RIVALS = 100


class Case(str, Enum):
    ALL_TRIVIAL = "AllTrivial"
    MAXIMAL = "Maximal"
    FAILS = "Fails"


@dataclass(frozen=True)
class Rival:
    element: object
    representative: App
    justifications: JustificationSet


@dataclass(frozen=True)
class Verdict:
    holds: bool
    case: Case
    witnesses: JustificationSet
    rivals: tuple
    bounds: Bounds
    query: tuple = ()
    rivals_truncated: bool = False

    @property
    def truncated(self) -> bool:
        return self.witnesses.truncated

    def to_dict(self) -> dict:
        return {
            "query": " :. ".join(f"{x} -> {y}" for x, y in (self.query[:2], self.query[2:])) if self.query else "",
            "holds": self.holds,
            "case": self.case.value,
            "witnesses": self.witnesses.texts(nontrivial_only=True),
            "rivals": [
                {
                    "element": r.element,
                    "representative": r.representative.text,
                    "justifications": r.justifications.texts(nontrivial_only=True),
                }
                for r in self.rivals
            ],
            "rivals_truncated": self.rivals_truncated,
            "bounds": self.bounds.as_dict(),
            "bounds_truncated": self.truncated,
        }


@dataclass(frozen=True)
class ProportionVerdict:
    holds: bool
    premises: tuple  # (label, Verdict) in derivation order
    bounds: Bounds

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "premises": [{"premise": label, **v.to_dict()} for label, v in self.premises],
            "bounds": self.bounds.as_dict(),
        }


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("HEDGEPROP_THREADS", "1")))
    except ValueError:
        return 1


def _codes(ctx: PairContext, a, b, c, d=None):
    out = [ctx.A.code_of(a), ctx.A.code_of(b), ctx.B.code_of(c)]
    if d is not None:
        out.append(ctx.B.code_of(d))
    return out


def _judge(ctx: PairContext, va: int, vb: int, vc: int, vd: int):
    """Case, witness keys and rival key sets, all keyed by denotations only."""
    memo = ctx.__dict__.setdefault("_judgments", {})
    key = (va, vb, vc, vd)
    if key in memo:
        return memo[key]
    single = itertools.chain(ctx.side_jus(Side.SOURCE, va, vb), ctx.side_jus(Side.TARGET, vc, vd))
    if all(ctx.is_trivial(k) for k in single):
        result = (Case.ALL_TRIVIAL, frozenset(), ())
    else:
        scan = ctx.scan(va, vb, vc)
        jd = ctx.nontrivial(scan.get(vd, ()))
        rivals = tuple((e, ctx.nontrivial(scan.get(e, ()))) for e in ctx.B.classes if e != vd)
        if jd and all(not jd <= jr or jr <= jd for _, jr in rivals):
            result = (Case.MAXIMAL, jd, rivals)
        else:
            result = (Case.FAILS, jd, rivals)
    memo[key] = result
    return result


def holds_arrow(a: App, b: App, c: App, d: App, lp: LanguagePair, algebras: Sequence[Algebra], bounds: Bounds) -> Verdict:
    """Decide ``a -> b :. c -> d`` by d-maximality of its justification set."""
    ctx = pair_context(lp, algebras, bounds)
    va, vb, vc, vd = _codes(ctx, a, b, c, d)
    case, jd, rivals = _judge(ctx, va, vb, vc, vd)
    label = ctx.B.algebra.universe.label
    rival_objs = tuple(
        Rival(label(e), ctx.B.space.representative(e), ctx.make_set(keys)) for e, keys in rivals[:MAX_RIVALS]
    )
    return Verdict(
        holds=case is not Case.FAILS,
        case=case,
        witnesses=ctx.make_set(jd),
        rivals=rival_objs,
        bounds=bounds,
        query=(show(a), show(b), show(c), show(d)),
        rivals_truncated=len(rivals) > MAX_RIVALS,
    )


def holds_proportion(a, b, c, d, lp: LanguagePair, algebras: Sequence[Algebra], bounds: Bounds) -> ProportionVerdict:
    """Decide ``a : b :: c : d`` from its four arrow premises.

    The two premises that start on the target side are judged in the swapped
    pair (target, source) with the pairing reversed.
    """
    source, target = algebras
    back = lp.swapped()
    jobs = [
        ("a->b :. c->d", (a, b, c, d, lp, (source, target), bounds)),
        ("b->a :. d->c", (b, a, d, c, lp, (source, target), bounds)),
        ("c->d :. a->b", (c, d, a, b, back, (target, source), bounds)),
        ("d->c :. b->a", (d, c, b, a, back, (target, source), bounds)),
    ]
    n = worker_count()
    if n > 1:
        with ThreadPoolExecutor(max_workers=min(n, len(jobs))) as pool:
            verdicts = list(pool.map(lambda job: holds_arrow(*job[1]), jobs))
    else:
        verdicts = [holds_arrow(*args) for _, args in jobs]
    premises = tuple((label, v) for (label, _), v in zip(jobs, verdicts))
    return ProportionVerdict(all(v.holds for v in verdicts), premises, bounds)


def is_characteristic(J, a, b, c, d, lp: LanguagePair, algebras: Sequence[Algebra], bounds: Bounds) -> bool:
    """Whether ``J`` justifies the arrow proportion and pins ``d`` among all target classes."""
    J = list(J)
    if not J:
        return False
    ctx = pair_context(lp, algebras, bounds)
    va, vb, vc, vd = _codes(ctx, a, b, c, d)
    common = None
    for j in J:
        targets = ctx.pair_targets(j, va, vb, vc)
        if vd not in targets:
            return False
        common = targets if common is None else common & targets
    return all(e == vd or e not in common for e in ctx.B.classes)


class UniquenessPart(str, Enum):
    PART1 = "Part1"
    PART2 = "Part2"
    PART3 = "Part3"
    NOT_APPLICABLE = "NotApplicable"


def _implication(view, j, x, y, both_ways: bool) -> bool:
    for _, ls, rs in view.substitutions(j, view.constants):
        left, right = ls == x, rs == y
        if left and not right:
            return False
        if both_ways and right and not left:
            return False
    return True


def uniqueness_lemma(j: Justification, a, b, c, d, lp: LanguagePair, algebras: Sequence[Algebra], bounds: Bounds) -> UniquenessPart:
    """Strongest part of the uniqueness lemma whose hypothesis ``j`` satisfies.

    Part1 certifies ``a -> b :. c -> d``; Part2 also ``b -> a :. d -> c``;
    Part3 the whole proportion ``a : b :: c : d``.
    """
    ctx = pair_context(lp, algebras, bounds)
    va, vb, vc, vd = _codes(ctx, a, b, c, d)
    j = canonicalize(j)
    if ctx.trivial_direct(j):
        raise PreconditionViolated(f"{j} is trivial")
    if not ctx.space.contains(j) or vd not in ctx.pair_targets(j, va, vb, vc):
        raise PreconditionViolated(f"{j} does not justify the arrow proportion within the bounds")
    if not _implication(ctx.B, j, vc, vd, both_ways=False):
        return UniquenessPart.NOT_APPLICABLE
    _, lz, lh = vars_of(j.lhs)
    _, rz, rh = vars_of(j.rhs)
    if not (lz <= rz and lh <= rh and _implication(ctx.B, j, vc, vd, both_ways=True)):
        return UniquenessPart.PART1
    if not _implication(ctx.A, j, va, vb, both_ways=True):
        return UniquenessPart.PART2
    return UniquenessPart.PART3


# ---------------------------------------------------------------------------
# functional proportions


@dataclass(frozen=True)
class CertifiedArrow:
    a: App
    b: App
    c: App
    d: App

    def __str__(self):
        return f"{self.a} -> {self.b} :. {self.c} -> {self.d}"


@dataclass(frozen=True)
class FunctionalResult:
    certificate: Justification
    target_element: object
    proportions: tuple  # CertifiedArrow, one per distinct source value
    verdicts: tuple  # holds_arrow verdict of each certified proportion
    candidates: tuple  # target substitutions examined by the precondition check

    def to_dict(self, lp: LanguagePair) -> dict:
        return {
            "certificate": self.certificate.text,
            "target_element": self.target_element,
            "proportions": [str(p) for p in self.proportions],
            "confirmed": [v.holds for v in self.verdicts],
            "candidates": [s.display(lp) for s in self.candidates],
        }


def _transformation_var(t: Node) -> Var:
    _, zs, _ = vars_of(t)
    if len(zs) != 1:
        raise PreconditionViolated(f"{show(t)} must contain exactly one Z-variable")
    return next(iter(zs))


def _instances(view, t: Node, z: Var, z_code: int, xdom: tuple):
    """Yield (raw bindings of the other variables, value) for every ground substitution with z fixed."""
    others = [v for v in variables(t) if v != z]
    domains = [view.domain(v, xdom) for v in others]
    cap = view.bounds.max_substitutions_per_match
    for combo in itertools.islice(itertools.product(*domains), cap):
        env = {v: c[1] for v, c in zip(others, combo)}
        env[z] = z_code
        yield {v: c[0] for v, c in zip(others, combo)}, view.eval(t, env)


def _substitution(view, side: Side, raw: dict, z: Var, z_term: App) -> Substitution:
    binds = {v: view.raw_to_term(v, r) for v, r in raw.items()}
    binds[z] = z_term
    return Substitution.of(side, binds)


def functional_proportion(t: Node, a: App, c: App, lp: LanguagePair, algebras: Sequence[Algebra], bounds: Bounds) -> FunctionalResult:
    """Certify ``a -> t(a) :. c -> t(c)`` when ``t`` is single-valued at ``c`` on the target side.

    Raises :class:`PreconditionViolated` carrying two target substitutions that
    bind ``z`` to ``c`` yet give different values.
    """
    z = _transformation_var(t)
    ctx = pair_context(lp, algebras, bounds)
    A, B = ctx.A, ctx.B
    va, vc = A.code_of(a), B.code_of(c)

    seen: dict[int, dict] = {}
    candidates = []
    for raw, v in _instances(B, t, z, vc, B.constants):
        if v is None:
            continue
        candidates.append(_substitution(B, Side.TARGET, raw, z, c))
        if v not in seen:
            seen[v] = raw
        if len(seen) > 1:
            (v1, r1), (v2, r2) = list(seen.items())[:2]
            pair = (_substitution(B, Side.TARGET, r1, z, c), _substitution(B, Side.TARGET, r2, z, c))
            raise PreconditionViolated(
                f"{show(t)} is not single-valued at {show(c)}: "
                f"{pair[0].display(lp)} gives {B.algebra.universe.label(v1)}, "
                f"{pair[1].display(lp)} gives {B.algebra.universe.label(v2)}",
                counterexample=pair,
            )
    if not seen:
        raise PreconditionViolated(f"no ground target substitution instantiates {show(t)} with {z} -> {show(c)}")
    vd, d_raw = next(iter(seen.items()))
    d_term = apply_substitution(t, _substitution(B, Side.TARGET, d_raw, z, c), lp)

    xs = [v for v in variables(t) if v.kind == X_KIND]
    linked_xis = {
        tuple(raw[x] for x in xs)
        for raw, v in _instances(B, t, z, vc, ctx.linked)
        if v is not None
    }
    by_b: dict[int, dict] = {}
    for raw, v in _instances(A, t, z, va, ctx.linked):
        if v is not None and tuple(raw[x] for x in xs) in linked_xis:
            by_b.setdefault(v, raw)
    if not by_b:
        raise PreconditionViolated(f"no ground source substitution instantiates {show(t)} with {z} -> {show(a)}")

    certificate = canonicalize(Justification(z, t, free_hedge_vars=True))
    proportions, verdicts = [], []
    for vb in sorted(by_b):
        b_term = apply_substitution(t, _substitution(A, Side.SOURCE, by_b[vb], z, a), lp)
        proportions.append(CertifiedArrow(a, b_term, c, d_term))
        verdicts.append(holds_arrow(a, b_term, c, d_term, lp, algebras, bounds))
    return FunctionalResult(
        certificate,
        B.algebra.universe.label(vd),
        tuple(proportions),
        tuple(verdicts),
        tuple(candidates),
    )


# ---------------------------------------------------------------------------
# equation solving


@dataclass(frozen=True)
class Solution:
    element: object
    representative: App
    verdict: Verdict


def solve_d(a: App, b: App, c: App, lp: LanguagePair, algebras: Sequence[Algebra], bounds: Bounds) -> list[Solution]:
    """Target classes d for which ``a -> b :. c -> d`` holds, most witnessed first."""
    ctx = pair_context(lp, algebras, bounds)
    label = ctx.B.algebra.universe.label
    found = []
    for e in ctx.B.classes:
        rep = ctx.B.space.representative(e)
        v = holds_arrow(a, b, c, rep, lp, algebras, bounds)
        if v.holds:
            found.append((-len(v.witnesses.nontrivial), e, Solution(label(e), rep, v)))
    found.sort(key=lambda item: (item[0], item[1]))
    return [s for _, _, s in found]
