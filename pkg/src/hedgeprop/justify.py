"""Hedge enumeration, matching against denotations and justification sets.

All quantifiers over ground terms are realized over the denotation classes of a
bounded ground space: a substitution is identified with the tuple of values it
assigns (constant index for X-variables, element code for Z-variables, element
code or the empty hedge for hedge variables).

Justifications are enumerated as ``lhs -> rhs`` where ``lhs`` is a canonical
hedge and ``rhs`` is an injective, kind-preserving renaming of a canonical hedge
into the variables of ``lhs`` plus fresh X-variables.  Inside the engine a
justification is addressed by the key ``(lhs position, rhs candidate position)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .algebra import Algebra, GroundSpace, enumerate_ground_space, side_language_matches
from .terms import (
    H_KIND,
    LAMBDA,
    X_KIND,
    Z_KIND,
    App,
    Justification,
    LanguagePair,
    Node,
    RankedSymbol,
    Side,
    Substitution,
    Var,
    canonical_hedge,
    rename,
    variables,
)


@dataclass(frozen=True)
class Bounds:
    hedge_depth: int = 2
    term_depth: int = 3
    max_hedges: int = 10000
    max_substitutions_per_match: int = 10000

    def __post_init__(self):
        if self.hedge_depth < 0 or self.term_depth < 1:
            raise ValueError("hedge_depth must be >= 0 and term_depth >= 1")
        if self.max_hedges < 1 or self.max_substitutions_per_match < 1:
            raise ValueError("caps must be >= 1")

    def as_dict(self) -> dict:
        return {
            "hedge_depth": self.hedge_depth,
            "term_depth": self.term_depth,
            "max_hedges": self.max_hedges,
            "max_substitutions_per_match": self.max_substitutions_per_match,
        }


def _sort_key(j: Justification):
    return j.sort_key()


@dataclass(frozen=True)
class JustificationSet:
    members: frozenset
    trivial_members: frozenset
    bounds: Bounds
    truncated: bool = False

    def __post_init__(self):
        if not self.trivial_members <= self.members:
            raise ValueError("trivial members must be members")

    def __contains__(self, j):
        return j in self.members

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.members)

    @property
    def nontrivial(self) -> frozenset:
        return self.members - self.trivial_members

    def sorted(self, nontrivial_only: bool = False) -> list[Justification]:
        pool = self.nontrivial if nontrivial_only else self.members
        return sorted(pool, key=_sort_key)

    def texts(self, nontrivial_only: bool = False) -> list[str]:
        return [j.text for j in self.sorted(nontrivial_only)]


# ---------------------------------------------------------------------------
# hedge enumeration


@dataclass(frozen=True)
class HedgeList:
    hedges: tuple
    truncated: bool

    def __iter__(self):
        return iter(self.hedges)

    def __len__(self):
        return len(self.hedges)

    def __getitem__(self, i):
        return self.hedges[i]

    def __contains__(self, h):
        return h in self.hedges


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def _shapes(ops: tuple[RankedSymbol, ...], n: int, d: int, memo: dict) -> list:
    """Hedge skeletons with exactly ``n`` nodes and depth <= ``d``; leaves are None."""
    key = (n, d)
    if key in memo:
        return memo[key]
    out: list = []
    if n == 1:
        out.append(None)
    elif d > 0:
        for op in ops:
            if op.rank > n - 1:
                continue
            for comp in _compositions(n - 1, op.rank):
                for kids in itertools.product(*[_shapes(ops, k, d - 1, memo) for k in comp]):
                    out.append((op.name, kids))
    memo[key] = out
    return out


def _leaf_count(shape) -> int:
    return 1 if shape is None else sum(_leaf_count(k) for k in shape[1])


def _labelings(k: int):
    """Leaf labelings in canonical first-occurrence numbering per kind."""
    def rec(i, counts):
        if i == k:
            yield ()
            return
        for kind in (X_KIND, Z_KIND, H_KIND):
            c = counts[kind]
            for idx in range(1, c + 2):
                nxt = counts if idx <= c else {**counts, kind: c + 1}
                for rest in rec(i + 1, nxt):
                    yield ((kind, idx),) + rest

    return rec(0, {X_KIND: 0, Z_KIND: 0, H_KIND: 0})


def _fill(shape, labels: Iterator) -> Node:
    if shape is None:
        kind, idx = next(labels)
        return Var(kind, idx)
    return App(shape[0], [_fill(k, labels) for k in shape[1]])


def _max_size(ops, d: int) -> int:
    r = max((o.rank for o in ops), default=0)
    total, width = 1, 1
    for _ in range(d):
        width *= r
        total += width
    return total


@lru_cache(maxsize=32)
def _enumerate(ops: tuple[RankedSymbol, ...], hedge_depth: int, cap: int) -> HedgeList:
    memo: dict = {}
    out: list[Node] = []
    for n in range(1, _max_size(ops, hedge_depth) + 1):
        bucket = []
        for shape in _shapes(ops, n, hedge_depth, memo):
            for lab in _labelings(_leaf_count(shape)):
                bucket.append(_fill(shape, iter(lab)))
        bucket.sort(key=lambda h: h.text if h.__class__ is App else h.name)
        if len(out) + len(bucket) > cap:
            out.extend(bucket[: cap - len(out)])
            return HedgeList(tuple(out), True)
        out.extend(bucket)
    return HedgeList(tuple(out), False)


def enumerate_hedges(lp: LanguagePair, b: Bounds) -> HedgeList:
    """All abstract hedges up to ``b.hedge_depth``, one per renaming class, by size then text."""
    return _enumerate(lp.operations(), b.hedge_depth, b.max_hedges)


# ---------------------------------------------------------------------------
# per-side evaluation


@dataclass(frozen=True)
class Rhs:
    """A right-hand side candidate: canonical hedge ``t0`` with its variables sent to slots."""

    t0: Node
    t0_vars: tuple
    slots: tuple
    fresh: int


class LhsTable:
    __slots__ = ("vars", "x_positions", "by_value", "truncated")

    def __init__(self, vars_, by_value, truncated):
        self.vars = vars_
        self.x_positions = tuple(i for i, v in enumerate(vars_) if v.kind == X_KIND)
        self.by_value = by_value
        self.truncated = truncated


class SideView:
    """One algebra seen through one side of a language pair at fixed bounds."""

    def __init__(self, merged: tuple, concrete: tuple, alg: Algebra, bounds: Bounds):
        self.algebra = alg
        self.bounds = bounds
        self.space: GroundSpace = enumerate_ground_space(alg, bounds.term_depth)
        self.classes = tuple(self.space.keys())
        self.ops = {m.name: alg.function(c.name) for m, c in zip(merged, concrete)}
        self.const_value = {i: alg.function(c.name)[0]() for i, c in enumerate(concrete) if c.rank == 0}
        self.constants = tuple(sorted(self.const_value))
        self._hedge_ops = {m.name for m in merged if m.rank >= 1}
        self._tables: dict = {}
        self._trivial: dict = {}
        self._graphs: dict = {}
        self._compiled: dict = {}
        self._rhs_fns: dict = {}
        self._fresh: dict = {}
        self.truncated = False

    # evaluation -----------------------------------------------------------

    def _node(self, node: App, env) -> int | None:
        fn, rank = self.ops[node.symbol]
        vals = []
        for a in node.args:
            if a.__class__ is Var:
                v = env[a]
                if v is LAMBDA:
                    continue
            else:
                v = self._node(a, env)
                if v is None:
                    return None
            vals.append(v)
        if len(vals) != rank:
            return None
        return fn(*vals)

    def eval(self, h: Node, env) -> int | None:
        """Value of hedge ``h`` under ``env`` (Var -> code or LAMBDA); None when ill-formed or out of range."""
        if h.__class__ is Var:
            v = env[h]
            return None if v is LAMBDA else v
        return self._node(h, env)

    def compiled(self, h: Node, order: tuple):
        """``h`` as a function of a value tuple laid out by ``order``; None when ill-formed."""
        key = (h, order)
        fn = self._compiled.get(key)
        if fn is None:
            pos = {v: i for i, v in enumerate(order)}
            if h.__class__ is Var:
                i = pos[h]
                fn = lambda vals: None if vals[i] is LAMBDA else vals[i]  # noqa: E731
            else:
                fn = self._compile(h, pos)
            self._compiled[key] = fn
        return fn

    def _compile(self, node: App, pos: dict):
        op, rank = self.ops[node.symbol]
        kids = []
        for a in node.args:
            kids.append((True, pos[a]) if a.__class__ is Var else (False, self._compile(a, pos)))

        def run(vals):
            args = []
            for is_var, k in kids:
                if is_var:
                    v = vals[k]
                    if v is LAMBDA:
                        continue
                else:
                    v = k(vals)
                    if v is None:
                        return None
                args.append(v)
            if len(args) != rank:
                return None
            return op(*args)

        return run

    def rhs_function(self, cand: Rhs):
        """Value of ``cand`` as a function of the lhs values followed by fresh X values."""
        fn = self._rhs_fns.get(cand)
        if fn is None:
            inner = self.compiled(cand.t0, cand.t0_vars)
            slots = cand.slots
            fn = lambda vals: inner(tuple(vals[s] for s in slots))  # noqa: E731
            self._rhs_fns[cand] = fn
        return fn

    def eval_rhs(self, cand: Rhs, vals: tuple) -> int | None:
        return self.rhs_function(cand)(vals)

    def domain(self, var: Var, xdom: tuple) -> list[tuple]:
        """``(raw, denotation)`` pairs a variable may take."""
        if var.kind == X_KIND:
            return [(i, self.const_value[i]) for i in xdom]
        if var.kind == Z_KIND:
            return [(e, e) for e in self.classes]
        return [(e, e) for e in self.classes] + [(LAMBDA, LAMBDA)]

    def fresh_values(self, n: int, xdom: tuple) -> list[tuple[tuple, tuple]]:
        hit = self._fresh.get((n, xdom))
        if hit is None:
            pairs = [(i, self.const_value[i]) for i in xdom]
            hit = [(tuple(p[0] for p in combo), tuple(p[1] for p in combo)) for combo in itertools.product(pairs, repeat=n)]
            self._fresh[(n, xdom)] = hit
        return hit

    # lhs matching -----------------------------------------------------------

    def table(self, s: Node, xdom: tuple) -> LhsTable:
        key = (s, xdom)
        tab = self._tables.get(key)
        if tab is not None:
            return tab
        vs = variables(s)
        domains = [self.domain(v, xdom) for v in vs]
        cap = self.bounds.max_substitutions_per_match
        total = 1
        for d in domains:
            total *= len(d)
        truncated = total > cap
        by_value: dict[int, list] = {}
        fn = self.compiled(s, tuple(vs))
        for combo in itertools.islice(itertools.product(*domains), cap):
            raw = tuple(c[0] for c in combo)
            den = tuple(c[1] for c in combo)
            val = fn(den)
            if val is not None:
                by_value.setdefault(val, []).append((raw, den))
        tab = LhsTable(tuple(vs), by_value, truncated)
        self.truncated |= truncated
        self._tables[key] = tab
        return tab

    def rows(self, s: Node, value: int, xdom: tuple) -> list:
        return self.table(s, xdom).by_value.get(value, ())

    def hits(self, cand: Rhs, rows, target: int, xdom: tuple) -> bool:
        fresh = self.fresh_values(cand.fresh, xdom)
        fn = self.rhs_function(cand)
        for _, den in rows:
            for _, fden in fresh:
                if fn(den + fden) == target:
                    return True
        return False

    # triviality ------------------------------------------------------------

    def is_trivial(self, key, s: Node, cand: Rhs) -> bool:
        """True iff the justification lies in every arrow's justification set over the class space."""
        hit = self._trivial.get(key)
        if hit is not None:
            return hit
        tab = self.table(s, self.constants)
        result = all(e in tab.by_value for e in self.classes)
        if result:
            fresh = self.fresh_values(cand.fresh, self.constants)
            need = set(self.classes)
            for e in self.classes:
                seen = set()
                for _, den in tab.by_value[e]:
                    for _, fden in fresh:
                        v = self.eval_rhs(cand, den + fden)
                        if v is not None:
                            seen.add(v)
                if not need <= seen:
                    result = False
                    break
        self._trivial[key] = result
        return result

    # arbitrary justifications -----------------------------------------------

    def graph(self, j: Justification, xdom: tuple) -> frozenset:
        """All ``(x-indices, lhs value, rhs value)`` realized by ground substitutions of ``j``."""
        key = (j, xdom)
        g = self._graphs.get(key)
        if g is not None:
            return g
        vs = j.variables()
        domains = [self.domain(v, xdom) for v in vs]
        xpos = [i for i, v in enumerate(vs) if v.kind == X_KIND]
        cap = self.bounds.max_substitutions_per_match
        total = 1
        for d in domains:
            total *= len(d)
        self.truncated |= total > cap
        out = set()
        for combo in itertools.islice(itertools.product(*domains), cap):
            env = {v: c[1] for v, c in zip(vs, combo)}
            ls = self.eval(j.lhs, env)
            if ls is None:
                continue
            rs = self.eval(j.rhs, env)
            if rs is None:
                continue
            out.add((tuple(combo[i][0] for i in xpos), ls, rs))
        g = frozenset(out)
        self._graphs[key] = g
        return g

    def substitutions(self, j: Justification, xdom: tuple) -> Iterator[tuple[dict, int | None, int | None]]:
        """Every bounded ground substitution of ``j`` as (raw bindings, lhs value, rhs value)."""
        vs = j.variables()
        domains = [self.domain(v, xdom) for v in vs]
        cap = self.bounds.max_substitutions_per_match
        for combo in itertools.islice(itertools.product(*domains), cap):
            env = {v: c[1] for v, c in zip(vs, combo)}
            raw = {v: c[0] for v, c in zip(vs, combo)}
            yield raw, self.eval(j.lhs, env), self.eval(j.rhs, env)

    def code_of(self, t: App) -> int:
        return self.algebra.eval_code(t)

    def raw_to_term(self, var: Var, raw):
        if var.kind == X_KIND or raw is LAMBDA:
            return raw
        return self.space.representative(raw)


@lru_cache(maxsize=64)
def _side_view(merged, concrete, alg, bounds) -> SideView:
    return SideView(merged, concrete, alg, bounds)


def side_view(lp: LanguagePair, side: Side, alg: Algebra, bounds: Bounds) -> SideView:
    side_language_matches(lp, side, alg)
    return _side_view(lp.merged, lp.symbols(side), alg, bounds)


# ---------------------------------------------------------------------------
# justification space


class JustificationSpace:
    """The bounded space of justifications over one merged language."""

    def __init__(self, ops: tuple, bounds: Bounds):
        self.hedges = _enumerate(ops, bounds.hedge_depth, bounds.max_hedges)
        self._canon = set(self.hedges.hedges)
        self._vars = [tuple(variables(h)) for h in self.hedges]
        self._rhs: dict[int, list[Rhs]] = {}
        self._just: dict = {}

    def rhs(self, si: int) -> list[Rhs]:
        found = self._rhs.get(si)
        if found is not None:
            return found
        lhs_vars = self._vars[si]
        by_kind = {k: [i for i, v in enumerate(lhs_vars) if v.kind == k] for k in (X_KIND, Z_KIND, H_KIND)}
        out = []
        for t0, t0_vars in zip(self.hedges, self._vars):
            for slots, fresh in _injections(t0_vars, by_kind, len(lhs_vars)):
                out.append(Rhs(t0, t0_vars, slots, fresh))
        self._rhs[si] = out
        return out

    def justification(self, key) -> Justification:
        j = self._just.get(key)
        if j is None:
            si, ci = key
            s = self.hedges[si]
            cand = self.rhs(si)[ci]
            jvars = variables(s)
            nx = sum(1 for v in jvars if v.kind == X_KIND)
            jvars += [Var(X_KIND, nx + k) for k in range(1, cand.fresh + 1)]
            rhs = rename(cand.t0, {v: jvars[slot] for v, slot in zip(cand.t0_vars, cand.slots)})
            j = Justification(s, rhs)
            self._just[key] = j
        return j

    def contains(self, j: Justification) -> bool:
        """Whether ``j`` (canonical) lies in this bounded space."""
        return j.is_scoped() and j.lhs in self._canon and canonical_hedge(j.rhs) in self._canon


def _injections(t0_vars, by_kind, n_lhs):
    """Injective kind-preserving maps of ``t0_vars`` into lhs slots or fresh X slots."""
    def rec(i, used, fresh):
        if i == len(t0_vars):
            yield (), fresh
            return
        kind = t0_vars[i].kind
        for slot in by_kind[kind]:
            if slot not in used:
                for rest, f in rec(i + 1, used | {slot}, fresh):
                    yield (slot,) + rest, f
        if kind == X_KIND:
            slot = n_lhs + fresh
            for rest, f in rec(i + 1, used, fresh + 1):
                yield (slot,) + rest, f

    return rec(0, frozenset(), 0)


@lru_cache(maxsize=32)
def _space(ops, bounds) -> JustificationSpace:
    return JustificationSpace(ops, bounds)


def justification_space(lp: LanguagePair, bounds: Bounds) -> JustificationSpace:
    return _space(lp.operations(), bounds)


# ---------------------------------------------------------------------------
# pair context


class PairContext:
    """Everything needed to judge arrows between a source and a target algebra."""

    def __init__(self, lp: LanguagePair, source: Algebra, target: Algebra, bounds: Bounds):
        self.lp = lp
        self.bounds = bounds
        self.A = side_view(lp, Side.SOURCE, source, bounds)
        self.B = side_view(lp, Side.TARGET, target, bounds)
        self.space = justification_space(lp, bounds)
        self.linked = lp.linked_constant_indices()
        self._scans: dict = {}

    @property
    def truncated(self) -> bool:
        return self.space.hedges.truncated or self.A.truncated or self.B.truncated

    def view(self, side: Side) -> SideView:
        return self.A if side is Side.SOURCE else self.B

    def is_trivial(self, key) -> bool:
        si, ci = key
        s = self.space.hedges[si]
        cand = self.space.rhs(si)[ci]
        return self.A.is_trivial(key, s, cand) and self.B.is_trivial(key, s, cand)

    def side_jus(self, side: Side, a: int, b: int) -> Iterator[tuple]:
        """Keys of the single-side justification set of ``a -> b``."""
        view = self.view(side)
        xdom = view.constants
        for si, s in enumerate(self.space.hedges):
            rows = view.rows(s, a, xdom)
            if not rows:
                continue
            for ci, cand in enumerate(self.space.rhs(si)):
                if view.hits(cand, rows, b, xdom):
                    yield (si, ci)

    def scan(self, a: int, b: int, c: int) -> dict[int, frozenset]:
        """Map each target value d to the keys of Jus(a -> b :. c -> d), for every d at once."""
        hit = self._scans.get((a, b, c))
        if hit is not None:
            return hit
        A, B, linked = self.A, self.B, self.linked
        out: dict[int, set] = {}
        for si, s in enumerate(self.space.hedges):
            rows_a = A.rows(s, a, linked)
            if not rows_a:
                continue
            rows_b = B.rows(s, c, linked)
            if not rows_b:
                continue
            xpos = A.table(s, linked).x_positions
            for ci, cand in enumerate(self.space.rhs(si)):
                fresh_a = A.fresh_values(cand.fresh, linked)
                xis = set()
                for raw, den in rows_a:
                    xl = tuple(raw[p] for p in xpos)
                    for fraw, fden in fresh_a:
                        if A.eval_rhs(cand, den + fden) == b:
                            xis.add(xl + fraw)
                if not xis:
                    continue
                fresh_b = B.fresh_values(cand.fresh, linked)
                ds = set()
                for raw, den in rows_b:
                    xl = tuple(raw[p] for p in xpos)
                    for fraw, fden in fresh_b:
                        if xl + fraw in xis:
                            v = B.eval_rhs(cand, den + fden)
                            if v is not None:
                                ds.add(v)
                for v in ds:
                    out.setdefault(v, set()).add((si, ci))
        frozen = {v: frozenset(ks) for v, ks in out.items()}
        self._scans[(a, b, c)] = frozen
        return frozen

    def nontrivial(self, keys: Iterable) -> frozenset:
        return frozenset(k for k in keys if not self.is_trivial(k))

    def make_set(self, keys: Iterable) -> JustificationSet:
        keys = list(keys)
        members = frozenset(self.space.justification(k) for k in keys)
        trivial = frozenset(self.space.justification(k) for k in keys if self.is_trivial(k))
        return JustificationSet(members, trivial, self.bounds, self.truncated)

    # direct checks on arbitrary justifications -----------------------------

    def pair_targets(self, j: Justification, a: int, b: int, c: int) -> set[int]:
        """Target values d with ``j`` in Jus(a -> b :. c -> d), by direct substitution search."""
        ga = self.A.graph(j, self.linked)
        xis = {xi for xi, ls, rs in ga if ls == a and rs == b}
        if not xis:
            return set()
        gb = self.B.graph(j, self.linked)
        return {rs for xi, ls, rs in gb if ls == c and xi in xis}

    def side_member(self, side: Side, j: Justification, a: int, b: int) -> bool:
        view = self.view(side)
        return any(ls == a and rs == b for _, ls, rs in view.graph(j, view.constants))

    def trivial_direct(self, j: Justification) -> bool:
        for view in (self.A, self.B):
            pairs = {(ls, rs) for _, ls, rs in view.graph(j, view.constants)}
            if any((p, q) not in pairs for p in view.classes for q in view.classes):
                return False
        return True


@lru_cache(maxsize=64)
def _pair_context(lp, source, target, bounds) -> PairContext:
    return PairContext(lp, source, target, bounds)


def pair_context(lp: LanguagePair, algebras: Sequence[Algebra], bounds: Bounds) -> PairContext:
    source, target = algebras
    return _pair_context(lp, source, target, bounds)


# ---------------------------------------------------------------------------
# public operations


@dataclass(frozen=True)
class Matches:
    substitutions: tuple
    truncated: bool = False

    def __iter__(self):
        return iter(self.substitutions)

    def __len__(self):
        return len(self.substitutions)


def _element_code(view: SideView, target) -> int:
    if isinstance(target, App):
        return view.code_of(target)
    return view.algebra.universe.code(target)


def match_hedge(h: Node, target, alg: Algebra, side: Side, lp: LanguagePair, b: Bounds) -> Matches:
    """Ground substitutions (one per tuple of variable values) instantiating ``h`` to ``target``.

    ``target`` is a universe element or a ground term denoting it.
    """
    view = side_view(lp, side, alg, b)
    code = _element_code(view, target)
    tab = view.table(h, view.constants)
    subs = []
    for raw, _ in tab.by_value.get(code, ()):
        binds = {v: view.raw_to_term(v, r) for v, r in zip(tab.vars, raw)}
        subs.append(Substitution.of(side, binds))
    return Matches(tuple(subs), tab.truncated)


def jus_arrow(a: App, b: App, alg: Algebra, side: Side, lp: LanguagePair, bounds: Bounds) -> JustificationSet:
    """Bounded justification set of the arrow ``a -> b`` inside one algebra.

    Triviality is judged inside ``alg`` alone.
    """
    view = side_view(lp, side, alg, bounds)
    ctx = _single_context(lp, side, alg, bounds)
    keys = list(ctx.side_jus(side, view.code_of(a), view.code_of(b)))
    space = ctx.space
    members = frozenset(space.justification(k) for k in keys)
    trivial = frozenset(
        space.justification(k) for k in keys if view.is_trivial(k, space.hedges[k[0]], space.rhs(k[0])[k[1]])
    )
    return JustificationSet(members, trivial, bounds, ctx.truncated)


def _single_context(lp, side, alg, bounds) -> PairContext:
    pair = (alg, alg)
    if side is Side.SOURCE:
        return pair_context(LanguagePair(lp.source, lp.source, lp.merged), pair, bounds)
    return pair_context(LanguagePair(lp.target, lp.target, lp.merged), pair, bounds)


def jus_arrow_pair(a: App, b: App, c: App, d: App, lp: LanguagePair, algebras, bounds: Bounds) -> JustificationSet:
    """Bounded justification set of the arrow proportion ``a -> b :. c -> d``."""
    ctx = pair_context(lp, algebras, bounds)
    keys = ctx.scan(ctx.A.code_of(a), ctx.A.code_of(b), ctx.B.code_of(c)).get(ctx.B.code_of(d), frozenset())
    return ctx.make_set(keys)


def is_trivial(j: Justification, lp: LanguagePair, algebras, bounds: Bounds, side: Side | None = None) -> bool:
    """Bounded triviality of ``j`` in one algebra or (given a pair) in both.

    A single algebra is placed on ``side``, or on whichever side its language matches.
    """
    if isinstance(algebras, Algebra):
        alg = algebras
        if side is None:
            side = Side.SOURCE if alg.arities() == lp.arities(Side.SOURCE) else Side.TARGET
        view = side_view(lp, side, alg, bounds)
        pairs = {(ls, rs) for _, ls, rs in view.graph(j, view.constants)}
        return all((p, q) in pairs for p in view.classes for q in view.classes)
    return pair_context(lp, algebras, bounds).trivial_direct(j)
