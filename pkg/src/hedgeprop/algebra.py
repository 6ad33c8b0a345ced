"""Concrete algebras, term evaluation and bounded ground-term spaces.

Elements are handled internally as integer codes ``0..n-1``.  For a ``nat``
universe the code of an element is the element itself; for a ``finite``
universe it is the position in the declared element list.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .errors import (
    ArityMismatch,
    EmptySpace,
    OutOfUniverse,
    ParseError,
    PartialTable,
    RankMismatch,
    UnboundVariable,
    UnknownBuiltin,
    UnknownSymbol,
)
from .terms import App, LanguagePair, Node, RankedSymbol, Side, Var, Z_KIND, build_language_pair, show, size, variables

DEFAULT_NAT_MAX = 64
BUILTINS = {"succ": 1, "plus": 2, "times": 2, "const": 0, "proj": None}


@dataclass(frozen=True)
class Universe:
    kind: str  # "nat" or "finite"
    elements: tuple

    @classmethod
    def nat(cls, max_value: int = DEFAULT_NAT_MAX) -> "Universe":
        if max_value < 0:
            raise ParseError("nat universe needs max >= 0")
        return cls("nat", tuple(range(max_value + 1)))

    @classmethod
    def finite(cls, elements: Sequence[str]) -> "Universe":
        elements = tuple(str(e) for e in elements)
        if not elements:
            raise ParseError("a universe is non-empty")
        if len(set(elements)) != len(elements):
            raise ParseError("duplicate universe elements")
        return cls("finite", elements)

    def __len__(self):
        return len(self.elements)

    def code(self, element) -> int:
        if self.kind == "nat":
            if isinstance(element, bool) or not isinstance(element, int):
                raise ParseError(f"{element!r} is not a natural number")
            if not 0 <= element < len(self.elements):
                raise OutOfUniverse(f"{element} is outside 0..{len(self.elements) - 1}")
            return element
        try:
            return self.elements.index(str(element))
        except ValueError:
            raise OutOfUniverse(f"{element!r} is not in the universe") from None

    def label(self, code: int):
        return self.elements[code]


@dataclass(frozen=True)
class Interpretation:
    """How one symbol is interpreted: a built-in or an explicit table over codes."""

    kind: str  # "builtin" or "table"
    rank: int
    name: str = "table"
    value: object = None
    table: Mapping[tuple, int] | None = field(default=None, compare=False)

    def make_function(self, universe: Universe) -> Callable[..., int | None]:
        """Return a function on element codes; ``None`` signals a value outside the universe."""
        top = len(universe) - 1
        if self.kind == "table":
            table = self.table
            return lambda *args: table[args]
        if self.name == "const":
            c = universe.code(self.value)
            return lambda: c
        if self.name == "proj":
            i = int(self.value) - 1
            return lambda *args: args[i]
        if self.name == "succ":
            return lambda a: a + 1 if a < top else None
        if self.name == "plus":
            return lambda a, b: a + b if a + b <= top else None
        if self.name == "times":
            return lambda a, b: a * b if a * b <= top else None
        raise UnknownBuiltin(self.name)


@dataclass(frozen=True, eq=False)
class Algebra:
    """A concrete algebra; hashed by identity so it can key engine caches."""

    name: str
    symbols: tuple[RankedSymbol, ...]
    universe: Universe
    interpretations: Mapping[str, Interpretation] = field(repr=False)

    def __post_init__(self):
        names = {s.name for s in self.symbols}
        if set(self.interpretations) != names:
            raise UnknownSymbol(f"interpretations do not cover exactly the symbols of {self.name}")
        for s in self.symbols:
            if self.interpretations[s.name].rank != s.rank:
                raise RankMismatch(f"{s.name} declared with rank {s.rank}")
        funcs = {s.name: (self.interpretations[s.name].make_function(self.universe), s.rank) for s in self.symbols}
        object.__setattr__(self, "_funcs", funcs)

    def function(self, symbol: str):
        """``(callable, rank)`` for ``symbol``; the callable works on element codes."""
        try:
            return self._funcs[symbol]
        except KeyError:
            raise UnknownSymbol(f"{symbol!r} is not a symbol of {self.name}") from None

    def arities(self) -> dict[str, int]:
        return {s.name: s.rank for s in self.symbols}

    def constants(self) -> list[str]:
        return [s.name for s in self.symbols if s.rank == 0]

    def eval_code(self, t: Node, env: Mapping[Var, int] | None = None) -> int:
        """Evaluate ``t`` to an element code.  ``env`` maps Z-variables to codes."""
        env = env or {}

        def go(node):
            if node.__class__ is Var:
                if node not in env:
                    raise UnboundVariable(f"{node} is not assigned")
                return env[node]
            fn, rank = self.function(node.symbol)
            if len(node.args) != rank:
                raise ArityMismatch(f"{node.symbol} has rank {rank}, got {len(node.args)} arguments")
            out = fn(*[go(a) for a in node.args])
            if out is None:
                raise OutOfUniverse(f"{show(node)} leaves the universe of {self.name}")
            return out

        return go(t)

    def with_nat_max(self, max_value: int) -> "Algebra":
        if self.universe.kind != "nat":
            return self
        return Algebra(self.name, self.symbols, Universe.nat(max_value), self.interpretations)


def evaluate(t: Node, alg: Algebra, assignment: Mapping[Var, object] | None = None):
    """Denotation of ``t`` in ``alg`` under ``assignment`` (Z-variable -> element)."""
    env = {v: alg.universe.code(e) for v, e in (assignment or {}).items()}
    return alg.universe.label(alg.eval_code(t, env))


# ---------------------------------------------------------------------------
# ground spaces


@dataclass(frozen=True, eq=False)
class GroundSpace:
    """All in-universe ground terms up to a depth, partitioned by denotation."""

    algebra: Algebra
    depth: int
    terms: tuple[App, ...]
    classes: Mapping[int, tuple[App, ...]]
    representatives: Mapping[int, App]

    def keys(self) -> list[int]:
        """Element codes present in the space, ascending."""
        return sorted(self.classes)

    def labels(self) -> list:
        return [self.algebra.universe.label(k) for k in self.keys()]

    def representative(self, code: int) -> App:
        return self.representatives[code]


def _term_key(t: App):
    return (size(t), t.text)


def enumerate_ground_space(alg: Algebra, depth: int) -> GroundSpace:
    """Every ground term of depth <= ``depth`` whose evaluation stays in the universe."""
    if depth < 1:
        raise ValueError("ground space depth must be >= 1")
    constants = [s for s in alg.symbols if s.rank == 0]
    if not constants:
        raise EmptySpace(f"{alg.name} has no constant symbols")
    ops = [s for s in alg.symbols if s.rank > 0]

    layer: list[tuple[App, int]] = []
    for c in constants:
        fn, _ = alg.function(c.name)
        layer.append((App(c.name), fn()))
    for _ in range(depth - 1):
        nxt = list(layer[: len(constants)])
        for s in ops:
            fn, rank = alg.function(s.name)
            for combo in itertools.product(layer, repeat=rank):
                v = fn(*[c[1] for c in combo])
                if v is not None:
                    nxt.append((App(s.name, [c[0] for c in combo]), v))
        layer = nxt

    classes: dict[int, list[App]] = {}
    for t, v in layer:
        classes.setdefault(v, []).append(t)
    reps = {v: min(ts, key=_term_key) for v, ts in classes.items()}
    return GroundSpace(
        alg,
        depth,
        tuple(t for t, _ in layer),
        {v: tuple(ts) for v, ts in classes.items()},
        reps,
    )


# ---------------------------------------------------------------------------
# term properties


def _induced_values(t: Node, alg: Algebra):
    zs = [v for v in variables(t) if v.kind == Z_KIND]
    if any(v.kind != Z_KIND for v in variables(t)):
        raise UnboundVariable("only Z-variables may occur in a concrete term")
    out = {}
    for combo in itertools.product(range(len(alg.universe)), repeat=len(zs)):
        try:
            out[combo] = alg.eval_code(t, dict(zip(zs, combo)))
        except OutOfUniverse:
            pass
    return out


def is_injective_term(t: Node, alg: Algebra) -> bool:
    """Exhaustive check that the induced function is injective where defined."""
    values = list(_induced_values(t, alg).values())
    return len(values) == len(set(values))


def is_constant_term(t: Node, alg: Algebra) -> bool:
    values = set(_induced_values(t, alg).values())
    return len(values) == 1


# ---------------------------------------------------------------------------
# loading


def _require(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind) or (kind is int and isinstance(val, bool)):
        raise ParseError(f"{where}: field {key!r} has the wrong type")
    return val


def algebra_from_dict(data: Mapping, nat_max: int | None = None) -> Algebra:
    name = _require(data, "name", str, "algebra")
    uni = _require(data, "universe", dict, name)
    kind = _require(uni, "kind", str, f"{name}.universe")
    if kind == "nat":
        top = nat_max if nat_max is not None else uni.get("max", DEFAULT_NAT_MAX)
        if isinstance(top, bool) or not isinstance(top, int):
            raise ParseError(f"{name}.universe.max must be an integer")
        universe = Universe.nat(top)
    elif kind == "finite":
        universe = Universe.finite(_require(uni, "elements", list, f"{name}.universe"))
    else:
        raise ParseError(f"{name}: unknown universe kind {kind!r}")

    symbols, interps = [], {}
    for k, op in enumerate(_require(data, "operations", list, name)):
        where = f"{name}.operations[{k}]"
        sym = _require(op, "symbol", str, where)
        rank = _require(op, "rank", int, where)
        if sym in interps:
            raise ParseError(f"{where}: symbol {sym!r} declared twice")
        interp = _interpretation(_require(op, "interpretation", dict, where), rank, universe, where)
        symbols.append(RankedSymbol(sym, rank))
        interps[sym] = interp
    return Algebra(name, tuple(symbols), universe, interps)


def _interpretation(entry, rank, universe, where) -> Interpretation:
    kind = _require(entry, "kind", str, where)
    if kind == "builtin":
        bname = _require(entry, "name", str, where)
        if bname not in BUILTINS:
            raise UnknownBuiltin(f"{where}: unknown builtin {bname!r}")
        expected = BUILTINS[bname]
        if bname == "proj":
            idx = entry.get("value")
            if isinstance(idx, bool) or not isinstance(idx, int) or not 1 <= idx <= rank:
                raise RankMismatch(f"{where}: proj needs 1 <= value <= rank")
        elif expected != rank:
            raise RankMismatch(f"{where}: builtin {bname} has rank {expected}, declared {rank}")
        if bname in ("succ", "plus", "times") and universe.kind != "nat":
            raise UnknownBuiltin(f"{where}: builtin {bname} needs a nat universe")
        if bname == "const":
            if "value" not in entry:
                raise ParseError(f"{where}: const needs a value")
            universe.code(entry["value"])
        return Interpretation("builtin", rank, bname, entry.get("value"))
    if kind == "table":
        rows = _require(entry, "rows", list, where)
        table: dict[tuple, int] = {}
        for row in rows:
            if not isinstance(row, list) or len(row) != rank + 1:
                raise RankMismatch(f"{where}: table row {row!r} does not have {rank + 1} entries")
            args = tuple(universe.code(a) for a in row[:-1])
            res = universe.code(row[-1])
            if table.get(args, res) != res:
                raise ParseError(f"{where}: conflicting rows for {row[:-1]!r}")
            table[args] = res
        if len(table) != len(universe) ** rank:
            raise PartialTable(f"{where}: table covers {len(table)} of {len(universe) ** rank} argument tuples")
        return Interpretation("table", rank, "table", None, table)
    raise ParseError(f"{where}: unknown interpretation kind {kind!r}")


def load_algebra(text: str, nat_max: int | None = None) -> Algebra:
    """Parse an algebra from its JSON text.  ``nat_max`` overrides ``universe.max``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"algebra file is not valid JSON: {exc}") from None
    return algebra_from_dict(data, nat_max)


def load_pairing(text: str, source: Algebra, target: Algebra) -> LanguagePair:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"pairing file is not valid JSON: {exc}") from None
    for key, alg in (("source", source), ("target", target)):
        if key in data and data[key] != alg.name:
            raise ParseError(f"pairing expects {key} algebra {data[key]!r}, got {alg.name!r}")
    pairs = _require(data, "pairs", list, "pairing")
    return build_language_pair(
        [(s.name, s.rank) for s in source.symbols],
        [(s.name, s.rank) for s in target.symbols],
        pairs,
    )


def side_language_matches(lp: LanguagePair, side: Side, alg: Algebra) -> None:
    want = lp.arities(side)
    have = alg.arities()
    if want != have:
        raise RankMismatch(f"algebra {alg.name} does not interpret the {side.value} language {want}")
