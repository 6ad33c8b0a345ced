"""Symbols, paired languages, terms, hedges, substitutions and justifications.

Terms and hedges share one node representation: a :class:`Var` leaf or an
:class:`App` node carrying a symbol name and a tuple of children.  A term is
built over one concrete language; a hedge is built over the merged language of
a :class:`LanguagePair` and never contains constant symbols.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    ArityMismatch,
    DuplicatePairing,
    InvalidJustification,
    InvalidSubstitution,
    LambdaAtRoot,
    ParseError,
    SizeMismatch,
    UnboundVariable,
    UnknownSymbol,
)

X_KIND = "x"  # placeholder for a constant symbol
Z_KIND = "z"  # term variable
H_KIND = "Z"  # hedge variable, may be bound to the empty hedge
VAR_KINDS = (X_KIND, Z_KIND, H_KIND)

_VAR_NAME = re.compile(r"^([xzZ])([1-9][0-9]*)$")
_IDENT = re.compile(r"^[A-Za-z0-9_+*]+$")
_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_+*]+)|(.))")
LAMBDA_TEXT = "_lambda_"


class Side(str, Enum):
    SOURCE = "source"
    TARGET = "target"

    def other(self) -> "Side":
        return Side.TARGET if self is Side.SOURCE else Side.SOURCE


class _Lambda:
    """The empty hedge.  Only ever the full value of a hedge variable."""

    __slots__ = ()

    def __repr__(self):
        return LAMBDA_TEXT

    __str__ = __repr__


LAMBDA = _Lambda()


class Var:
    __slots__ = ("kind", "index", "name", "_hash")

    def __init__(self, kind: str, index: int):
        if kind not in VAR_KINDS:
            raise ValueError(f"unknown variable kind {kind!r}")
        if index < 1:
            raise ValueError("variable indices start at 1")
        name = f"{kind}{index}"
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_hash", hash(name))

    def __setattr__(self, key, value):
        raise AttributeError("Var is immutable")

    def __eq__(self, other):
        return other.__class__ is Var and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.name

    __str__ = __repr__

    def __reduce__(self):
        return (Var, (self.kind, self.index))


class App:
    __slots__ = ("symbol", "args", "text", "_hash")

    def __init__(self, symbol: str, args: Sequence["Node"] = ()):
        args = tuple(args)
        if args:
            text = symbol + "(" + ",".join(a.text if a.__class__ is App else a.name for a in args) + ")"
        else:
            text = symbol
        object.__setattr__(self, "symbol", symbol)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "text", text)
        object.__setattr__(self, "_hash", hash(text))

    def __setattr__(self, key, value):
        raise AttributeError("App is immutable")

    def __eq__(self, other):
        return other.__class__ is App and other.text == self.text

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.text

    __str__ = __repr__

    def __reduce__(self):
        return (App, (self.symbol, self.args))


Node = Union[Var, App]


def show(node) -> str:
    if node is LAMBDA:
        return LAMBDA_TEXT
    return node.text if node.__class__ is App else node.name


def depth(node: Node) -> int:
    """Symbol nesting depth: a variable has depth 0, a constant depth 1."""
    if node.__class__ is Var:
        return 0
    return 1 + max((depth(a) for a in node.args), default=0)


def size(node: Node) -> int:
    if node.__class__ is Var:
        return 1
    return 1 + sum(size(a) for a in node.args)


def iter_vars(node: Node):
    """Variables in left-to-right leaf order, with repetitions."""
    if node.__class__ is Var:
        yield node
    else:
        for a in node.args:
            yield from iter_vars(a)


def variables(*nodes: Node) -> list[Var]:
    """Distinct variables of ``nodes`` in first-occurrence order."""
    seen: dict[Var, None] = {}
    for n in nodes:
        for v in iter_vars(n):
            seen.setdefault(v, None)
    return list(seen)


def vars_of(node: Node) -> tuple[frozenset, frozenset, frozenset]:
    """Return the (X-variables, Z-variables, hedge variables) of ``node``."""
    found = {k: set() for k in VAR_KINDS}
    for v in iter_vars(node):
        found[v.kind].add(v)
    return frozenset(found[X_KIND]), frozenset(found[Z_KIND]), frozenset(found[H_KIND])


def is_ground(node: Node) -> bool:
    return next(iter_vars(node), None) is None


def rename(node: Node, mapping: Mapping[Var, Node]) -> Node:
    if node.__class__ is Var:
        return mapping.get(node, node)
    return App(node.symbol, [rename(a, mapping) for a in node.args])


# ---------------------------------------------------------------------------
# symbols and languages


@dataclass(frozen=True)
class RankedSymbol:
    name: str
    rank: int

    def __post_init__(self):
        if not self.name or not _IDENT.match(self.name):
            raise ParseError(f"invalid symbol name {self.name!r}")
        if _VAR_NAME.match(self.name) or self.name == LAMBDA_TEXT:
            raise ParseError(f"symbol name {self.name!r} is reserved")
        if self.rank < 0:
            raise ParseError(f"negative rank for {self.name!r}")


@dataclass(frozen=True)
class LanguagePair:
    """Two concrete languages indexed by a shared index set, plus the merged language.

    ``source[i]``, ``target[i]`` and ``merged[i]`` are the symbols with index ``i``;
    the merged rank is the larger of the two paired ranks.
    """

    source: tuple[RankedSymbol, ...]
    target: tuple[RankedSymbol, ...]
    merged: tuple[RankedSymbol, ...]

    def symbols(self, side: Side) -> tuple[RankedSymbol, ...]:
        return self.source if Side(side) is Side.SOURCE else self.target

    @cached_property
    def _merged_index(self) -> dict[str, int]:
        return {s.name: i for i, s in enumerate(self.merged)}

    @cached_property
    def _side_index(self) -> dict[Side, dict[str, int]]:
        return {side: {s.name: i for i, s in enumerate(self.symbols(side))} for side in Side}

    def merged_index(self, name: str) -> int:
        try:
            return self._merged_index[name]
        except KeyError:
            raise UnknownSymbol(f"{name!r} is not a merged symbol") from None

    def side_index(self, side: Side, name: str) -> int:
        try:
            return self._side_index[side][name]
        except KeyError:
            raise UnknownSymbol(f"{name!r} is not a {side.value} symbol") from None

    def arities(self, side: Side | None = None) -> dict[str, int]:
        """Symbol ranks of one concrete side, or of the merged language when ``side`` is None."""
        syms = self.merged if side is None else self.symbols(side)
        return {s.name: s.rank for s in syms}

    def constant_indices(self, side: Side) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.symbols(side)) if s.rank == 0)

    def linked_constant_indices(self) -> tuple[int, ...]:
        """Indices that are constants on both sides; the range of linked X-variables."""
        return tuple(i for i, (s, t) in enumerate(zip(self.source, self.target)) if s.rank == 0 and t.rank == 0)

    def operations(self) -> tuple[RankedSymbol, ...]:
        """Merged symbols that may label hedge nodes (rank >= 1)."""
        return tuple(s for s in self.merged if s.rank >= 1)

    def swapped(self) -> "LanguagePair":
        return LanguagePair(self.target, self.source, self.merged)

    def is_unilingual(self) -> bool:
        return self.source == self.target


def build_language_pair(
    source_decls: Iterable[tuple[str, int]],
    target_decls: Iterable[tuple[str, int]],
    pairs: Iterable[Sequence[str]],
) -> LanguagePair:
    """Pair two ranked languages symbol by symbol.

    Each entry of ``pairs`` is ``(source_name, target_name)`` or
    ``(source_name, target_name, merged_name)``.  Index order follows ``pairs``.
    Identically named and ranked symbols keep their name in the merged
    language; the others get generated names (``h``/``h1``... for operations,
    ``_``/``_1``... for constants) unless a merged name is given.
    """
    src = _decl_map(source_decls, "source")
    tgt = _decl_map(target_decls, "target")
    if len(src) != len(tgt):
        raise SizeMismatch(f"source has {len(src)} symbols, target has {len(tgt)}")
    pairs = [tuple(p) for p in pairs]
    used_src, used_tgt = set(), set()
    rows = []
    for p in pairs:
        if len(p) not in (2, 3):
            raise ParseError(f"malformed pair {p!r}")
        s, t = p[0], p[1]
        if s not in src:
            raise UnknownSymbol(f"unknown source symbol {s!r}")
        if t not in tgt:
            raise UnknownSymbol(f"unknown target symbol {t!r}")
        if s in used_src or t in used_tgt:
            raise DuplicatePairing(f"symbol paired twice in {p!r}")
        used_src.add(s)
        used_tgt.add(t)
        rows.append((src[s], tgt[t], p[2] if len(p) == 3 else None))
    if len(rows) != len(src):
        missing = sorted(set(src) - used_src) + sorted(set(tgt) - used_tgt)
        raise UnknownSymbol(f"pairing does not cover symbols {missing}")

    names: list[str | None] = []
    for s, t, given in rows:
        if given is not None:
            names.append(given)
        elif s.name == t.name and s.rank == t.rank:
            names.append(s.name)
        else:
            names.append(None)
    taken = {n for n in names if n is not None}
    for is_op, base in ((True, "h"), (False, "_")):
        slots = [k for k, (s, t, _) in enumerate(rows) if names[k] is None and (max(s.rank, t.rank) >= 1) == is_op]
        for n, k in enumerate(slots, start=1):
            cand = base if len(slots) == 1 else f"{base}{n}"
            while cand in taken:
                cand += "_"
            names[k] = cand
            taken.add(cand)
    if len(set(names)) != len(names):
        raise DuplicatePairing(f"merged symbol names collide: {names}")

    merged = tuple(RankedSymbol(n, max(s.rank, t.rank)) for n, (s, t, _) in zip(names, rows))
    return LanguagePair(tuple(r[0] for r in rows), tuple(r[1] for r in rows), merged)


def _decl_map(decls, label):
    out: dict[str, RankedSymbol] = {}
    for name, rank in decls:
        if name in out:
            raise DuplicatePairing(f"{label} symbol {name!r} declared twice")
        out[name] = RankedSymbol(name, int(rank))
    return out


# ---------------------------------------------------------------------------
# text syntax


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        yield m.group(1) or m.group(2)


def parse_node(text: str, arities: Mapping[str, int] | None = None, allow_vars: bool = True) -> Node:
    """Parse prefix syntax such as ``+(1,S(0))`` or ``h(z1,Z1)``.

    With ``arities`` every symbol must be declared and applied with its rank.
    """
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty term")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'a symbol'} in {text!r}, got {tok!r}")
        pos += 1
        return tok

    def node():
        tok = take()
        if not _IDENT.match(tok):
            raise ParseError(f"unexpected {tok!r} in {text!r}")
        if tok == LAMBDA_TEXT:
            raise ParseError("the empty hedge cannot be written in input")
        args = []
        if peek() == "(":
            take("(")
            args.append(node())
            while peek() == ",":
                take(",")
                args.append(node())
            take(")")
        m = _VAR_NAME.match(tok)
        if m:
            if args:
                raise ParseError(f"variable {tok} applied to arguments")
            if not allow_vars:
                raise ParseError(f"variable {tok} not allowed in a ground term")
            return Var(m.group(1), int(m.group(2)))
        if arities is not None:
            if tok not in arities:
                raise UnknownSymbol(f"unknown symbol {tok!r}")
            if arities[tok] != len(args):
                raise ArityMismatch(f"{tok} has rank {arities[tok]}, applied to {len(args)} arguments")
        return App(tok, args)

    result = node()
    if pos != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return result


def parse_term(text: str, lp: LanguagePair, side: Side, allow_vars: bool = False) -> Node:
    return parse_node(text, lp.arities(side), allow_vars=allow_vars)


def parse_hedge(text: str, lp: LanguagePair) -> Node:
    h = parse_node(text, lp.arities(None), allow_vars=True)
    _check_abstract(h)
    return h


def _check_abstract(h: Node):
    if h.__class__ is App:
        if not h.args:
            raise InvalidJustification(f"abstract hedges contain no constant symbols, found {h.symbol}")
        for a in h.args:
            _check_abstract(a)


# ---------------------------------------------------------------------------
# substitutions


@dataclass(frozen=True)
class Substitution:
    """A ground substitution into one side of a language pair.

    The symbol part is fixed by the pairing.  X-variables map to constant
    indices, Z-variables to ground terms, hedge variables to ground terms or
    :data:`LAMBDA`.
    """

    side: Side
    x_map: tuple[tuple[Var, int], ...] = ()
    z_map: tuple[tuple[Var, App], ...] = ()
    hedge_map: tuple = ()

    @classmethod
    def of(cls, side: Side, bindings: Mapping[Var, object]) -> "Substitution":
        xs, zs, hs = [], [], []
        for v, val in bindings.items():
            if v.kind == X_KIND:
                if not isinstance(val, int):
                    raise InvalidSubstitution(f"{v} must map to a constant index")
                xs.append((v, val))
            elif v.kind == Z_KIND:
                if val is LAMBDA:
                    raise InvalidSubstitution(f"term variable {v} cannot be bound to the empty hedge")
                if not (isinstance(val, App) and is_ground(val)):
                    raise InvalidSubstitution(f"{v} must map to a ground term")
                zs.append((v, val))
            else:
                if val is not LAMBDA and not (isinstance(val, App) and is_ground(val)):
                    raise InvalidSubstitution(f"{v} must map to a ground term or the empty hedge")
                hs.append((v, val))
        key = lambda kv: (kv[0].kind, kv[0].index)
        return cls(side, tuple(sorted(xs, key=key)), tuple(sorted(zs, key=key)), tuple(sorted(hs, key=key)))

    @cached_property
    def bindings(self) -> dict[Var, object]:
        return dict(self.x_map + self.z_map + self.hedge_map)

    def display(self, lp: LanguagePair) -> str:
        concrete = lp.symbols(self.side)
        parts = [f"{m.name}/{c.name}" for m, c in zip(lp.merged, concrete) if m.rank >= 1]
        for v, i in self.x_map:
            parts.append(f"{v}/{concrete[i].name}")
        for v, t in self.z_map + self.hedge_map:
            parts.append(f"{v}/{show(t)}")
        return "{" + ", ".join(parts) + "}"


def apply_substitution(h: Node, sigma: Substitution, lp: LanguagePair) -> App:
    """Instantiate hedge ``h`` into a ground term of ``sigma.side``.

    Children whose value is the empty hedge are deleted from their parent; the
    surviving children must match the concrete symbol's rank.
    """
    concrete = lp.symbols(sigma.side)
    binds = sigma.bindings

    def go(node):
        if node.__class__ is Var:
            if node not in binds:
                raise UnboundVariable(f"{node} is not bound by the substitution")
            val = binds[node]
            if node.kind == X_KIND:
                if not 0 <= val < len(concrete) or concrete[val].rank != 0:
                    raise InvalidSubstitution(f"{node} bound to index {val}, which is not a constant")
                return App(concrete[val].name)
            return val
        sym = concrete[lp.merged_index(node.symbol)]
        kids = [k for k in (go(a) for a in node.args) if k is not LAMBDA]
        if len(kids) != sym.rank:
            raise ArityMismatch(f"{sym.name} has rank {sym.rank} but {len(kids)} arguments survive in {show(node)}")
        return App(sym.name, kids)

    out = go(h)
    if out is LAMBDA:
        raise LambdaAtRoot(f"{show(h)} instantiates to the empty hedge")
    return out


# ---------------------------------------------------------------------------
# justifications


class Justification:
    """A pair of abstract hedges ``lhs -> rhs``.

    Every Z-variable and hedge variable of ``rhs`` must occur in ``lhs``.
    ``free_hedge_vars=True`` relaxes the hedge-variable half of that rule; it
    is used only for certificates of the functional proportion check, whose
    transformation hedge may carry hedge variables of its own.
    """

    __slots__ = ("lhs", "rhs", "text", "_hash")

    def __init__(self, lhs: Node, rhs: Node, free_hedge_vars: bool = False):
        _check_abstract(lhs)
        _check_abstract(rhs)
        _, lz, lh = vars_of(lhs)
        _, rz, rh = vars_of(rhs)
        if not rz <= lz:
            raise InvalidJustification(f"Z-variables {sorted(map(str, rz - lz))} of the right side do not occur on the left")
        if not free_hedge_vars and not rh <= lh:
            raise InvalidJustification(f"hedge variables {sorted(map(str, rh - lh))} of the right side do not occur on the left")
        text = f"{show(lhs)} -> {show(rhs)}"
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "text", text)
        object.__setattr__(self, "_hash", hash(text))

    def __setattr__(self, key, value):
        raise AttributeError("Justification is immutable")

    def __eq__(self, other):
        return isinstance(other, Justification) and other.text == self.text

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Justification({self.text!r})"

    def __str__(self):
        return self.text

    @property
    def size(self) -> int:
        return size(self.lhs) + size(self.rhs)

    def sort_key(self):
        return (self.size, self.text)

    def variables(self) -> list[Var]:
        return variables(self.lhs, self.rhs)

    def is_scoped(self) -> bool:
        return vars_of(self.rhs)[2] <= vars_of(self.lhs)[2]

    def reversed(self) -> "Justification":
        return Justification(self.rhs, self.lhs)


def canonicalize(j: Justification) -> Justification:
    """Rename variables by first occurrence (lhs, then rhs), separately per kind."""
    counters = {k: 0 for k in VAR_KINDS}
    mapping: dict[Var, Var] = {}
    for v in variables(j.lhs, j.rhs):
        counters[v.kind] += 1
        mapping[v] = Var(v.kind, counters[v.kind])
    return Justification(rename(j.lhs, mapping), rename(j.rhs, mapping), free_hedge_vars=not j.is_scoped())


def canonical_hedge(h: Node) -> Node:
    counters = {k: 0 for k in VAR_KINDS}
    mapping: dict[Var, Var] = {}
    for v in variables(h):
        counters[v.kind] += 1
        mapping[v] = Var(v.kind, counters[v.kind])
    return rename(h, mapping)


def parse_justification(text: str, lp: LanguagePair, free_hedge_vars: bool = False) -> Justification:
    if text.count("->") != 1:
        raise ParseError(f"a justification needs exactly one '->': {text!r}")
    left, right = text.split("->")
    return Justification(parse_hedge(left, lp), parse_hedge(right, lp), free_hedge_vars=free_hedge_vars)
