import itertools
import random
from pathlib import Path

import pytest

from hedgeprop import Bounds, Side, algebra_from_dict, build_language_pair, load_algebra, load_pairing, parse_term

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


@pytest.fixture(scope="session")
def nm():
    """The successor/zero and plus/one algebras with their pairing."""
    N = load_algebra(fixture_text("N.alg"))
    M = load_algebra(fixture_text("M.alg"))
    lp = load_pairing(fixture_text("NM.pair"), N, M)
    return N, M, lp


@pytest.fixture(scope="session")
def bounds():
    return Bounds()


def src(lp, text):
    return parse_term(text, lp, Side.SOURCE)


def tgt(lp, text):
    return parse_term(text, lp, Side.TARGET)


def table_data(name, elements, ops, rng):
    """JSON-shaped algebra with random total tables; ``ops`` is a list of (symbol, rank)."""
    out = []
    for sym, rank in ops:
        rows = [list(args) + [rng.choice(elements)] for args in itertools.product(elements, repeat=rank)]
        out.append({"symbol": sym, "rank": rank, "interpretation": {"kind": "table", "rows": rows}})
    return {"name": name, "universe": {"kind": "finite", "elements": list(elements)}, "operations": out}


def random_table_pair(seed: int, source_ops=(("f", 2), ("c", 0)), target_ops=(("g", 1), ("e", 0))):
    rng = random.Random(seed)
    sa = table_data("A", ["a0", "a1"], source_ops, rng)
    sb = table_data("B", ["b0", "b1"], target_ops, rng)
    A, B = algebra_from_dict(sa), algebra_from_dict(sb)
    lp = build_language_pair(source_ops, target_ops, [(s, t) for (s, _), (t, _) in zip(source_ops, target_ops)])
    return A, B, lp, sa, sb
