import json
import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from plausible.semantics import NeighborhoodModel
from plausible.syntax import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Box,
    Diamond,
    Iff,
    Implies,
    Nabla,
    Not,
    Or,
)

FIXTURES = Path(__file__).parent / "fixtures"

_UNARY_OPS = {"box": Box, "diamond": Diamond, "nabla": Nabla}


def formulas(atoms=(0, 1, 2), modal=("box", "diamond"), max_leaves=12):
    """Hypothesis strategy for formulas over the given atoms and modal ops."""
    leaves = st.one_of(
        st.sampled_from([TOP, BOTTOM]),
        st.sampled_from(list(atoms)).map(Atom),
    )
    unary = [Not] + [_UNARY_OPS[name] for name in modal]

    def extend(children):
        branches = [children.map(op) for op in unary]
        branches += [
            st.tuples(children, children).map(lambda t, op=op: op(*t))
            for op in (And, Or, Implies, Iff)
        ]
        return st.one_of(*branches)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def random_formula(rng: random.Random, atoms=(0, 1), modal=("box",), depth=3, size=8):
    """Seeded random formula with modal depth bounded by ``depth`` and node
    count roughly bounded by ``size``."""
    ops = ["atom", "atom", "top", "bot"]
    if size > 1:
        ops += ["not", "and", "or", "imp", "iff"]
        if depth > 0:
            ops += list(modal) * 2
    pick = rng.choice(ops)
    if pick == "atom":
        return Atom(rng.choice(atoms))
    if pick == "top":
        return TOP
    if pick == "bot":
        return BOTTOM
    if pick == "not":
        return Not(random_formula(rng, atoms, modal, depth, size - 1))
    if pick in _UNARY_OPS:
        return _UNARY_OPS[pick](random_formula(rng, atoms, modal, depth - 1, size - 1))
    left = random_formula(rng, atoms, modal, depth, size // 2)
    right = random_formula(rng, atoms, modal, depth, size // 2)
    return {"and": And, "or": Or, "imp": Implies, "iff": Iff}[pick](left, right)


def random_raw_model(rng: random.Random, max_worlds=3, atoms=(0, 1)) -> NeighborhoodModel:
    """Uniform-ish random neighborhood model: each subset of the universe
    lands in each world's family with probability 1/2."""
    n = rng.randint(1, max_worlds)
    families = tuple(
        tuple(x for x in range(1 << n) if rng.random() < 0.5) for _ in range(n)
    )
    valuation = tuple((a, rng.randrange(1 << n)) for a in atoms)
    return NeighborhoodModel(n, families, valuation)


def random_chain_model(rng: random.Random, max_worlds=3, atoms=(0, 1)) -> NeighborhoodModel:
    """Random model satisfying (c), (t), (n): each family is a chain of
    supersets from a core containing the world up to the full universe."""
    n = rng.randint(1, max_worlds)
    full = (1 << n) - 1
    families = []
    for w in range(n):
        core = (1 << w) | rng.randrange(1 << n)
        chain = {core, full}
        step = core
        while step != full:
            bit = rng.choice([i for i in range(n) if not (step >> i) & 1])
            step |= 1 << bit
            if rng.random() < 0.5:
                chain.add(step)
        families.append(tuple(sorted(chain)))
    valuation = tuple((a, rng.randrange(1 << n)) for a in atoms)
    return NeighborhoodModel(n, tuple(families), valuation)


def load_fixture(*parts):
    with open(FIXTURES.joinpath(*parts), "r", encoding="utf-8") as handle:
        return json.load(handle)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
