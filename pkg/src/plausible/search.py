"""Bounded model enumeration, validity decision, and countermodel search.

Exhaustion over a bounded class is reported as ``ExhaustedValid`` — evidence
at the recorded bounds, never a general validity claim.  Enumeration is
deterministic, so the first countermodel is a stable fixture; every
countermodel is re-validated against the object-level evaluator and the
class constraints before it is returned.

The inner enumeration/evaluation loop runs on a compiled kernel when the
``plausible._kernel`` extension is available, with a pure-Python fallback
selected at import time (``PLAUSIBLE_PURE_PYTHON=1`` forces the fallback).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from enum import Enum
from itertools import product

from . import _kernel_py
from .semantics import (
    KripkeModel,
    Model,
    NeighborhoodModel,
    UniversalModel,
    eval_model,
    is_valid_in,
    nm_check_conditions,
    relation_properties,
)
from .syntax import (
    And,
    Atom,
    Bottom,
    Box,
    Diamond,
    DialectError,
    Formula,
    Iff,
    Implies,
    Nabla,
    Not,
    Or,
    Top,
    modal_operators,
    parse,
    render,
)

_ACTIVE = _kernel_py
_BACKEND = "python"
if not os.environ.get("PLAUSIBLE_PURE_PYTHON"):
    try:
        from . import _kernel  # type: ignore[attr-defined]

        _ACTIVE = _kernel
        _BACKEND = "compiled"
    except ImportError:
        pass


def kernel_backend() -> str:
    """Name of the active search kernel: ``"compiled"`` or ``"python"``."""
    return _BACKEND


class BoundsExceededError(ValueError):
    """Requested bounds exceed the documented per-class caps."""


class SearchInternalError(RuntimeError):
    """A kernel result failed re-validation; indicates a kernel defect."""


class ModelClass(Enum):
    RAW_NEIGHBORHOOD = "raw"
    CONSTRAINED_NEIGHBORHOOD = "constrained"
    KRIPKE_EQUIVALENCE = "kripke-equiv"
    KRIPKE_ALL = "kripke-all"
    UNIVERSAL = "universal"


# Raw neighborhood structures grow as 2^(2^n) per world, so exhaustive raw
# search is capped hard; the constrained class grows as n·2^n and reaches
# further.  Kripke and universal caps keep suites interactive.
WORLD_CAPS: dict[ModelClass, int] = {
    ModelClass.RAW_NEIGHBORHOOD: 2,
    ModelClass.CONSTRAINED_NEIGHBORHOOD: 4,
    ModelClass.KRIPKE_EQUIVALENCE: 4,
    ModelClass.KRIPKE_ALL: 4,
    ModelClass.UNIVERSAL: 10,
}

_CLASS_ID: dict[ModelClass, int] = {
    ModelClass.CONSTRAINED_NEIGHBORHOOD: _kernel_py.CLASS_CONSTRAINED,
    ModelClass.RAW_NEIGHBORHOOD: _kernel_py.CLASS_RAW,
    ModelClass.KRIPKE_ALL: _kernel_py.CLASS_KRIPKE_ALL,
    ModelClass.KRIPKE_EQUIVALENCE: _kernel_py.CLASS_KRIPKE_EQUIV,
    ModelClass.UNIVERSAL: _kernel_py.CLASS_UNIVERSAL,
}

_NEIGHBORHOOD = (ModelClass.RAW_NEIGHBORHOOD, ModelClass.CONSTRAINED_NEIGHBORHOOD)


@dataclass(frozen=True)
class SearchBounds:
    model_class: ModelClass
    max_worlds: int
    atoms: tuple[int, ...] = ()

    def __post_init__(self):
        if self.max_worlds < 1:
            raise BoundsExceededError("max_worlds must be at least 1")
        cap = WORLD_CAPS[self.model_class]
        if self.max_worlds > cap:
            raise BoundsExceededError(
                f"{self.model_class.value} enumeration is capped at {cap} worlds"
            )
        object.__setattr__(self, "atoms", tuple(sorted(set(self.atoms))))
        if self.atoms and self.atoms[0] < 0:
            raise ValueError("atom indices must be non-negative")

    def to_data(self) -> dict:
        return {"max_worlds": self.max_worlds, "atoms": list(self.atoms)}


class Verdict(Enum):
    COUNTERMODEL_FOUND = "CountermodelFound"
    EXHAUSTED_VALID = "ExhaustedValid"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SearchOutcome:
    verdict: Verdict
    models_checked: int
    countermodel: Model | None = None
    world: int | None = None


# ---------------------------------------------------------------------------
# Formula compilation


def _require_class_dialect(f: Formula, model_class: ModelClass) -> None:
    if model_class in _NEIGHBORHOOD:
        ops = {Diamond, Nabla}
        label = "box/classical"
    else:
        ops = {Nabla}
        label = "S5/classical"
    extra = modal_operators(f) & ops
    if extra:
        names = ", ".join(sorted(t.__name__ for t in extra))
        raise DialectError(
            f"{names} not interpreted over the {model_class.value} class ({label} formulas only)"
        )


def compile_program(f: Formula, atom_slots: dict[int, int]) -> list[int]:
    """Flatten a formula into the kernels' postfix opcode list.

    Atoms without a slot (outside the search bounds) denote the empty set.
    """
    prog: list[int] = []

    def walk(g: Formula) -> None:
        match g:
            case Atom(i):
                if i in atom_slots:
                    prog.extend((_kernel_py.OP_ATOM, atom_slots[i]))
                else:
                    prog.extend((_kernel_py.OP_BOT, 0))
            case Top():
                prog.extend((_kernel_py.OP_TOP, 0))
            case Bottom():
                prog.extend((_kernel_py.OP_BOT, 0))
            case Not(x):
                walk(x)
                prog.extend((_kernel_py.OP_NOT, 0))
            case And(l, r):
                walk(l)
                walk(r)
                prog.extend((_kernel_py.OP_AND, 0))
            case Or(l, r):
                walk(l)
                walk(r)
                prog.extend((_kernel_py.OP_OR, 0))
            case Implies(l, r):
                walk(l)
                walk(r)
                prog.extend((_kernel_py.OP_IMP, 0))
            case Iff(l, r):
                walk(l)
                walk(r)
                prog.extend((_kernel_py.OP_IFF, 0))
            case Box(x):
                walk(x)
                prog.extend((_kernel_py.OP_BOX, 0))
            case Diamond(x):
                walk(x)
                prog.extend((_kernel_py.OP_DIA, 0))
            case _:
                raise DialectError(f"cannot compile {render(g)} for model search")

    walk(f)
    return prog


# ---------------------------------------------------------------------------
# Enumeration (object-level stream; order matches the kernels exactly)


def _neighborhood_from_struct(mc: ModelClass, n: int, struct, valuation) -> NeighborhoodModel:
    if mc is ModelClass.CONSTRAINED_NEIGHBORHOOD:
        families = tuple(
            tuple(x for x in range(1 << n) if x & core == core) for core in struct
        )
    else:
        families = tuple(
            tuple(x for x in range(1 << n) if (fam >> x) & 1) for fam in struct
        )
    return NeighborhoodModel(n, families, valuation)


def _model_from_struct(mc: ModelClass, n: int, struct, vmasks, atoms) -> Model:
    valuation = tuple(zip(atoms, vmasks))
    if mc in _NEIGHBORHOOD:
        return _neighborhood_from_struct(mc, n, struct, valuation)
    if mc is ModelClass.UNIVERSAL:
        return UniversalModel(n, valuation)
    return KripkeModel(n, struct, valuation)


def enumerate_models(bounds: SearchBounds):
    """Yield every model of the class up to the bounds, without duplicates,
    in the kernels' deterministic order."""
    class_id = _CLASS_ID[bounds.model_class]
    for n in range(1, bounds.max_worlds + 1):
        vrange = range(1 << n)
        for struct in _kernel_py.structures(class_id, n):
            for vmasks in product(vrange, repeat=len(bounds.atoms)):
                yield _model_from_struct(bounds.model_class, n, struct, vmasks, bounds.atoms)


# ---------------------------------------------------------------------------
# Countermodel search


def _revalidate(
    bounds: SearchBounds, model: Model, world: int, gamma: tuple[Formula, ...], f: Formula
) -> None:
    if bounds.model_class is ModelClass.CONSTRAINED_NEIGHBORHOOD:
        if not nm_check_conditions(model).all_hold:
            raise SearchInternalError("countermodel violates the (c)(h)(t)(n) conditions")
    elif bounds.model_class is ModelClass.KRIPKE_EQUIVALENCE:
        if not relation_properties(model).equivalence:
            raise SearchInternalError("countermodel relation is not an equivalence")
    for g in gamma:
        if not is_valid_in(model, g):
            raise SearchInternalError("countermodel does not globally validate the premises")
    if eval_model(model, world, f):
        raise SearchInternalError("countermodel fails to falsify the formula")


def _search(gamma: tuple[Formula, ...], f: Formula, bounds: SearchBounds) -> SearchOutcome:
    for g in (*gamma, f):
        _require_class_dialect(g, bounds.model_class)
    slots = {atom: i for i, atom in enumerate(bounds.atoms)}
    programs = [compile_program(g, slots) for g in (*gamma, f)]
    found, checked, n, struct, vmasks, world = _ACTIVE.run_search(
        _CLASS_ID[bounds.model_class], bounds.max_worlds, len(bounds.atoms), programs
    )
    if not found:
        return SearchOutcome(Verdict.EXHAUSTED_VALID, checked)
    model = _model_from_struct(bounds.model_class, n, tuple(struct), tuple(vmasks), bounds.atoms)
    _revalidate(bounds, model, world, gamma, f)
    return SearchOutcome(Verdict.COUNTERMODEL_FOUND, checked, model, world)


def find_countermodel(f: Formula, bounds: SearchBounds) -> SearchOutcome:
    """First model of the class falsifying ``f`` somewhere, or exhaustion.

    Valuations range over ``bounds.atoms`` only; other atoms denote the
    empty set.
    """
    return _search((), f, bounds)


def check_global_consequence(
    gamma: list[Formula] | tuple[Formula, ...], f: Formula, bounds: SearchBounds
) -> SearchOutcome:
    """Search for a model validating every member of ``gamma`` at all worlds
    while failing ``f`` at some world."""
    return _search(tuple(gamma), f, bounds)


K_FORMULA = parse("[](p0 -> p1) -> ([]p0 -> []p1)")


def run_k_experiment(bounds: SearchBounds) -> SearchOutcome:
    """Search the constrained class for a countermodel to the K schema.

    The verdict is an empirical finding about the bounded class; callers
    persist it through :func:`experiment_report`.
    """
    if bounds.model_class is not ModelClass.CONSTRAINED_NEIGHBORHOOD:
        raise ValueError("the K experiment runs on the constrained neighborhood class")
    return find_countermodel(K_FORMULA, bounds)


def sample_countermodel(
    f: Formula, bounds: SearchBounds, samples: int, seed: int
) -> SearchOutcome:
    """Seeded random search; the caps do not apply.  Returns the first
    falsifying sample or ``Inconclusive`` after ``samples`` draws."""
    for g in (f,):
        _require_class_dialect(g, bounds.model_class)
    rng = random.Random(seed)
    mc = bounds.model_class
    for i in range(1, samples + 1):
        n = rng.randint(1, bounds.max_worlds)
        vmasks = tuple(rng.randrange(1 << n) for _ in bounds.atoms)
        if mc is ModelClass.CONSTRAINED_NEIGHBORHOOD:
            struct = tuple(rng.randrange(1 << n) | (1 << w) for w in range(n))
        elif mc is ModelClass.RAW_NEIGHBORHOOD:
            struct = tuple(rng.randrange(1 << (1 << n)) for _ in range(n))
        elif mc is ModelClass.KRIPKE_ALL:
            struct = tuple(rng.randrange(1 << n) for _ in range(n))
        elif mc is ModelClass.KRIPKE_EQUIVALENCE:
            blocks = [rng.randrange(n) for _ in range(n)]
            struct = tuple(
                sum(1 << z for z in range(n) if blocks[z] == blocks[w]) for w in range(n)
            )
        else:
            struct = ()
        model = _model_from_struct(mc, n, struct, vmasks, bounds.atoms)
        falsified = [w for w in range(n) if not eval_model(model, w, f)]
        if falsified:
            return SearchOutcome(Verdict.COUNTERMODEL_FOUND, i, model, falsified[0])
    return SearchOutcome(Verdict.INCONCLUSIVE, samples)


# ---------------------------------------------------------------------------
# Reports


def experiment_report(f: Formula, bounds: SearchBounds, outcome: SearchOutcome) -> dict:
    """The canonical report object for ``valid``-style runs."""
    report = {
        "formula": render(f),
        "class": bounds.model_class.value,
        "bounds": bounds.to_data(),
        "verdict": outcome.verdict.value,
        "models_checked": outcome.models_checked,
    }
    if outcome.countermodel is not None:
        report["countermodel"] = outcome.countermodel.to_data()
        report["world"] = outcome.world
    return report
