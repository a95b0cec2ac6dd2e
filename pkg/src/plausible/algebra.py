"""Finite plausibility algebras over powerset carriers.

A plausibility algebra is a Boolean algebra with a unary operator obeying

    (a1)  #a ∧ #b ≤ #(a ∧ b)
    (a2)  #a ≤ #(a ∨ b)
    (a3)  #a ≤ a
    (a4)  #1 = 1

Every finite Boolean algebra is a powerset algebra, so carriers here are
the subsets of a k-element base set, encoded as bitmasks 0..2^k-1 with
meet/join/complement as bitwise and/or/xor.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .syntax import (
    And,
    Atom,
    Bottom,
    DialectError,
    Formula,
    Iff,
    Implies,
    Nabla,
    Not,
    Or,
    Top,
    atoms_of,
    render,
)


class AlgebraFormatError(ValueError):
    """Malformed algebra data."""


class InvalidAlgebraError(ValueError):
    """An operation requiring a valid algebra received one failing a1-a4."""


@dataclass(frozen=True)
class FinitePlausibilityAlgebra:
    """Powerset Boolean algebra on ``base_size`` generators with a total
    unary operator given as ``sharp[element] = image``."""

    base_size: int
    sharp: tuple[int, ...]

    def __post_init__(self):
        if self.base_size < 1:
            raise AlgebraFormatError("base_size must be a positive integer")
        size = 1 << self.base_size
        if len(self.sharp) != size:
            raise AlgebraFormatError(f"sharp must list {size} images, got {len(self.sharp)}")
        for a, img in enumerate(self.sharp):
            if not 0 <= img < size:
                raise AlgebraFormatError(f"sharp({a}) = {img} is outside the carrier")

    @property
    def carrier_size(self) -> int:
        return 1 << self.base_size

    @property
    def unit(self) -> int:
        return self.carrier_size - 1

    def to_data(self) -> dict:
        return {"base": self.base_size, "sharp": list(self.sharp)}

    @classmethod
    def from_data(cls, data: dict) -> "FinitePlausibilityAlgebra":
        if not isinstance(data, dict):
            raise AlgebraFormatError("algebra file must contain a JSON object")
        base = data.get("base")
        sharp = data.get("sharp")
        if not isinstance(base, int):
            raise AlgebraFormatError('"base" must be an integer')
        if not (isinstance(sharp, list) and all(isinstance(x, int) for x in sharp)):
            raise AlgebraFormatError('"sharp" must be an array of integers')
        return cls(base, tuple(sharp))


def _leq(x: int, y: int) -> bool:
    return x & y == x


@dataclass(frozen=True)
class AlgebraReport:
    """Which of a1-a4 hold, with the first witness pair of each failure."""

    a1_holds: bool
    a2_holds: bool
    a3_holds: bool
    a4_holds: bool
    a1_witness: tuple[int, int] | None = None
    a2_witness: tuple[int, int] | None = None
    a3_witness: int | None = None
    a4_witness: int | None = None  # the offending image of the unit

    @property
    def valid(self) -> bool:
        return self.a1_holds and self.a2_holds and self.a3_holds and self.a4_holds

    def to_data(self) -> dict:
        failures: dict = {}
        if self.a1_witness is not None:
            failures["a1"] = {"a": self.a1_witness[0], "b": self.a1_witness[1]}
        if self.a2_witness is not None:
            failures["a2"] = {"a": self.a2_witness[0], "b": self.a2_witness[1]}
        if self.a3_witness is not None:
            failures["a3"] = {"a": self.a3_witness}
        if self.a4_witness is not None:
            failures["a4"] = {"sharp_unit": self.a4_witness}
        return {
            "a1": self.a1_holds,
            "a2": self.a2_holds,
            "a3": self.a3_holds,
            "a4": self.a4_holds,
            "failures": failures,
        }


def check_algebra(a: FinitePlausibilityAlgebra) -> AlgebraReport:
    """Exhaustively check a1-a4 over all element pairs."""
    s = a.sharp
    a1 = a2 = a3 = a4 = None
    for x, y in product(range(a.carrier_size), repeat=2):
        if a1 is None and not _leq(s[x] & s[y], s[x & y]):
            a1 = (x, y)
        if a2 is None and not _leq(s[x], s[x | y]):
            a2 = (x, y)
    for x in range(a.carrier_size):
        if not _leq(s[x], x):
            a3 = x
            break
    if s[a.unit] != a.unit:
        a4 = s[a.unit]
    return AlgebraReport(
        a1_holds=a1 is None,
        a2_holds=a2 is None,
        a3_holds=a3 is None,
        a4_holds=a4 is None,
        a1_witness=a1,
        a2_witness=a2,
        a3_witness=a3,
        a4_witness=a4,
    )


def _require_valid(a: FinitePlausibilityAlgebra) -> None:
    report = check_algebra(a)
    if not report.valid:
        failed = [name for name, ok in
                  (("a1", report.a1_holds), ("a2", report.a2_holds),
                   ("a3", report.a3_holds), ("a4", report.a4_holds)) if not ok]
        raise InvalidAlgebraError(f"algebra violates {', '.join(failed)}")


def plausible_elements(a: FinitePlausibilityAlgebra) -> frozenset[int]:
    """Nonzero fixed points of the operator; zero is excluded by definition
    even though its image is forced to zero."""
    _require_valid(a)
    return frozenset(x for x in range(1, a.carrier_size) if a.sharp[x] == x)


@dataclass(frozen=True)
class DerivedLawsReport:
    """The three derived laws, which must hold in every valid algebra; a
    failure here contradicts the axioms and is flagged as such."""

    law_i_holds: bool    # #a ≤ #(a ∨ b)
    law_ii_holds: bool   # a ≤ b  ⇒  #a ≤ #b
    law_iii_holds: bool  # #a ∨ #b ≤ #(a ∨ b)
    law_i_witness: tuple[int, int] | None = None
    law_ii_witness: tuple[int, int] | None = None
    law_iii_witness: tuple[int, int] | None = None

    @property
    def contradiction(self) -> bool:
        return not (self.law_i_holds and self.law_ii_holds and self.law_iii_holds)

    def to_data(self) -> dict:
        return {
            "i": self.law_i_holds,
            "ii": self.law_ii_holds,
            "iii": self.law_iii_holds,
            "contradiction": self.contradiction,
        }


def check_derived_laws(a: FinitePlausibilityAlgebra) -> DerivedLawsReport:
    _require_valid(a)
    s = a.sharp
    w1 = w2 = w3 = None
    for x, y in product(range(a.carrier_size), repeat=2):
        if w1 is None and not _leq(s[x], s[x | y]):
            w1 = (x, y)
        if w2 is None and _leq(x, y) and not _leq(s[x], s[y]):
            w2 = (x, y)
        if w3 is None and not _leq(s[x] | s[y], s[x | y]):
            w3 = (x, y)
    return DerivedLawsReport(
        law_i_holds=w1 is None,
        law_ii_holds=w2 is None,
        law_iii_holds=w3 is None,
        law_i_witness=w1,
        law_ii_witness=w2,
        law_iii_witness=w3,
    )


# ---------------------------------------------------------------------------
# Algebraic evaluation


def alg_eval(a: FinitePlausibilityAlgebra, assignment: dict[int, int], f: Formula) -> int:
    """Homomorphic evaluation of a nabla/classical formula to an element.

    Unassigned atoms evaluate to zero.
    """
    _require_valid(a)
    unit = a.unit

    def walk(g: Formula) -> int:
        match g:
            case Atom(i):
                return assignment.get(i, 0)
            case Top():
                return unit
            case Bottom():
                return 0
            case Not(x):
                return unit ^ walk(x)
            case And(l, r):
                return walk(l) & walk(r)
            case Or(l, r):
                return walk(l) | walk(r)
            case Implies(l, r):
                return (unit ^ walk(l)) | walk(r)
            case Iff(l, r):
                return unit ^ (walk(l) ^ walk(r))
            case Nabla(x):
                return a.sharp[walk(x)]
            case _:
                raise DialectError(f"algebras interpret nabla/classical formulas only: {render(g)}")

    return walk(f)


def alg_validates(a: FinitePlausibilityAlgebra, f: Formula) -> bool:
    """True iff every assignment of carrier elements to atoms yields the unit."""
    _require_valid(a)
    atoms = sorted(atoms_of(f))
    for values in product(range(a.carrier_size), repeat=len(atoms)):
        if alg_eval(a, dict(zip(atoms, values)), f) != a.unit:
            return False
    return True


# ---------------------------------------------------------------------------
# Exhaustive generation and the neighborhood-agreement experiment


def iter_sharp_maps(base_size: int):
    """All candidate operators on the 2^base_size carrier, in ascending
    lexicographic order of their image tables."""
    size = 1 << base_size
    for images in product(range(size), repeat=size):
        yield FinitePlausibilityAlgebra(base_size, images)


def iter_valid_algebras(base_size: int):
    for a in iter_sharp_maps(base_size):
        if check_algebra(a).valid:
            yield a


def agreement_report(formulas: list[Formula], max_base: int = 2, max_worlds: int = 3) -> dict:
    """Compare algebraic validity (all valid algebras with base ≤ max_base)
    against bounded neighborhood validity for nabla-dialect formulas.

    Adequacy predicts agreement; the report records the desk-scale evidence
    either way.
    """
    from .search import ModelClass, SearchBounds, Verdict, find_countermodel
    from .syntax import Dialect, translate

    algebras = [a for k in range(1, max_base + 1) for a in iter_valid_algebras(k)]
    rows = []
    agreements = 0
    for f in formulas:
        alg_valid = all(alg_validates(a, f) for a in algebras)
        boxed = translate(f, Dialect.NABLA, Dialect.BOX)
        bounds = SearchBounds(
            ModelClass.CONSTRAINED_NEIGHBORHOOD, max_worlds, tuple(sorted(atoms_of(f)))
        )
        outcome = find_countermodel(boxed, bounds)
        nm_valid = outcome.verdict is Verdict.EXHAUSTED_VALID
        agree = alg_valid == nm_valid
        agreements += agree
        rows.append(
            {
                "formula": render(f),
                "algebra_valid": alg_valid,
                "constrained_exhausted_valid": nm_valid,
                "agree": agree,
            }
        )
    return {
        "algebras": len(algebras),
        "max_base": max_base,
        "max_worlds": max_worlds,
        "formulas": rows,
        "agreements": agreements,
        "disagreements": len(rows) - agreements,
    }
