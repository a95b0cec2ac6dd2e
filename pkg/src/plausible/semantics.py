"""Finite models and truth evaluation.

Three model families are supported: neighborhood models (box quantifies
over a per-world family of world-sets), Kripke models (box quantifies over
an accessibility relation), and universal models (box quantifies over all
worlds).  Worlds are dense integers ``0..n-1`` and world-sets are bitmasks,
which keeps set algebra fast and serialization canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

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
    Not,
    Or,
    Top,
    render,
)


class ModelFormatError(ValueError):
    """Malformed model data (bad JSON shape, out-of-range worlds, ...)."""


class WorldRangeError(ValueError):
    """A world index outside ``0..worlds-1`` was used."""


def mask_of(worlds: Iterable[int], n: int) -> int:
    """Bitmask for a set of world indices, validated against ``n`` worlds."""
    mask = 0
    for w in worlds:
        if not 0 <= w < n:
            raise ModelFormatError(f"world {w} out of range for {n} worlds")
        mask |= 1 << w
    return mask


def worlds_of(mask: int) -> tuple[int, ...]:
    """Ascending world indices of a bitmask."""
    return tuple(w for w in range(mask.bit_length()) if (mask >> w) & 1)


def _check_world(n: int, w: int) -> None:
    if not 0 <= w < n:
        raise WorldRangeError(f"world {w} out of range for {n} worlds")


def _normalize_valuation(worlds: int, valuation) -> tuple[tuple[int, int], ...]:
    full = (1 << worlds) - 1
    pairs = sorted(dict(valuation).items())
    for atom, mask in pairs:
        if atom < 0:
            raise ModelFormatError(f"negative atom index {atom}")
        if mask & ~full:
            raise ModelFormatError(f"valuation of p{atom} exceeds the world universe")
    return tuple(pairs)


def _valuation_to_data(valuation: tuple[tuple[int, int], ...]) -> dict:
    return {f"p{atom}": list(worlds_of(mask)) for atom, mask in valuation}


def _valuation_from_data(data, worlds: int) -> tuple[tuple[int, int], ...]:
    if not isinstance(data, dict):
        raise ModelFormatError('"V" must be an object mapping atoms to world arrays')
    pairs = {}
    for key, members in data.items():
        if not (isinstance(key, str) and key.startswith("p") and key[1:].isdigit()):
            raise ModelFormatError(f"bad atom name {key!r}")
        pairs[int(key[1:])] = mask_of(members, worlds)
    return _normalize_valuation(worlds, pairs)


@dataclass(frozen=True)
class NeighborhoodModel:
    """Model ``(worlds, families, valuation)`` where ``families[w]`` is the
    ascending tuple of neighborhood bitmasks of world ``w``."""

    worlds: int
    families: tuple[tuple[int, ...], ...]
    valuation: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.worlds < 1:
            raise ModelFormatError("a model needs at least one world")
        if len(self.families) != self.worlds:
            raise ModelFormatError("one neighborhood family per world is required")
        full = self.full_mask
        families = []
        for fam in self.families:
            fam = tuple(sorted(set(fam)))
            if fam and (fam[0] < 0 or fam[-1] & ~full):
                raise ModelFormatError("neighborhood outside the world universe")
            families.append(fam)
        object.__setattr__(self, "families", tuple(families))
        object.__setattr__(self, "valuation", _normalize_valuation(self.worlds, self.valuation))

    @property
    def full_mask(self) -> int:
        return (1 << self.worlds) - 1

    def family(self, w: int) -> tuple[int, ...]:
        _check_world(self.worlds, w)
        return self.families[w]

    def atom_mask(self, atom: int) -> int:
        for a, mask in self.valuation:
            if a == atom:
                return mask
        return 0

    @classmethod
    def from_sets(cls, worlds: int, s: Mapping[int, Iterable[Iterable[int]]],
                  v: Mapping[int, Iterable[int]] | None = None) -> "NeighborhoodModel":
        families = tuple(
            tuple(mask_of(x, worlds) for x in s.get(w, ())) for w in range(worlds)
        )
        valuation = {a: mask_of(ws, worlds) for a, ws in (v or {}).items()}
        return cls(worlds, families, tuple(valuation.items()))

    def to_data(self) -> dict:
        return {
            "worlds": self.worlds,
            "S": {
                str(w): [list(worlds_of(x)) for x in self.families[w]]
                for w in range(self.worlds)
            },
            "V": _valuation_to_data(self.valuation),
        }

    @classmethod
    def from_data(cls, data: dict) -> "NeighborhoodModel":
        worlds = _read_worlds(data)
        s = data.get("S")
        if not isinstance(s, dict):
            raise ModelFormatError('neighborhood model requires an "S" object')
        families = []
        for w in range(worlds):
            fam = s.get(str(w), [])
            if not isinstance(fam, list):
                raise ModelFormatError(f'"S" entry for world {w} must be an array of arrays')
            families.append(tuple(mask_of(x, worlds) for x in fam))
        return cls(worlds, tuple(families), _valuation_from_data(data.get("V", {}), worlds))


@dataclass(frozen=True)
class KripkeModel:
    """Model ``(worlds, rows, valuation)``; ``rows[w]`` is the bitmask of
    worlds accessible from ``w``."""

    worlds: int
    rows: tuple[int, ...]
    valuation: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.worlds < 1:
            raise ModelFormatError("a model needs at least one world")
        if len(self.rows) != self.worlds:
            raise ModelFormatError("one accessibility row per world is required")
        full = self.full_mask
        for row in self.rows:
            if row < 0 or row & ~full:
                raise ModelFormatError("accessibility row outside the world universe")
        object.__setattr__(self, "valuation", _normalize_valuation(self.worlds, self.valuation))

    @property
    def full_mask(self) -> int:
        return (1 << self.worlds) - 1

    def atom_mask(self, atom: int) -> int:
        for a, mask in self.valuation:
            if a == atom:
                return mask
        return 0

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (w, z) for w in range(self.worlds) for z in worlds_of(self.rows[w])
        )

    @classmethod
    def from_pairs(cls, worlds: int, pairs: Iterable[tuple[int, int]],
                   v: Mapping[int, Iterable[int]] | None = None) -> "KripkeModel":
        rows = [0] * worlds
        for w, z in pairs:
            if not (0 <= w < worlds and 0 <= z < worlds):
                raise ModelFormatError(f"relation pair ({w}, {z}) out of range")
            rows[w] |= 1 << z
        valuation = {a: mask_of(ws, worlds) for a, ws in (v or {}).items()}
        return cls(worlds, tuple(rows), tuple(valuation.items()))

    def to_data(self) -> dict:
        return {
            "worlds": self.worlds,
            "R": [list(p) for p in self.pairs()],
            "V": _valuation_to_data(self.valuation),
        }

    @classmethod
    def from_data(cls, data: dict) -> "KripkeModel":
        worlds = _read_worlds(data)
        r = data.get("R")
        if not isinstance(r, list):
            raise ModelFormatError('Kripke model requires an "R" array of pairs')
        pairs = []
        for item in r:
            if not (isinstance(item, list) and len(item) == 2):
                raise ModelFormatError(f'bad "R" entry {item!r}')
            pairs.append((item[0], item[1]))
        rows = [0] * worlds
        for w, z in pairs:
            if not (0 <= w < worlds and 0 <= z < worlds):
                raise ModelFormatError(f"relation pair ({w}, {z}) out of range")
            rows[w] |= 1 << z
        return cls(worlds, tuple(rows), _valuation_from_data(data.get("V", {}), worlds))


@dataclass(frozen=True)
class UniversalModel:
    """Model where box and diamond quantify over all worlds."""

    worlds: int
    valuation: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.worlds < 1:
            raise ModelFormatError("a model needs at least one world")
        object.__setattr__(self, "valuation", _normalize_valuation(self.worlds, self.valuation))

    @property
    def full_mask(self) -> int:
        return (1 << self.worlds) - 1

    def atom_mask(self, atom: int) -> int:
        for a, mask in self.valuation:
            if a == atom:
                return mask
        return 0

    @classmethod
    def from_sets(cls, worlds: int, v: Mapping[int, Iterable[int]] | None = None) -> "UniversalModel":
        valuation = {a: mask_of(ws, worlds) for a, ws in (v or {}).items()}
        return cls(worlds, tuple(valuation.items()))

    def to_data(self) -> dict:
        return {"worlds": self.worlds, "V": _valuation_to_data(self.valuation)}

    @classmethod
    def from_data(cls, data: dict) -> "UniversalModel":
        worlds = _read_worlds(data)
        return cls(worlds, _valuation_from_data(data.get("V", {}), worlds))


Model = NeighborhoodModel | KripkeModel | UniversalModel


def _read_worlds(data) -> int:
    if not isinstance(data, dict):
        raise ModelFormatError("model file must contain a JSON object")
    worlds = data.get("worlds")
    if not isinstance(worlds, int) or worlds < 1:
        raise ModelFormatError('"worlds" must be a positive integer')
    return worlds


def model_from_data(data: dict) -> Model:
    """Build the right model type from JSON data: ``S`` selects neighborhood
    models, ``R`` Kripke models, neither a universal model."""
    if isinstance(data, dict) and "S" in data:
        return NeighborhoodModel.from_data(data)
    if isinstance(data, dict) and "R" in data:
        return KripkeModel.from_data(data)
    return UniversalModel.from_data(data)


# ---------------------------------------------------------------------------
# Truth evaluation


def _eval_mask(f: Formula, full: int, atom_mask, box_mask, diamond_mask) -> int:
    match f:
        case Atom(i):
            return atom_mask(i)
        case Top():
            return full
        case Bottom():
            return 0
        case Not(g):
            return full ^ _eval_mask(g, full, atom_mask, box_mask, diamond_mask)
        case And(l, r):
            return _eval_mask(l, full, atom_mask, box_mask, diamond_mask) & _eval_mask(
                r, full, atom_mask, box_mask, diamond_mask
            )
        case Or(l, r):
            return _eval_mask(l, full, atom_mask, box_mask, diamond_mask) | _eval_mask(
                r, full, atom_mask, box_mask, diamond_mask
            )
        case Implies(l, r):
            a = _eval_mask(l, full, atom_mask, box_mask, diamond_mask)
            b = _eval_mask(r, full, atom_mask, box_mask, diamond_mask)
            return (a ^ full) | b
        case Iff(l, r):
            a = _eval_mask(l, full, atom_mask, box_mask, diamond_mask)
            b = _eval_mask(r, full, atom_mask, box_mask, diamond_mask)
            return (a ^ b) ^ full
        case Box(g):
            return box_mask(_eval_mask(g, full, atom_mask, box_mask, diamond_mask))
        case Diamond(g):
            return diamond_mask(_eval_mask(g, full, atom_mask, box_mask, diamond_mask))
        case _:
            raise DialectError(f"operator not supported by this model class: {render(f)}")


def nm_truth_mask(m: NeighborhoodModel, f: Formula) -> int:
    """Truth set of ``f`` as a bitmask; box holds where the truth set of the
    operand belongs to the world's neighborhood family."""

    def box(ts: int) -> int:
        out = 0
        for w in range(m.worlds):
            if ts in m.families[w]:
                out |= 1 << w
        return out

    def diamond(ts: int) -> int:
        raise DialectError("diamond is not interpreted in neighborhood models")

    return _eval_mask(f, m.full_mask, m.atom_mask, box, diamond)


def nm_eval(m: NeighborhoodModel, w: int, f: Formula) -> bool:
    _check_world(m.worlds, w)
    return bool((nm_truth_mask(m, f) >> w) & 1)


def truth_set(m: NeighborhoodModel, f: Formula) -> frozenset[int]:
    return frozenset(worlds_of(nm_truth_mask(m, f)))


def nm_is_valid(m: NeighborhoodModel, f: Formula) -> bool:
    return nm_truth_mask(m, f) == m.full_mask


def km_truth_mask(m: KripkeModel, f: Formula) -> int:
    def box(ts: int) -> int:
        out = 0
        for w in range(m.worlds):
            if m.rows[w] & ~ts == 0:
                out |= 1 << w
        return out

    def diamond(ts: int) -> int:
        out = 0
        for w in range(m.worlds):
            if m.rows[w] & ts:
                out |= 1 << w
        return out

    return _eval_mask(f, m.full_mask, m.atom_mask, box, diamond)


def km_eval(m: KripkeModel, w: int, f: Formula) -> bool:
    _check_world(m.worlds, w)
    return bool((km_truth_mask(m, f) >> w) & 1)


def km_is_valid(m: KripkeModel, f: Formula) -> bool:
    return km_truth_mask(m, f) == m.full_mask


def um_truth_mask(m: UniversalModel, f: Formula) -> int:
    full = m.full_mask

    def box(ts: int) -> int:
        return full if ts == full else 0

    def diamond(ts: int) -> int:
        return full if ts else 0

    return _eval_mask(f, full, m.atom_mask, box, diamond)


def um_eval(m: UniversalModel, w: int, f: Formula) -> bool:
    _check_world(m.worlds, w)
    return bool((um_truth_mask(m, f) >> w) & 1)


def um_is_valid(m: UniversalModel, f: Formula) -> bool:
    return um_truth_mask(m, f) == m.full_mask


def eval_model(m: Model, w: int, f: Formula) -> bool:
    if isinstance(m, NeighborhoodModel):
        return nm_eval(m, w, f)
    if isinstance(m, KripkeModel):
        return km_eval(m, w, f)
    return um_eval(m, w, f)


def is_valid_in(m: Model, f: Formula) -> bool:
    if isinstance(m, NeighborhoodModel):
        return nm_is_valid(m, f)
    if isinstance(m, KripkeModel):
        return km_is_valid(m, f)
    return um_is_valid(m, f)


# ---------------------------------------------------------------------------
# Frame conditions, supplementation, relation properties


@dataclass(frozen=True)
class ConditionReport:
    """Which of the four neighborhood conditions hold, with the first witness
    of each failure (witness sets are world bitmasks)."""

    c_holds: bool
    h_holds: bool
    t_holds: bool
    n_holds: bool
    c_witness: tuple[int, int, int] | None = None  # (world, X, Y), X∩Y missing
    h_witness: tuple[int, int, int] | None = None  # (world, X, Y), X∪Y missing
    t_witness: tuple[int, int] | None = None       # (world, X), world not in X
    n_witness: int | None = None                   # world whose family misses W

    @property
    def all_hold(self) -> bool:
        return self.c_holds and self.h_holds and self.t_holds and self.n_holds

    @property
    def chn_hold(self) -> bool:
        return self.c_holds and self.h_holds and self.n_holds

    def to_data(self) -> dict:
        failures: dict = {}
        if self.c_witness is not None:
            w, x, y = self.c_witness
            failures["c"] = {"world": w, "X": list(worlds_of(x)), "Y": list(worlds_of(y))}
        if self.h_witness is not None:
            w, x, y = self.h_witness
            failures["h"] = {"world": w, "X": list(worlds_of(x)), "Y": list(worlds_of(y))}
        if self.t_witness is not None:
            w, x = self.t_witness
            failures["t"] = {"world": w, "X": list(worlds_of(x))}
        if self.n_witness is not None:
            failures["n"] = {"world": self.n_witness}
        return {
            "c": self.c_holds,
            "h": self.h_holds,
            "t": self.t_holds,
            "n": self.n_holds,
            "failures": failures,
        }


def nm_check_conditions(m: NeighborhoodModel) -> ConditionReport:
    """Exhaustively check conditions (c), (h), (t), (n).

    (h) is checked in its literal reading: for arbitrary subsets X, Y of the
    universe, membership of either in S(w) forces membership of X∪Y.
    """
    full = m.full_mask
    c_witness = h_witness = t_witness = n_witness = None

    for w in range(m.worlds):
        fam = m.families[w]
        if c_witness is None:
            for x in fam:
                for y in fam:
                    if x & y not in fam:
                        c_witness = (w, x, y)
                        break
                if c_witness is not None:
                    break
        if h_witness is None:
            for x in range(full + 1):
                x_in = x in fam
                for y in range(full + 1):
                    if (x_in or y in fam) and (x | y) not in fam:
                        h_witness = (w, x, y)
                        break
                if h_witness is not None:
                    break
        if t_witness is None:
            for x in fam:
                if not (x >> w) & 1:
                    t_witness = (w, x)
                    break
        if n_witness is None and full not in fam:
            n_witness = w

    return ConditionReport(
        c_holds=c_witness is None,
        h_holds=h_witness is None,
        t_holds=t_witness is None,
        n_holds=n_witness is None,
        c_witness=c_witness,
        h_witness=h_witness,
        t_witness=t_witness,
        n_witness=n_witness,
    )


def supplement(m: NeighborhoodModel) -> NeighborhoodModel:
    """Close every family under supersets: S'(w) = {X : some Y in S(w), Y ⊆ X}."""
    full = m.full_mask
    families = []
    for w in range(m.worlds):
        fam = m.families[w]
        closed = tuple(
            x for x in range(full + 1) if any(y & ~x == 0 for y in fam)
        )
        families.append(closed)
    return NeighborhoodModel(m.worlds, tuple(families), m.valuation)


@dataclass(frozen=True)
class RelationProperties:
    reflexive: bool
    euclidean: bool
    symmetric: bool
    transitive: bool
    equivalence: bool

    def to_data(self) -> dict:
        return {
            "reflexive": self.reflexive,
            "euclidean": self.euclidean,
            "symmetric": self.symmetric,
            "transitive": self.transitive,
            "equivalence": self.equivalence,
        }


def relation_properties(m: KripkeModel) -> RelationProperties:
    """Exhaustive check of relation properties.

    ``equivalence`` means reflexive and euclidean (which over non-empty
    frames coincides with the classical three-property definition).
    """
    n = m.worlds
    rows = m.rows
    reflexive = all((rows[w] >> w) & 1 for w in range(n))
    euclidean = all(
        rows[b] & rows[a] == rows[a]
        for a in range(n)
        for b in worlds_of(rows[a])
    )
    symmetric = all(
        (rows[b] >> a) & 1 for a in range(n) for b in worlds_of(rows[a])
    )
    transitive = all(
        rows[a] & rows[b] == rows[b]
        for a in range(n)
        for b in worlds_of(rows[a])
    )
    return RelationProperties(
        reflexive=reflexive,
        euclidean=euclidean,
        symmetric=symmetric,
        transitive=transitive,
        equivalence=reflexive and euclidean,
    )
