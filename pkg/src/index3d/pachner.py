"""Exponent-lattice maps for 3-2 and 2-0 moves, and index compatibility checks.

A 3-2 move replaces tetrahedra x, y, v of the larger triangulation (around a
degree-3 edge) with z, w of the smaller one. In terms of even generators

    Z   -> V'' X'     Z'  -> X'' Y'     Z'' -> Y'' V'
    W   -> X'' V'     W'  -> V'' Y'     W'' -> Y'' X'

and the new central edge of the larger side is X Y V. A 2-0 move inserts two
tetrahedra and copies every other exponent unchanged.

Move descriptor (JSON)::

    {
      "kind": "3-2",
      "source": "fig8.json",           paths relative to this file
      "target": "fig8_3tet.json",
      "removed_tets": [0, 1],          3-2: source tetrahedra (z, w)
      "inserted_tets": [0, 1, 2],      3-2: target (x, y, v); 2-0: the two new ones
      "fixed_map": [],                 [source, target] pairs for the rest
      "slot_permutations": {}          optional: target tet -> column order
    }
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import triangulation as tri_mod
from .errors import InvalidDescriptor, LengthMismatch, ParseError, SymplecticNotPreserved
from .indexer import SummationOptions, index_element
from .qtorus import ExponentVector, TorusElement, omega
from .triangulation import Triangulation

A, B, C = 0, 1, 2
_SLOT_NAMES = ("", "'", "''")

# 3-2 images: source (tet, slot) -> list of target (tet role, slot); roles x=0, y=1, v=2.
_THREE_TWO = {
    (0, A): [(2, C), (0, B)],
    (0, B): [(0, C), (1, B)],
    (0, C): [(1, C), (2, B)],
    (1, A): [(0, C), (2, B)],
    (1, B): [(2, C), (1, B)],
    (1, C): [(1, C), (0, B)],
}


@dataclass
class MoveDescriptor:
    kind: str
    source: Triangulation
    target: Triangulation
    removed_tets: tuple[int, ...]
    inserted_tets: tuple[int, ...]
    fixed_map: tuple[tuple[int, int], ...]
    slot_permutations: dict[int, tuple[int, int, int]] = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        ns, nt = self.source.num_tetrahedra, self.target.num_tetrahedra
        if self.kind == "3-2":
            want = (2, 3)
        elif self.kind == "2-0":
            want = (0, 2)
        else:
            raise InvalidDescriptor(f"unknown move kind {self.kind!r}")
        if (len(self.removed_tets), len(self.inserted_tets)) != want:
            raise InvalidDescriptor(
                f"{self.kind} move needs {want[0]} removed and {want[1]} inserted tetrahedra"
            )
        src = list(self.removed_tets) + [s for s, _ in self.fixed_map]
        tgt = list(self.inserted_tets) + [t for _, t in self.fixed_map]
        if sorted(src) != list(range(ns)):
            raise InvalidDescriptor(f"source tetrahedra {src} are not a disjoint cover of 0..{ns - 1}")
        if sorted(tgt) != list(range(nt)):
            raise InvalidDescriptor(f"target tetrahedra {tgt} are not a disjoint cover of 0..{nt - 1}")
        for t, p in self.slot_permutations.items():
            if not 0 <= t < nt or sorted(p) != [0, 1, 2]:
                raise InvalidDescriptor(f"bad slot permutation {p} for target tetrahedron {t}")


def _index_list(doc: dict, key: str) -> tuple[int, ...]:
    v = doc.get(key, [])
    if not isinstance(v, list) or not all(isinstance(i, int) for i in v):
        raise InvalidDescriptor(f"{key} must be a list of tetrahedron indices")
    return tuple(v)


def descriptor_from_dict(doc: dict, base: Path | None = None) -> MoveDescriptor:
    if not isinstance(doc, dict):
        raise InvalidDescriptor("move descriptor must be a JSON object")
    base = base or Path(".")
    try:
        kind = doc["kind"]
        source = tri_mod.load(base / doc["source"])
        target = tri_mod.load(base / doc["target"])
    except KeyError as err:
        raise InvalidDescriptor(f"missing field {err.args[0]!r}") from None
    fixed = doc.get("fixed_map", [])
    if not isinstance(fixed, list) or not all(isinstance(p, list) and len(p) == 2 for p in fixed):
        raise InvalidDescriptor("fixed_map must be a list of [source, target] pairs")
    perms = {int(t): tuple(p) for t, p in doc.get("slot_permutations", {}).items()}
    return MoveDescriptor(
        kind, source, target, _index_list(doc, "removed_tets"), _index_list(doc, "inserted_tets"),
        tuple((int(s), int(t)) for s, t in fixed), perms,
    )


def load_descriptor(path: str | Path) -> MoveDescriptor:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}") from None
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}: invalid JSON ({err.msg})") from None
    return descriptor_from_dict(doc, path.parent)


@dataclass(frozen=True)
class MoveMap:
    source_dim: int
    target_dim: int
    images: tuple[ExponentVector, ...]

    def __call__(self, k: Sequence[int]) -> ExponentVector:
        if len(k) != self.source_dim:
            raise LengthMismatch(f"vector of length {len(k)}, move map expects {self.source_dim}")
        out = [0] * self.target_dim
        for x, img in zip(k, self.images):
            if x:
                for i, y in enumerate(img):
                    out[i] += x * y
        return tuple(out)


def _column(desc: MoveDescriptor, tet: int, slot: int) -> int:
    p = desc.slot_permutations.get(tet, (0, 1, 2))
    return 3 * tet + p[slot]


def _basis_name(i: int) -> str:
    return f"Z{_SLOT_NAMES[i % 3]}_{i // 3}"


def build_move_map(desc: MoveDescriptor) -> MoveMap:
    ns, nt = desc.source.num_tetrahedra, desc.target.num_tetrahedra
    images = [[0] * (3 * nt) for _ in range(3 * ns)]
    for s, t in desc.fixed_map:
        for slot in range(3):
            images[3 * s + slot][_column(desc, t, slot)] += 1
    if desc.kind == "3-2":
        for (role, slot), targets in _THREE_TWO.items():
            row = images[3 * desc.removed_tets[role] + slot]
            for trole, tslot in targets:
                row[_column(desc, desc.inserted_tets[trole], tslot)] += 1
    move = MoveMap(3 * ns, 3 * nt, tuple(tuple(r) for r in images))
    basis = [tuple(int(i == j) for j in range(3 * ns)) for i in range(3 * ns)]
    for i in range(3 * ns):
        for j in range(i + 1, 3 * ns):
            src = omega(basis[i], basis[j])
            tgt = omega(move.images[i], move.images[j])
            if src != tgt:
                raise SymplecticNotPreserved(
                    f"omega({_basis_name(i)}, {_basis_name(j)}) = {src} on the source "
                    f"but {tgt} on the target"
                )
    return move


def apply_move(move: MoveMap, u: TorusElement) -> TorusElement:
    if 3 * u.ntets != move.source_dim:
        raise LengthMismatch(f"element on {u.ntets} tetrahedra, move map expects {move.source_dim // 3}")
    return TorusElement(move.target_dim // 3, {move(k): c for k, c in u})


@dataclass
class CompatibilityCheck:
    label: str
    passed: bool
    first_difference: int | None
    source_series: object
    target_series: object


def verify_index_compatibility(
    desc: MoveDescriptor, samples: Sequence[tuple[str, TorusElement]], opts: SummationOptions
) -> list[CompatibilityCheck]:
    """index_source(u) == index_target(apply_move(u)) to ``opts.order`` for each labelled sample."""
    move = build_move_map(desc)
    out = []
    for label, u in samples:
        lhs = index_element(desc.source, u, opts)
        rhs = index_element(desc.target, apply_move(move, u), opts)
        diff = lhs.first_difference(rhs, opts.order)
        out.append(CompatibilityCheck(label, diff is None, diff, lhs, rhs))
    return out
