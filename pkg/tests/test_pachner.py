import dataclasses
import json

import pytest
from hypothesis import given, strategies as st

from conftest import KB_EXPR
from index3d.cli import fixture_path
from index3d.errors import InvalidDescriptor, LengthMismatch, ParseError, SymplecticNotPreserved
from index3d.expr import parse_element
from index3d.indexer import SummationOptions
from index3d.pachner import (
    MoveDescriptor,
    apply_move,
    build_move_map,
    descriptor_from_dict,
    load_descriptor,
    verify_index_compatibility,
)
from index3d.qtorus import TorusElement, omega
from index3d.triangulation import Triangulation


@pytest.fixture(scope="module")
def move():
    return load_descriptor(fixture_path("fig8_move.json"))


def _dummy(n):
    zero = (0,) * (3 * n)
    return Triangulation(f"dummy{n}", n, 1, (zero,) * n, (zero,), (zero,), ())


def test_descriptor_loads(move):
    assert move.kind == "3-2"
    assert move.source.num_tetrahedra == 2 and move.target.num_tetrahedra == 3


def test_all_generator_pairs_preserve_omega(move):
    m = build_move_map(move)
    basis = [tuple(int(i == j) for j in range(6)) for i in range(6)]
    pairs = 0
    for x in basis:
        for y in basis:
            assert omega(m(x), m(y)) == omega(x, y)
            pairs += 1
    assert pairs == 36


def test_z_unit_image(move):
    m = build_move_map(move)
    z, _ = move.removed_tets
    x, _, v = move.inserted_tets
    image = m(tuple(int(i == 3 * z) for i in range(6)))
    support = {i for i, a in enumerate(image) if a}
    assert support == {3 * v + 2, 3 * x + 1}


def test_unit_and_kb_images(move):
    m = build_move_map(move)
    assert apply_move(m, TorusElement.unit(2)) == TorusElement.unit(3)
    image = apply_move(m, parse_element(KB_EXPR, 2))
    assert image.ntets == 3 and len(image) == 3


vec6 = st.lists(st.integers(-3, 3), min_size=6, max_size=6).map(tuple)


@given(vec6, vec6)
def test_apply_move_respects_products(x, y):
    m = build_move_map(load_descriptor(fixture_path("fig8_move.json")))
    u, v = TorusElement.weyl(x), TorusElement.weyl(y)
    assert apply_move(m, u * v) == apply_move(m, u) * apply_move(m, v)


def test_compatibility(move):
    samples = [("1", TorusElement.unit(2)), ("K_b", parse_element(KB_EXPR, 2))]
    for check in verify_index_compatibility(move, samples, SummationOptions(10)):
        assert check.passed, check.label


def test_odd_slot_permutation_breaks_omega(move):
    bad = dataclasses.replace(move, slot_permutations={move.inserted_tets[0]: (0, 2, 1)})
    with pytest.raises(SymplecticNotPreserved, match="omega"):
        build_move_map(bad)


def test_swapped_target_tetrahedra_fail_compatibility(move):
    # x <-> y keeps omega (the map only sees the b and c slots symmetrically)
    # but no longer matches the geometry of the move
    x, y, v = move.inserted_tets
    bad = dataclasses.replace(move, inserted_tets=(y, x, v))
    build_move_map(bad)
    checks = verify_index_compatibility(bad, [("K_b", parse_element(KB_EXPR, 2))], SummationOptions(10))
    assert not checks[0].passed


def test_two_zero_map_inserts_zero_blocks():
    desc = MoveDescriptor("2-0", _dummy(2), _dummy(4), (), (1, 3), ((0, 0), (1, 2)))
    m = build_move_map(desc)
    u = TorusElement.weyl((1, -2, 3, 4, 0, -1))
    assert dict(apply_move(m, u)) == {(1, -2, 3, 0, 0, 0, 4, 0, -1, 0, 0, 0): u.terms[(1, -2, 3, 4, 0, -1)]}
    with pytest.raises(LengthMismatch):
        apply_move(m, TorusElement.unit(3))


@pytest.mark.parametrize(
    "kind,removed,inserted,fixed",
    [
        ("4-4", (0, 1), (0, 1, 2), ()),
        ("3-2", (0,), (0, 1, 2), ()),
        ("3-2", (0, 0), (0, 1, 2), ()),
        ("2-0", (), (1, 3), ((0, 0), (1, 1))),
        ("2-0", (), (1, 5), ((0, 0), (1, 2))),
    ],
)
def test_invalid_descriptors(kind, removed, inserted, fixed):
    ns, nt = (2, 3) if kind != "2-0" else (2, 4)
    with pytest.raises(InvalidDescriptor):
        MoveDescriptor(kind, _dummy(ns), _dummy(nt), removed, inserted, fixed)


def test_descriptor_file_errors(tmp_path):
    with pytest.raises(ParseError):
        load_descriptor(tmp_path / "missing.json")
    path = tmp_path / "move.json"
    path.write_text(json.dumps({"kind": "3-2"}))
    with pytest.raises(InvalidDescriptor):
        load_descriptor(path)
    with pytest.raises(InvalidDescriptor):
        descriptor_from_dict([])
