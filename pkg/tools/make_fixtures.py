"""Regenerate the bundled 4_1 fixtures from SnapPy and Regina.

Not part of the package: run it with an interpreter that has ``snappy`` and
``regina`` installed, e.g.

    /path/to/venv/bin/python tools/make_fixtures.py

The 2-tetrahedron triangulation comes from SnapPy's isosig; the 3-tetrahedron
one is Regina's 2-3 move on the first face that works, read back through
SnapPy for its gluing equations. The 3-tetrahedron data is then relabelled
(tetrahedron order and cyclic column rotations, both orientation preserving)
so that the degree-3 edge sits in the first column of each tetrahedron and
the 3-2 map in index3d.pachner applies with the identity slot layout. The
first aligned labelling whose index agrees with the 2-tetrahedron side on 1,
qtr(K_b) and a fixed set of random monomials is kept.
"""
import itertools
import json
import random
import re
import sys
from pathlib import Path

import regina
import snappy

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from index3d import triangulation as tri_mod  # noqa: E402
from index3d.expr import parse_element  # noqa: E402
from index3d.indexer import SummationOptions  # noqa: E402
from index3d.pachner import MoveDescriptor, verify_index_compatibility  # noqa: E402
from index3d.qtorus import TorusElement  # noqa: E402

OUT = ROOT / "src" / "index3d" / "fixtures"
ISOSIG = "cPcbbbiht_BaCB"
KB = "-q^(-1/2)*(Z1^-1*Zpp2 + Zpp1*Z2^-1 + Zpp1*Zpp2)"


def gluing_doc(M, name, source):
    n, r = M.num_tetrahedra(), M.num_cusps()
    rows = [list(map(int, row)) for row in M.gluing_equations()]
    return {
        "name": name,
        "num_tetrahedra": n,
        "num_cusps": r,
        "edge_rows": rows[:n],
        "meridian_rows": rows[n::2][:r],
        "longitude_rows": rows[n + 1 :: 2][:r],
        "one_efficient": True,
        "source": source,
    }


def relabel(doc, order, rots):
    def fix(row):
        out = []
        for t, rot in zip(order, rots):
            block = row[3 * t : 3 * t + 3]
            out.extend(block[rot:] + block[:rot])
        return out

    new = dict(doc)
    for key in ("edge_rows", "meridian_rows", "longitude_rows"):
        new[key] = [fix(r) for r in doc[key]]
    return new


def main():
    M = snappy.Manifold(ISOSIG)
    fig8 = gluing_doc(M, "4_1", f"SnapPy isosig {ISOSIG}")
    source = tri_mod.from_dict(fig8)

    rng = random.Random(7)
    samples = [("1", parse_element("1", 2)), ("K_b", parse_element(KB, 2))]
    samples += [(f"random {i}", TorusElement.weyl([rng.randint(-1, 1) for _ in range(6)])) for i in range(6)]
    opts = SummationOptions(8)
    central = [1, 0, 0] * 3
    T = regina.Triangulation3(M._to_string())
    for face in range(T.countTriangles()):
        T3 = regina.Triangulation3(T)
        if not T3.pachner(T3.triangle(face), True, True):
            continue
        N = snappy.Manifold(T3.snapPea())
        assert N.num_tetrahedra() == 3 and N.is_isometric_to(M)
        raw = gluing_doc(N, "4_1 (3 tetrahedra)", f"Regina 2-3 move on face {face} of {ISOSIG}, via SnapPy")
        for order in itertools.permutations(range(3)):
            for rots in itertools.product(range(3), repeat=3):
                doc = relabel(raw, order, rots)
                if central not in doc["edge_rows"]:
                    continue
                target = tri_mod.from_dict(doc)
                for removed in ((0, 1), (1, 0)):
                    desc = MoveDescriptor("3-2", source, target, removed, (0, 1, 2), ())
                    checks = verify_index_compatibility(desc, samples, opts)
                    if all(c.passed for c in checks):
                        doc["relabelling"] = {"tet_order": list(order), "column_rotations": list(rots)}
                        write(fig8, doc, removed)
                        return
    raise SystemExit("no aligned labelling passed the compatibility check")


def write(fig8, fig8_3tet, removed):
    OUT.mkdir(parents=True, exist_ok=True)
    move = {
        "kind": "3-2",
        "source": "fig8.json",
        "target": "fig8_3tet.json",
        "removed_tets": list(removed),
        "inserted_tets": [0, 1, 2],
        "fixed_map": [],
    }
    for name, doc in (("fig8.json", fig8), ("fig8_3tet.json", fig8_3tet), ("fig8_move.json", move)):
        text = json.dumps(doc, indent=2)
        # one row per line
        text = re.sub(r"\[\s+(-?\d+(?:,\s+-?\d+)*)\s+\]", lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
        (OUT / name).write_text(text + "\n")
        print("wrote", OUT / name)


if __name__ == "__main__":
    main()
