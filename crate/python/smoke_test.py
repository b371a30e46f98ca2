#!/usr/bin/env python3
"""Smoke test for the `moncat` extension module.

Builds nothing itself: run `cargo build -p moncat-py` first (or pass
--release and build that profile). The script stages the cdylib under the
importable name, then exercises every exported entry point against the
shipped fixtures.
"""

import argparse
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def stage_module(profile: str) -> Path:
    built = ROOT / "target" / profile / "libmoncat.so"
    if not built.exists():
        sys.exit(f"{built} not found; run `cargo build -p moncat-py` first")
    stage = Path(tempfile.mkdtemp(prefix="moncat-py-"))
    shutil.copy2(built, stage / "moncat.so")
    return stage


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--release", action="store_true", help="use the release build")
    args = parser.parse_args()

    sys.path.insert(0, str(stage_module("release" if args.release else "debug")))
    import moncat

    fixtures = ROOT / "fixtures"

    # Load, inspect, and law-check a monoidal module.
    mod = moncat.load((fixtures / "z2fat.cat").read_text())
    assert mod.categories == ["Z2FAT"], mod.categories
    cat = mod.category("Z2FAT")
    assert (cat.n_objects, cat.n_morphisms) == (4, 8)
    assert cat.check() == []
    assert not cat.is_skeletal
    ident = cat.identity(0)
    assert cat.compose(ident, ident) == ident
    assert cat.src(ident) == cat.tgt(ident) == 0

    mon = mod.monoidal("Z2FAT")
    assert mon is not None and mon.check() == []
    u = mon.unit
    assert mon.tensor_obj(u, 0) == 0 or cat.hom(mon.tensor_obj(u, 0), 0)

    # Completion: four objects collapse to the two-object skeleton.
    comp = moncat.complete(mon)
    assert comp.monoidal.base().n_objects == 2
    assert comp.strong
    assert comp.check() == []
    assert len(comp.object_map) == 4

    skel, collapse = moncat.skeletalize(cat)
    assert skel.is_skeletal and len(collapse) == 4

    # Day convolution over the Z/2-graded discrete base: the convolution
    # product of graded sizes (1,2) and (3,1).
    z2d = moncat.load((fixtures / "z2d.cat").read_text()).monoidal("Z2D")
    assert moncat.day_sizes(z2d, [1, 2], [3, 1]) == [5, 7]
    assert moncat.day_sizes(mon, 0, 1) == [0, 1, 0, 1]  # y(x0) (x) y(x1)
    assert moncat.day_representable(z2d)

    # Day completion agrees with the skeletal one.
    verdict = moncat.compare(z2d)
    assert verdict["ok"] and verdict["strong"] and verdict["cells_equal"]
    assert verdict["rezk_objects"] == verdict["day_objects"] == 2

    # JSON round trips preserve the tables.
    back = moncat.from_json(mon.to_json())
    assert isinstance(back, moncat.Monoidal)
    assert back.to_json() == mon.to_json()
    again = moncat.from_json(comp.to_json())
    assert isinstance(again, moncat.Completion) and again.strong

    # Canonical text reloads to the same category.
    text = mon.canonical()
    reloaded = moncat.load(text)
    name = reloaded.categories[0]
    assert reloaded.category(name).n_morphisms == cat.n_morphisms

    # Error surfaces: law failures and bad input raise distinct types.
    try:
        moncat.load((fixtures / "broken_pentagon.cat").read_text())
    except moncat.LawError as e:
        assert "pentagon" in str(e)
    else:
        sys.exit("broken_pentagon.cat should raise LawError")

    try:
        moncat.load("category X { objects ; }")
    except ValueError:
        pass
    else:
        sys.exit("syntax error should raise ValueError")

    try:
        cat.compose(0, 10**6)
    except ValueError:
        pass
    else:
        sys.exit("out-of-range morphism should raise ValueError")

    print("moncat python smoke test: ok")


if __name__ == "__main__":
    main()
