"""Smoke test for the `gdk` extension module.

Uses an installed `gdk` when importable; otherwise loads the shared library
from `target/{release,debug}` (build it with
`cargo build -p gdk-py --release --features extension-module`).
"""

import importlib.util
import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import gdk

        return gdk
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libgdk.so", "libgdk.dylib", "gdk.dll"):
            lib = ROOT / "target" / profile / name
            if lib.exists():
                dest = Path(tempfile.mkdtemp()) / ("gdk.pyd" if name.endswith("dll") else "gdk.so")
                shutil.copy(lib, dest)
                found = importlib.util.spec_from_file_location("gdk", dest)
                module = importlib.util.module_from_spec(found)
                found.loader.exec_module(module)
                return module
    sys.exit("gdk extension not found; build crates/py first")


def main():
    gdk = load()
    tower = json.dumps({"kind": "field-tower", "p": 2, "m": 2})
    assert json.loads(gdk.galois_check(tower))["verdict"] is True

    h90 = json.loads(gdk.hilbert90(2, 2))
    assert (h90["z1"], h90["h1"]) == (3, 1)
    assert json.loads(gdk.etale(2, 2, 2))["h1"] == 2
    assert json.loads(gdk.azumaya(2, 2))["holds"] is True

    negation = {
        "group": {"order": 2, "mul": [[0, 1], [1, 0]], "identity": 0},
        "coeff": {"order": 3, "mul": [[0, 1, 2], [1, 2, 0], [2, 0, 1]], "identity": 0},
        "act": [[0, 1, 2], [0, 2, 1]],
    }
    h1 = json.loads(gdk.h1(json.dumps(negation)))
    assert (h1["z1_size"], len(h1["classes"])) == (3, 1)

    omega = {"ext": {"kind": "field-tower", "p": 2, "m": 2}, "d": 1, "mats": {"1": [[[0, 1]]]}}
    assert gdk.descend_dim(json.dumps(omega)) == 1

    fixture = (ROOT / "crates" / "cli" / "fixtures" / "powerset_z2.json").read_text()
    assert json.loads(gdk.monad_check(fixture))["holds"] is True
    try:
        gdk.monad_check((ROOT / "crates" / "cli" / "fixtures" / "broken_coproducts.json").read_text())
    except ValueError as e:
        assert "missing coproduct" in str(e)
    else:
        raise AssertionError("broken fixture accepted")

    results = json.loads(gdk.run_selftest(fast=True, criterion=6))
    assert results[0]["passed"] is True
    print(f"gdk {gdk.__version__}: python smoke test passed")


if __name__ == "__main__":
    main()
