"""Smoke test for the pymonoext extension.

Build and copy the module next to this file first:

    cargo build --release -p pymonoext --features extension-module
    cp target/release/libpymonoext.so python/pymonoext.so
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
import pymonoext  # noqa: E402

CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "crates", "core", "corpus")


def load(name, **kw):
    return pymonoext.Algebra.from_file(os.path.join(CORPUS, name), **kw)


def main():
    ex1 = load("ex1.alg")
    assert ex1.radical_length == 4
    assert ex1.dimension == 24
    rn = json.loads(ex1.rn_report(4))
    assert [d["degree"] for d in rn["degrees"]] == [0, 1, 2, 3, 4]
    assert len(ex1.rn(2)) == len(ex1.relations)

    ex2 = load("ex2.alg")
    centre = json.loads(ex2.centre_report(12, brute=True))
    assert centre["krull_dimension"] == 1
    assert centre["agreement"] is True
    dims = {d["degree"]: d["quotient_dimension"] for d in centre["degrees"]}
    assert dims[4] == 1 and dims[8] == 1 and dims[12] == 1 and dims[6] == 0

    chi = json.loads(ex2.build_chi(0, 8))
    assert chi["verified"] is True
    try:
        ex2.build_chi(0, 4)
    except pymonoext.NotStabilizedError:
        pass
    else:
        raise AssertionError("degree 4 should not stabilize")

    with open(os.path.join(CORPUS, "ex2_chi4.json")) as f:
        chi4 = f.read()
    assert ex2.verify_cochain(chi4) is None
    witness = load("ex4.alg").verify_cochain(chi4)
    assert witness is not None and witness[0] == "a1 a2 a3 a4 a5 a6 a7 x y"

    ex3 = json.loads(load("ex3.alg").centre_report(12))
    assert ex3["krull_dimension"] == 0

    loop = load("loop.alg", characteristic=2)
    assert loop.characteristic == 2
    assert loop.multiply("x", "x") == "x x"
    degrees = json.loads(loop.centre_report(4))["degrees"]
    assert all(d["quotient_dimension"] == 1 for d in degrees)

    try:
        pymonoext.Algebra("vertex 1\narrow a 1 2\n")
    except ValueError as e:
        assert "line 2" in str(e)
    else:
        raise AssertionError("bad quiver accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
