#!/usr/bin/env python3
"""Smoke test for the stirlah_py extension module.

Build the module first, then run this script from the repository root:

    cargo build -p stirlah-py --release
    python3 python/smoke_test.py

The script locates the compiled cdylib under target/, exposes it under its
importable name, and exercises every binding against known values.
"""

import shutil
import sys
import tempfile
from pathlib import Path


def locate_module() -> Path:
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libstirlah_py.so", "stirlah_py.so", "libstirlah_py.dylib")
    ]
    for candidate in candidates:
        if candidate.exists():
            return candidate
    sys.exit("build the extension first: cargo build -p stirlah-py --release")


def main() -> None:
    lib = locate_module()
    staging = Path(tempfile.mkdtemp(prefix="stirlah_py_"))
    shutil.copy2(lib, staging / "stirlah_py.so")
    sys.path.insert(0, str(staging))
    import stirlah_py as sp

    # Restriction sets: parsing, canonical text, predicates, endpoints.
    r = sp.RestrictionSet("2,1,4-6")
    assert str(r) == "1-2,4-6"
    assert r.contains(5) and not r.contains(3)
    assert r.has_no_exposed_odds()
    a_set, b_set = r.endpoints()
    assert a_set == [4] and b_set == [2, 6]
    assert r.stretched_contains(3, 4) and not r.stretched_contains(3, 2)
    assert r.stretched_preimage(3, 10) == 4

    nat = sp.RestrictionSet("1-")

    # Triangles: the classical Stirling-second rows and the oracle.
    rows = sp.triangle(nat, "set", 1, 4)
    assert rows == [[1], [1, 1], [1, 3, 1], [1, 7, 6, 1]]
    assert sp.oracle(4, 2, nat, "set", 1) == 7

    # Inverse triangles carry the signed opposite-kind values.
    inv = sp.inverse_triangle(nat, "set", 1, 4)
    assert inv[3][0] == -6 and inv[3][1] == 11
    assert sp.inverse_triangle(sp.RestrictionSet("1,2"), "set", 1, 3)[2][0] == 3

    # Series: sinh reverts with EGF magnitudes 1, 1, 9 along 1, 3, 5.
    sinh = sp.hyperbolic_first_kind(2, 5)
    g = sinh.revert()
    assert [g.egf_coeff(n) for n in (1, 3, 5)] == ["1", "-1", "9"]
    assert g.is_alternating(2)

    f = sp.series_from_restriction(sp.RestrictionSet("1,2"), "list", 1, 8)
    q = f.x_over_f()
    assert q.coeffs()[:4] == ["1", "-1", "1", "-1"]
    assert q.is_alternating(1)

    # Forest counts: good classes for the unrestricted set are (n−1)!, 1, n!.
    assert sp.count_forests(4, 1, "increasing", nat, 1, "good") == 6
    assert sp.count_forests(4, 1, "minfirst", nat, 1, "good") == 1
    assert sp.count_forests(4, 1, "linear", nat, 1, "good") == 24

    # The involution verifier on a small class.
    report = sp.verify_involution(5, sp.RestrictionSet("1,2"), 1, "increasing")
    assert report["all_hold"] and report["trees_checked"] == 1 + 1 + 3 + 15 + 105

    # Whitney numbers of the poset of partitions with part sizes ≡ 1 mod 2.
    w = sp.whitney_numbers(5, 2)
    assert w == [(1, 1), (10, -10), (1, 9)]

    print("stirlah_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
