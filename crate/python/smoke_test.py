"""Smoke test for the bhht_py extension.

Build first with `cargo build --release -p bhht-py`, then run
`python3 python/smoke_test.py`. The script copies the built shared library
next to itself under an importable name.
"""

import json
import pathlib
import shutil
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
HERE = pathlib.Path(__file__).resolve().parent


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libbhht_py.so"
        if lib.exists():
            shutil.copy(lib, HERE / "bhht_py.so")
            sys.path.insert(0, str(HERE))
            import bhht_py
            return bhht_py
    sys.exit("libbhht_py.so not found; run `cargo build -p bhht-py` first")


def main():
    bhht = load()

    f = bhht.Polynomial("x1^2*x2 + x2^3")
    assert f.n == 2
    assert f.det() == 6
    assert f.symmetry_group_order() == 6
    assert str(f.transpose().transpose()) == str(f)
    assert f.weights() == ["1/3", "1/3"]

    loop = bhht.Polynomial.periodic_loop([2], 3)
    assert loop.symmetry_group_order() == 9

    holds, witness = bhht.check_pc(4, "(1 2)(3 4);(1 3)(2 4)")
    assert not holds and witness
    assert bhht.check_pc(5, "(1 2 3 4 5);(1 4)(2 3)")[0]

    for report in (
        bhht.verify_abelian(f),
        bhht.verify_main(loop, "(1 2 3)"),
        bhht.verify_loop([2], 3),
        bhht.verify_saito_loop([2], 3),
    ):
        r = json.loads(report)
        assert r["verdict"] == "verified", r["instance"]
        assert all(c["equal"] for c in r["cases"])

    flipped = json.loads(bhht.verify_saito_loop([2], 3, flip_sign=True))
    assert flipped["verdict"] == "counterexample"

    code, out, _ = bhht.run_cli(["--json", "poly", "analyze", "x1^3 + x2^3"])
    assert code == 0 and json.loads(out)

    try:
        bhht.Polynomial("x1^2 + x1^3")
    except ValueError:
        pass
    else:
        raise AssertionError("invalid polynomial accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
