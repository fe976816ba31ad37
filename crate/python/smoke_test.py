#!/usr/bin/env python3
"""Smoke test for the cproj_py extension module.

Build the extension and make it importable first, e.g.:

    cargo build --release -p cproj-py
    cp target/release/libcproj_py.so python/cproj_py.so
    python3 python/smoke_test.py
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import cproj_py as cp

HERE = os.path.dirname(os.path.abspath(__file__))
CORPUS = os.environ.get("CPROJ_CORPUS", os.path.join(HERE, "..", "corpus"))


def check(name, ok, detail=""):
    status = "ok" if ok else "FAIL"
    print(f"  {status}: {name}" + (f" ({detail})" if detail else ""))
    if not ok:
        raise SystemExit(f"smoke test failed at: {name}")


def main():
    print("ring validation")
    r2 = cp.Ring.load(os.path.join(CORPUS, "r2.json"))
    check("r2 loads", r2.dim == 4 and r2.p == 2 and r2.nilpotency_index == 3, repr(r2))
    r3 = cp.Ring.load(os.path.join(CORPUS, "r3.json"))
    check("r3 loads", r3.dim == 3)

    print("modules and invariants")
    k3 = r3.residue_field()
    omega = r3.dual_of_ring()
    check("omega has dim 3 and two generators", omega.dim == 3 and omega.min_generators() == 2)
    check("k is not free", k3.pd() == "infinite")
    betti = k3.betti(4)
    check("Betti numbers of k over r3", betti["betti"] == [1, 2, 4, 8], str(betti))
    betti1 = cp.Ring.load(os.path.join(CORPUS, "r1.json")).residue_field().betti(5)
    check(
        "periodic resolution over r1",
        betti1["betti"] == [1, 1, 1, 1, 1] and tuple(betti1["periodicity"]) == (0, 1),
        str(betti1),
    )

    print("semidualizing verification")
    rep = cp.verify_semidualizing(omega, bound=10)
    check("omega is semidualizing to bound 10", rep["verdict"] == "VerifiedToBound", str(rep["verdict"]))
    bad = cp.verify_semidualizing(cp.Ring.load(os.path.join(CORPUS, "r1.json")).residue_field(), bound=5)
    check("k over r1 is refuted", bad["verdict"] != "VerifiedToBound")

    print("ext dimensions")
    ext = omega.ext_dims(omega, 6)
    check("Ext^i(omega, omega) vanish for i >= 1", all(d == 0 for d in ext[1:]), str(ext))

    print("P_C-pd and resolutions")
    c2 = r2.free(1)
    quotient = r2.quotient("x")
    check("P_C-pd(C/xC) is infinite", cp.pc_pd(quotient, c2) == "infinite")
    res = cp.resolve(quotient, c2, length=5)
    check("periodic Betti numbers", res["summary"]["betti"] == [1, 1, 1, 1, 1], str(res["summary"]["betti"]))
    check("resolution is minimal and proper", res["summary"]["is_minimal"] and res["summary"]["properness"] == "Exact")

    cores = cp.coresolve(quotient, c2, length=4)
    check("coresolution criterion admits", cores["criterion"]["verdict"] == "Admits")

    print("exact zero-divisors and the quotient pipeline")
    pairs = r2.find_exact_zero_divisors()
    check("(x, x) is an exact pair on r2", ("x", "x") in pairs, str(pairs))
    report = cp.ex3(r2, c2, "x", "x", 3)
    check("full pipeline passes at n = 3", report["all_pass"], str(report))

    print("width and minimization")
    t3 = cp.periodic_complex(r2, c2, "x", "x", 3)
    check("T^(3) is minimal", t3.is_minimal())
    w = cp.width(t3, c2)
    check("width(T^(3)) = 3", w["summary"]["width"] == 3, str(w["summary"]))
    padded = t3.direct_sum(t3.shift(5))
    check("padded complex has wider support", padded.hi - padded.lo == 8)
    contractible = cp.width(t3.direct_sum(t3.shift(0)), c2)
    check("direct double has the same width", contractible["summary"]["width"] == 3)

    print("hereditary probe")
    probe = cp.hereditary_probe(omega)
    check("r3 with omega is refuted", "Refuted" in probe["verdict"], str(probe["verdict"]))

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
