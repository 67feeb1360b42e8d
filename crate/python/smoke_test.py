#!/usr/bin/env python3
"""Smoke test for the gamecert_py extension module.

Builds the cdylib with cargo, loads it as a Python module, and
exercises the main certification entry points end to end.
"""

import json
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def build_extension() -> Path:
    subprocess.run(
        ["cargo", "build", "-p", "gamecert-py"],
        cwd=REPO,
        check=True,
    )
    built = REPO / "target" / "debug" / "libgamecert_py.so"
    if not built.exists():  # e.g. macOS
        built = REPO / "target" / "debug" / "libgamecert_py.dylib"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    stage = Path(tempfile.mkdtemp(prefix="gamecert_py_"))
    target = stage / f"gamecert_py{suffix}"
    shutil.copy2(built, target)
    return stage


def main() -> int:
    sys.path.insert(0, str(build_extension()))
    import gamecert_py as g

    # Exact rational arithmetic round trip.
    a = g.Rational("1/3")
    b = g.Rational("1e-2")
    assert str(a + b) == "103/300"
    assert str(a * b) == "1/300"
    assert b < a
    assert a.decimal(4) == "0.3333"

    # Continued fractions.
    word = g.cf_expand("17/27")
    assert word == ["0", "1", "1", "1", "2", "3"]
    assert g.cf_value(word) == "17/27"

    # Certification pipelines; every certificate must re-audit.
    ap3 = g.ap3_meps("1/49", "0", 20)
    assert g.audit(ap3) == "progression"
    cert = json.loads(ap3)
    assert len(cert["elements"]) == 3

    ap4 = g.ap4_newhouse("1/3", 8)
    assert g.audit(ap4) == "progression"
    assert len(json.loads(ap4)["elements"]) == 4

    found = g.ap_search("1/3", 2, 8)
    assert g.audit(found) == "progression"

    point = g.f19_cap_c(25)
    assert g.audit(point) == "point"

    sumset = g.sumset_f49("1/2", 20)
    assert g.audit(sumset) == "sumset"

    folded = g.folding_f9(3, 10)
    assert g.audit(folded) == "point"
    assert json.loads(folded)["quotient_bound"] == 9

    # Tampering must be rejected.
    bad = json.loads(ap3)
    bad["gap"] = "1/3"
    try:
        g.audit(json.dumps(bad))
    except ValueError:
        pass
    else:
        raise AssertionError("tampered certificate was accepted")

    # Dimension tooling.
    count, lo, hi, _manifest = g.hd_estimate(2, "1e-4")
    assert count > 0 and lo and hi

    lo, hi = g.hd_lower(4, 2, "1/4")
    assert lo == hi == "1/2"

    assert g.independence("2/3", "2/3", 1) == "1/3"

    budget = json.loads(g.ap_budget("1/100", "1/4", "1"))
    assert budget["k"] == 9

    report = json.loads(g.survivor_report("trivial", group=2, levels=2))
    assert report["final_survivors"] > 0

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
