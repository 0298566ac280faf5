"""Smoke test for the hermcm Python module."""
import math
from pathlib import Path

import hermcm

DATA = Path(__file__).resolve().parent.parent / "crates" / "hermcm" / "data"


def main():
    k = hermcm.ImagQuadField(7)
    assert (k.h, k.w) == (1, 2)
    assert abs(k.faltings_height() - (-1.632189516599)) < 1e-9
    assert abs(k.faltings_height() - k.faltings_height_gamma()) < 1e-8

    e = hermcm.CMField(7, [-1, -1, 1])
    lam0, _ = e.l_value(0.0)
    lam0_s, _ = e.l_value(0.0, mode="series")
    assert abs(lam0 - 2.0) < 1e-8 and abs(lam0 - lam0_s) < 1e-8
    assert abs(e.deg_big() / e.degree - 0.25) < 1e-8
    rep = e.heights()
    assert abs(rep["consistency_residual"]) < 1e-10
    assert math.isfinite(e.eisenstein_constant())

    f = hermcm.CMField.from_json((DATA / "fields" / "d7_cubic81.json").read_text())
    assert f.degree == 3

    lat = hermcm.HermitianLattice.from_json((DATA / "lattices" / "d7_rank2.json").read_text())
    assert lat.theta("2") == lat.theta("2", naive=True)
    assert lat.theta("2")[0] == ("0", 0, 1)

    report = hermcm.verify(["lfun", "heights"])
    assert report["passed"], [c["name"] for c in report["checks"] if c["status"] != "PASS"]

    try:
        hermcm.CMField(8, [-1, -1, 1])
    except ValueError:
        pass
    else:
        raise AssertionError("D = 8 accepted")
    print("smoke test ok:", len(report["checks"]), "checks")


if __name__ == "__main__":
    main()
