import math

import numpy as np
import pytest

import sbm


def test_rate_and_format():
    assert sbm.convergence_rate(0.1, 1e-2, 0.05, 2.5e-3) == pytest.approx(2.0)
    assert sbm.format_sci(5.12e-3) == "5.12E-03"


def test_discretize_has_violations():
    d = sbm.discretize_trapezoid(4e-2)
    assert d["vertices"].shape[1] == 2
    assert d["cells"].shape[1] == 3
    assert d["rect_width"] * d["rect_height"] == pytest.approx(16e-4)
    assert 0 < d["violating"] < d["surrogate_edges"]


def test_affine_patch():
    s = sbm.solve_poisson_trapezoid(4e-2, solution="affine")
    assert np.max(np.abs(s["u"] - s["exact"])) < 1e-10
    assert s["residual"] <= 1e-12


def test_poisson_ladder():
    t = sbm.run("poisson", [4e-2, 2e-2])
    assert t["complete"]
    assert t["norms"] == ["l2"]
    first, second = t["rows"]
    assert first["l2_rate"] is None
    assert second["l2_rate"] > 1.9
    assert t["csv"].startswith("mesh_size,l2_error,l2_rate")
    assert "check" in t


def test_stokes_ladder_and_fitted():
    t = sbm.run("stokes", [4e-2, 2e-2], variant="fitted")
    assert t["variant"] == "fitted"
    assert all(math.isfinite(r["velocity"]) for r in t["rows"])


def test_audit_and_verify():
    rows = sbm.audit([4e-2, 2e-2])
    assert all(r["percentage"] > 0 for r in rows)
    probes = sbm.verify([4e-2, 2e-2])
    assert all(p["passed"] for p in probes if p["asserted"])


def test_errors_map_to_value_error():
    with pytest.raises(ValueError, match="need >= 2 levels"):
        sbm.run("poisson", [4e-2])
    with pytest.raises(ValueError):
        sbm.run("heat", [4e-2, 2e-2])
