import math

import pytest

import dpt


def test_plus_fixture():
    d = dpt.generate("plus")
    assert d.num_interior == 1
    assert d.num_boundary == 4
    assert dpt.harmonic_measure(d, "center", [0]) == pytest.approx(0.25, abs=1e-14)
    assert dpt.partition_function(d, [0], [2]) == pytest.approx(1 / 64, abs=1e-15)
    assert dpt.green(d, "center", "center") == pytest.approx(0.25, abs=1e-15)
    cr = dpt.cross_ratios(d, (0, 1, 2, 3))
    assert cr["X"] == pytest.approx(1.0)
    assert cr["Y"] == pytest.approx(1.0)


def test_rectangle_extremal_length():
    for m, n in [(3, 2), (6, 3), (1, 1)]:
        d = dpt.generate("rect", {"m": m, "n": n})
        assert dpt.extremal_length(d, "left", "right") == pytest.approx((m + 1) / n, rel=1e-12)


def test_invariants_duality():
    d = dpt.generate("perturbed_grid", {"m": 6, "n": 5, "amplitude": 0.2}, seed=3)
    r = dpt.invariants(d)
    assert r["EL"] * r["EL_dual_network"] == pytest.approx(1.0, rel=1e-9)
    assert r["X"] <= 1.0 and r["X"] <= r["Y"]


def test_monte_carlo_agrees_with_solver():
    d = dpt.generate("rect", {"m": 5, "n": 4})
    exact = dpt.harmonic_measure(d, "center", "right")
    est, se = dpt.estimate_hm(d, "center", "right", 20000, seed=5)
    assert abs(est - exact) <= 4 * se


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        dpt.generate("rect", {"m": 0})
    with pytest.raises(ValueError):
        dpt.harmonic_measure(dpt.generate("plus"), "nowhere", [0])


def test_verify_small_spec():
    spec = {"configs": [{"id": "plus", "family": "plus"}]}
    rep = dpt.verify(spec)
    assert rep["records"][0]["values"]["Y"] == pytest.approx(1.0)
    assert math.isfinite(rep["records"][0]["values"]["Z"])
