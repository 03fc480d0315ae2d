import json
import math
import pathlib

import numpy as np
import pytest

import foldquad

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"


def test_gauss_rule():
    x, w = foldquad.gauss_legendre(5)
    assert w.sum() == pytest.approx(1.0, abs=1e-15)
    assert np.dot(w, x**9) == pytest.approx(0.1, rel=1e-14)


def test_min_points():
    assert foldquad.min_points_exact(12, 2, 3) == 39


def test_fig5_decomposition():
    d = foldquad.decompose("fig5", seed=(0, 0, 0.3))
    assert d["summary"]["cells"] == 7
    assert d["summary"]["jplus"] == 6
    assert d["summary"]["jminus"] == 1


def test_weight_sums():
    for name in ("fig6a", "square"):
        q = foldquad.quadrature(name, 4)
        assert q["weights"].sum() == pytest.approx(foldquad.measure(name), rel=1e-12)
    q = foldquad.quadrature("fig5", 12)
    assert q["points"].shape == (len(q["weights"]), 3)
    assert q["weights"].sum() == pytest.approx(1 - math.pi * 0.65**2 / 4, rel=1e-12)


def test_exterior_seed_has_negative_weights():
    q = foldquad.quadrature("fig6a", 3, grid=1, strategy="point", seed=(-3, -3))
    assert (q["weights"] < 0).any()
    assert q["weights"].sum() == pytest.approx(foldquad.measure("fig6a"), rel=1e-12)


def test_integrate_polynomial():
    # x^2 y over the unit square; triangle cells need q(p+1) = 3 points
    v = foldquad.integrate("square", lambda x, y: x**2 * y, 3, grid=3)
    assert v == pytest.approx(1 / 6, rel=1e-13)


def test_geometry_dict_and_file():
    doc = json.loads((DATA / "fig6a.json").read_text())
    assert foldquad.measure(doc) == pytest.approx(foldquad.measure(DATA / "fig6a.json"), rel=1e-15)


def test_verify_reports():
    r = foldquad.verify("square", samples=50, max_degree=2)
    assert r["passed"]
    r = foldquad.verify(DATA / "fig6a_reversed_edge.json", samples=50, max_degree=1)
    assert not r["passed"]


def test_errors():
    with pytest.raises(ValueError):
        foldquad.measure(DATA / "empty.json")
    with pytest.raises(ValueError):
        foldquad.measure("no-such-thing")
