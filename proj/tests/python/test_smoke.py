"""Smoke tests for the python bindings."""

import json
import math

import numpy as np
import pytest

import paracalc as pc


@pytest.fixture(scope="module")
def grid():
    return pc.Grid(d=1, n=256, L=32.0 * math.pi)


@pytest.fixture(scope="module")
def bank(grid):
    return pc.FilterBank(grid)


def test_partition_of_unity(bank):
    assert bank.partition_deviation() <= 1e-12


def test_field_norms(grid):
    x = np.arange(grid.n) * grid.L / grid.n
    u = pc.Field(grid, np.exp(2j * x))
    # pure mode at |xi| = 2
    assert u.sobolev(1.0) == pytest.approx(math.sqrt(5.0 * grid.L), rel=1e-10)
    assert u.l2() == pytest.approx(math.sqrt(grid.L), rel=1e-12)


def test_function_symbol_apply(grid):
    a = pc.smooth_coefficient(grid, 0.3)
    sym = pc.catalogue_symbol(grid, "func", amplitude=0.3)
    u = pc.random_band_limited(grid, 2.0, 7)
    out = pc.op_apply_dense(sym, u)
    ref = a.samples() * u.samples()
    assert np.max(np.abs(out.samples() - ref)) <= 1e-12 * max(1.0, np.max(np.abs(ref)))


def test_multiplier_apply(grid):
    sym = pc.catalogue_symbol(grid, "angxi", m=1.0)
    u = pc.random_band_limited(grid, 2.0, 3)
    out = pc.op_apply_dense(sym, u)
    assert out.sobolev(0.0) == pytest.approx(u.sobolev(1.0), rel=1e-10)


def test_four_way_split_component(grid, bank):
    sym = pc.catalogue_symbol(grid, "dn", amplitude=0.1)
    split = pc.four_way_split(bank, sym, 4)
    assert split.N == 4
    u = pc.random_band_limited(grid, 2.0, 5)
    total = None
    for which in ("lf", "I", "II", "R"):
        part = pc.op_apply_dense(split.component(which), u).samples()
        total = part if total is None else total + part
    dense = pc.op_apply_dense(sym, u).samples()
    assert np.max(np.abs(total - dense)) <= 1e-10 * max(1.0, np.max(np.abs(dense)))


def test_elementary_agreement(grid, bank):
    sym = pc.catalogue_symbol(grid, "dn", amplitude=0.1)
    es = pc.elementary_decompose(bank, sym, 4)
    absolute, relative = es.reconstruction_error(sym)
    assert 0.0 < relative < 1.0
    u = pc.random_band_limited(grid, 2.5, 11)
    out = pc.op_apply_elementary(es, u)
    assert np.isfinite(out.l2())


def test_bracket_identities(grid):
    m = pc.catalogue_symbol(grid, "angxi", m=1.5)
    f = pc.catalogue_symbol(grid, "func", amplitude=0.3)
    u = pc.random_band_limited(grid, 2.5, 13)
    # n = 0 remainder equals the bare commutator
    r0 = pc.remainder_apply(m, f, 0, u).samples()
    c = pc.commutator_apply(m, f, u).samples()
    assert np.max(np.abs(r0 - c)) <= 1e-12 * max(1.0, np.max(np.abs(c)))


def test_seminorms(grid):
    sym = pc.catalogue_symbol(grid, "dn", amplitude=0.1)
    n22 = pc.seminorm_N(grid, sym, 2, 2.0)
    assert np.isfinite(n22) and n22 > 0
    assert pc.seminorm_N(grid, sym, 0, 2.0) <= n22


def test_experiment_and_gate():
    cfg = {
        "id": "py-smoke",
        "theorem": "th-III3",
        "variant": "i",
        "grid": {"d": 1, "n": 256, "L": "8pi"},
        "sigma1": {"id": "angxi", "m": 1.5},
        "sigma2": {"id": "func", "amplitude": 0.3},
        "s": 1.0,
        "n": 0,
        "probes": 4,
        "seed": 9,
    }
    rep = pc.run_experiment(json.dumps(cfg))
    assert rep["pass"]
    assert rep["c_emp"] > 0
    rep2 = pc.run_experiment(json.dumps(cfg))
    assert rep["json"] == rep2["json"]  # deterministic

    cfg["sigma1"]["m"] = 0.5
    cfg["n"] = 1  # violates m1 > n
    with pytest.raises(pc.HypothesisError):
        pc.run_experiment(json.dumps(cfg))
