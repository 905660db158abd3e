"""Metropolis Monte Carlo for the discrete gauge theory."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from btprim import group, lattice


def test_cold_lattice_has_zero_energy():
    state = lattice.make_state((4, 4, 4), beta=1.0, seed=0, start="cold")
    assert lattice.mean_energy(state) == 0.0
    assert lattice.plaquette_retrace(state, 0, 0, 1) == 2.0


def test_hot_lattice_energy_near_one():
    state = lattice.make_state((6, 6, 6), beta=0.0, seed=1, start="hot")
    # mean ReTr over the group is 0, so E0 = 1 on average
    assert abs(lattice.mean_energy(state) - 1.0) < 0.05


def test_beta_zero_accepts_everything():
    state = lattice.make_state((4, 4, 4), beta=0.0, seed=2, start="hot")
    assert lattice.metropolis_sweep(state) == 1.0


def test_gauge_invariance_exact():
    state = lattice.make_state((3, 3, 3), beta=1.0, seed=3, start="hot")
    e_before = lattice.mean_energy(state)
    rng = np.random.default_rng(4)
    fwd = lattice._neighbor_table(state.dims)
    gauge = rng.integers(0, 24, state.n_sites)
    new = state.links.copy()
    for site in range(state.n_sites):
        for mu in range(state.n_dims):
            g = gauge[site]
            hinv = group.INV_TABLE[gauge[fwd[site, mu]]]
            new[site, mu] = group.MULT_TABLE[
                group.MULT_TABLE[g, state.links[site, mu]], hinv]
    state.links[:] = new
    assert lattice.mean_energy(state) == e_before


def test_large_beta_freezes():
    res = lattice.run_point((4, 4, 4), beta=10.0, therm_sweeps=100,
                            meas_sweeps=100, bin_size=10, seed=5,
                            start="cold")
    assert res.e0 < 0.01


def test_jackknife_mean_matches_sample_mean():
    rng = np.random.default_rng(6)
    x = rng.normal(size=200)
    mean, err = lattice.jackknife(x, bin_size=10)
    assert abs(mean - x.mean()) < 1e-12
    # iid data: binned jackknife error tracks the naive standard error
    naive = x.std(ddof=1) / np.sqrt(len(x))
    assert 0.5 * naive < err < 2.0 * naive


@settings(max_examples=20, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=40, max_size=120),
       st.integers(2, 10))
def test_jackknife_error_nonnegative(xs, bin_size):
    mean, err = lattice.jackknife(np.array(xs), bin_size)
    assert err >= 0.0
    assert np.isfinite(mean)


def test_freezeout_estimate_on_synthetic_step():
    betas = np.linspace(1.0, 3.0, 21)
    e0 = 1.0 / (1.0 + np.exp(12 * (betas - 2.2)))
    results = [lattice.MCResult(float(b), float(e), 0.0, 1.0, 0, 0, "cold")
               for b, e in zip(betas, e0)]
    est = lattice.freezeout_estimate(results)
    assert abs(est["beta_f"] - 2.2) <= est["grid_error"] + 1e-9


def test_scan_and_csv():
    cfg = lattice.ScanConfig(dims=(3, 3, 3), betas=(0.5, 4.0),
                             therm_sweeps=20, meas_sweeps=40, bin_size=10,
                             seed=7, start="hot")
    results = lattice.scan(cfg)
    assert len(results) == 2
    assert results[0].e0 > results[1].e0
    csv = lattice.results_to_csv(results)
    assert csv.splitlines()[0] == "beta,E0,err,acceptance,start"
    assert len(csv.strip().splitlines()) == 3


def test_hysteresis_reporting():
    hot = [lattice.MCResult(2.0, 0.5, 0, 1, 0, 0, "hot"),
           lattice.MCResult(2.2, 0.4, 0, 1, 0, 0, "hot")]
    cold = [lattice.MCResult(2.0, 0.45, 0, 1, 0, 0, "cold"),
            lattice.MCResult(2.2, 0.1, 0, 1, 0, 0, "cold")]
    h = lattice.hysteresis(hot, cold)
    assert h["at_beta"] == 2.2
    assert abs(h["max_gap"] - 0.3) < 1e-12
