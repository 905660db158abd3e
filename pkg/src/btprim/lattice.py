"""Euclidean Metropolis Monte Carlo for binary-tetrahedral gauge theory.

Links live on a periodic hypercubic lattice and take values in the
24-element group; the Wilson action S = beta * sum_p (1 - ReTr U_p / 2)
is evaluated entirely with the integer multiplication/inverse/trace
tables.  Update kernels are compiled with numba.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from . import group

_MULT = group.MULT_TABLE.astype(np.int64)
_INV = group.INV_TABLE.astype(np.int64)
_RETR = group.RE_TRACE.astype(np.float64)


@dataclass
class LatticeState:
    dims: tuple  # extents per direction, e.g. (4, 4, 4, 4)
    beta: float
    links: np.ndarray  # (n_sites, n_dims) group indices
    rng: np.random.Generator

    @property
    def n_dims(self) -> int:
        return len(self.dims)

    @property
    def n_sites(self) -> int:
        return int(np.prod(self.dims))


@dataclass(frozen=True)
class MCResult:
    beta: float
    e0: float
    err: float
    acceptance: float
    therm_sweeps: int
    meas_sweeps: int
    start: str


@dataclass(frozen=True)
class ScanConfig:
    dims: tuple = (4, 4, 4, 4)
    betas: tuple = ()
    therm_sweeps: int = 500
    meas_sweeps: int = 2000
    bin_size: int = 20
    seed: int = 0
    start: str = "cold"


def _neighbor_table(dims) -> np.ndarray:
    """fwd[site, mu] = site index one step in +mu (periodic)."""
    dims = tuple(dims)
    nd = len(dims)
    n = int(np.prod(dims))
    fwd = np.empty((n, nd), dtype=np.int64)
    coords = np.array(np.unravel_index(np.arange(n), dims)).T
    for mu in range(nd):
        shifted = coords.copy()
        shifted[:, mu] = (shifted[:, mu] + 1) % dims[mu]
        fwd[:, mu] = np.ravel_multi_index(shifted.T, dims)
    return fwd


def make_state(dims, beta, seed, start="cold") -> LatticeState:
    rng = np.random.default_rng(seed)
    n = int(np.prod(dims))
    nd = len(dims)
    if start == "cold":
        links = np.zeros((n, nd), dtype=np.int64)
    elif start == "hot":
        links = rng.integers(0, 24, size=(n, nd)).astype(np.int64)
    else:
        raise ValueError("start must be 'hot' or 'cold'")
    return LatticeState(tuple(dims), float(beta), links, rng)


@njit(cache=True)
def _plaquette_retrace(links, fwd, site, mu, nu, mult, inv, retr):
    a = links[site, mu]
    b = links[fwd[site, mu], nu]
    c = inv[links[fwd[site, nu], mu]]
    d = inv[links[site, nu]]
    return retr[mult[mult[mult[a, b], c], d]]


@njit(cache=True)
def _mean_plaquette(links, fwd, mult, inv, retr):
    n, nd = links.shape
    acc = 0.0
    cnt = 0
    for site in range(n):
        for mu in range(nd):
            for nu in range(mu + 1, nd):
                acc += _plaquette_retrace(links, fwd, site, mu, nu,
                                          mult, inv, retr)
                cnt += 1
    return acc / cnt


@njit(cache=True)
def _staple_sum(links, fwd, bwd, site, mu, mult, inv, retr, u_val):
    """Sum over plaquettes containing link (site, mu) of ReTr with the
    link set to u_val."""
    n, nd = links.shape
    acc = 0.0
    for nu in range(nd):
        if nu == mu:
            continue
        # forward staple: u * b * c^-1 * d^-1
        b = links[fwd[site, mu], nu]
        c = inv[links[fwd[site, nu], mu]]
        d = inv[links[site, nu]]
        acc += retr[mult[mult[mult[u_val, b], c], d]]
        # backward staple: plaquette at site - nu
        s2 = bwd[site, nu]
        b2 = inv[links[fwd[s2, mu], nu]]
        c2 = inv[links[s2, mu]]
        d2 = links[s2, nu]
        acc += retr[mult[mult[mult[u_val, b2], c2], d2]]
    return acc


@njit(cache=True)
def _sweep(links, fwd, bwd, beta, mult, inv, retr, proposals, uniforms):
    n, nd = links.shape
    accepted = 0
    k = 0
    for site in range(n):
        for mu in range(nd):
            old = links[site, mu]
            new = mult[old, proposals[k]]
            old_sum = _staple_sum(links, fwd, bwd, site, mu, mult, inv,
                                  retr, old)
            new_sum = _staple_sum(links, fwd, bwd, site, mu, mult, inv,
                                  retr, new)
            # S = beta sum_p (1 - ReTr/2): dS = -(beta/2)(new - old)
            ds = -0.5 * beta * (new_sum - old_sum)
            if ds <= 0.0 or uniforms[k] < math.exp(-ds):
                links[site, mu] = new
                accepted += 1
            k += 1
    return accepted


def _tables(state: LatticeState):
    fwd = _neighbor_table(state.dims)
    # bwd[site, mu]: site one step in -mu
    bwd = np.empty_like(fwd)
    for mu in range(state.n_dims):
        bwd[fwd[:, mu], mu] = np.arange(state.n_sites)
    return fwd, bwd


def plaquette_retrace(state: LatticeState, site: int, mu: int, nu: int) -> float:
    fwd, _ = _tables(state)
    return float(_plaquette_retrace(state.links, fwd, site, mu, nu,
                                    _MULT, _INV, _RETR))


def mean_energy(state: LatticeState) -> float:
    """E0 = 1 - <ReTr U_p>/2 over all plaquettes."""
    fwd, _ = _tables(state)
    return 1.0 - 0.5 * _mean_plaquette(state.links, fwd, _MULT, _INV, _RETR)


def metropolis_sweep(state: LatticeState, fwd=None, bwd=None) -> float:
    """One full lattice sweep in place; returns the acceptance rate."""
    if fwd is None:
        fwd, bwd = _tables(state)
    n_upd = state.n_sites * state.n_dims
    proposals = state.rng.integers(1, 24, size=n_upd)
    uniforms = state.rng.random(n_upd)
    acc = _sweep(state.links, fwd, bwd, state.beta, _MULT, _INV, _RETR,
                 proposals, uniforms)
    return acc / n_upd


def run_point(dims, beta, therm_sweeps, meas_sweeps, bin_size, seed,
              start) -> MCResult:
    state = make_state(dims, beta, seed, start)
    fwd, bwd = _tables(state)
    for _ in range(therm_sweeps):
        metropolis_sweep(state, fwd, bwd)
    acc_total = 0.0
    energies = np.empty(meas_sweeps)
    for i in range(meas_sweeps):
        acc_total += metropolis_sweep(state, fwd, bwd)
        energies[i] = 1.0 - 0.5 * _mean_plaquette(state.links, fwd, _MULT,
                                                  _INV, _RETR)
    mean, err = jackknife(energies, bin_size)
    return MCResult(float(beta), mean, err, acc_total / meas_sweeps,
                    therm_sweeps, meas_sweeps, start)


def jackknife(samples: np.ndarray, bin_size: int) -> tuple[float, float]:
    """Binned jackknife mean and error."""
    n_bins = len(samples) // bin_size
    if n_bins < 2:
        return float(np.mean(samples)), float(
            np.std(samples, ddof=1) / math.sqrt(len(samples)))
    binned = samples[: n_bins * bin_size].reshape(n_bins, bin_size).mean(axis=1)
    total = binned.sum()
    loo = (total - binned) / (n_bins - 1)
    mean = float(binned.mean())
    var = (n_bins - 1) / n_bins * np.sum((loo - mean) ** 2)
    return mean, float(math.sqrt(var))


def scan(config: ScanConfig) -> list[MCResult]:
    """One MCResult per beta, independent seeded chains."""
    results = []
    for i, beta in enumerate(config.betas):
        results.append(
            run_point(config.dims, beta, config.therm_sweeps,
                      config.meas_sweeps, config.bin_size,
                      config.seed + 1009 * i, config.start)
        )
    return results


def freezeout_estimate(results) -> dict:
    """Location of the steepest E0 drop on the scan grid."""
    results = sorted(results, key=lambda r: r.beta)
    betas = np.array([r.beta for r in results])
    e0 = np.array([r.e0 for r in results])
    slopes = np.diff(e0) / np.diff(betas)
    k = int(np.argmin(slopes))  # most negative slope
    return {
        "beta_f": float(0.5 * (betas[k] + betas[k + 1])),
        "grid_error": float(0.5 * (betas[k + 1] - betas[k])),
        "max_drop": float(-slopes[k] * (betas[k + 1] - betas[k])),
    }


def hysteresis(hot_results, cold_results) -> dict:
    """Largest hot/cold discrepancy across matching beta points."""
    gaps = []
    for h, c in zip(sorted(hot_results, key=lambda r: r.beta),
                    sorted(cold_results, key=lambda r: r.beta)):
        gaps.append((abs(h.e0 - c.e0), h.beta))
    width, beta = max(gaps)
    return {"max_gap": float(width), "at_beta": float(beta)}


def results_to_csv(results) -> str:
    lines = ["beta,E0,err,acceptance,start"]
    for r in results:
        lines.append(f"{r.beta:.6f},{r.e0:.6f},{r.err:.6f},"
                     f"{r.acceptance:.4f},{r.start}")
    return "\n".join(lines) + "\n"
