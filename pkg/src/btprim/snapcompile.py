"""Compilation of 24-level unitaries into SNAP + displacement layers.

The ansatz is an alternating product

    U~ = D(alpha_K) S(theta_K) ... D(alpha_1) S(theta_1) D(alpha_0)

acting on a truncated Fock space (default 48 levels).  SNAP layers carry
24 tunable phases (identity above the computational levels); displacement
layers are generated exactly by expm of the truncated ladder operators.
The figure of merit is the subspace infidelity

    1 - |Tr(U^dag U~[:24, :24])|^2 / 24^2,

minimized with L-BFGS using analytic gradients (diagonal phase
derivatives for SNAP, Frechet derivatives of expm for displacements).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.optimize

SUBSPACE = 24
DEFAULT_TRUNC = 48


@dataclass(frozen=True)
class SnapDisplacementAnsatz:
    layers: int  # number of SNAP layers K; displacements number K + 1
    snap_phases: np.ndarray  # (K, 24)
    alphas: np.ndarray  # (K + 1,) complex
    n_trunc: int = DEFAULT_TRUNC

    def __post_init__(self):
        sp = np.asarray(self.snap_phases, dtype=float).reshape(self.layers, SUBSPACE)
        al = np.asarray(self.alphas, dtype=complex).reshape(self.layers + 1)
        if self.n_trunc < 32:
            raise ValueError("truncation must be at least 32 levels")
        object.__setattr__(self, "snap_phases", sp)
        object.__setattr__(self, "alphas", al)


def _ladder_generators(n: int):
    sq = np.sqrt(np.arange(1, n))
    adag = np.diag(sq, -1).astype(complex)
    a = adag.conj().T
    return adag - a, 1j * (adag + a)  # directions for Re(alpha), Im(alpha)


def _snap_matrix(phases: np.ndarray, n: int) -> np.ndarray:
    full = np.zeros(n)
    full[:SUBSPACE] = phases
    return np.exp(1j * full)  # diagonal only


def ansatz_unitary(a: SnapDisplacementAnsatz) -> np.ndarray:
    n = a.n_trunc
    ga, gb = _ladder_generators(n)
    u = scipy.linalg.expm(a.alphas[0].real * ga + a.alphas[0].imag * gb)
    for k in range(a.layers):
        u = _snap_matrix(a.snap_phases[k], n)[:, None] * u
        g = a.alphas[k + 1].real * ga + a.alphas[k + 1].imag * gb
        u = scipy.linalg.expm(g) @ u
    return u


def subspace_infidelity(target: np.ndarray, realized: np.ndarray) -> float:
    tr = np.trace(target.conj().T @ realized[:SUBSPACE, :SUBSPACE])
    return float(1.0 - abs(tr) ** 2 / SUBSPACE**2)


def _pack(phases, alphas):
    return np.concatenate([np.ravel(phases),
                           np.asarray(alphas).view(float)])


def _unpack(x, k):
    phases = x[: k * SUBSPACE].reshape(k, SUBSPACE)
    alphas = x[k * SUBSPACE:].view(complex)
    return phases, alphas


def _objective_and_grad(x, target_pad, k, n, ga, gb):
    phases, alphas = _unpack(x, k)
    # forward pass: displacement matrices and left-prefix products
    disp = []
    for al in alphas:
        disp.append((al.real * ga + al.imag * gb))
    dmats = [scipy.linalg.expm(g) for g in disp]
    snaps = [_snap_matrix(p, n) for p in phases]

    # prefix[i]: product of the first i factors (applied first);
    # factor list: D0, S1, D1, ..., Sk, Dk  (2k+1 factors)
    factors = [dmats[0]]
    for i in range(k):
        factors.append(snaps[i])  # stored as diagonal vector
        factors.append(dmats[i + 1])

    m = len(factors)
    prefix = [np.eye(n, dtype=complex)]
    for i, f in enumerate(factors):
        cur = prefix[-1]
        if f.ndim == 1:
            prefix.append(f[:, None] * cur)
        else:
            prefix.append(f @ cur)
    suffix = [np.eye(n, dtype=complex)]
    for f in reversed(factors):
        cur = suffix[-1]
        if f.ndim == 1:
            suffix.append(cur * f[None, :])
        else:
            suffix.append(cur @ f)
    suffix = suffix[::-1]  # suffix[i]: product of factors i..m-1

    u = prefix[-1]
    e = np.trace(target_pad.conj().T @ u)
    fid = abs(e) ** 2 / SUBSPACE**2
    # dInfid = -2 Re(conj(E) dE) / 576
    gphases = np.zeros((k, SUBSPACE))
    galphas = np.zeros(k + 1, dtype=complex)
    for i in range(m):
        # E = Tr(T^dag suffix[i+1] F_i prefix[i]) ; W = prefix[i] T^dag suffix[i+1]
        w = prefix[i] @ target_pad.conj().T @ suffix[i + 1]
        f = factors[i]
        if f.ndim == 1:  # SNAP layer (i odd): dS/dtheta_a = i e^{i theta_a} E_aa
            layer = (i - 1) // 2
            de = 1j * f * np.diag(w)
            gphases[layer] = -2.0 / SUBSPACE**2 * np.real(np.conj(e) * de[:SUBSPACE])
        else:  # displacement layer index i//2
            idx = i // 2
            _, fa = scipy.linalg.expm_frechet(disp[idx], ga)
            _, fb = scipy.linalg.expm_frechet(disp[idx], gb)
            de_re = np.trace(w @ fa)
            de_im = np.trace(w @ fb)
            galphas[idx] = complex(
                -2.0 / SUBSPACE**2 * np.real(np.conj(e) * de_re),
                -2.0 / SUBSPACE**2 * np.real(np.conj(e) * de_im),
            )
    grad = _pack(gphases, galphas)
    return 1.0 - fid, grad


@dataclass(frozen=True)
class CompileResult:
    ansatz: SnapDisplacementAnsatz
    infidelity: float
    iterations: int
    restarts_used: int


def compile_snap_displacement(
    target: np.ndarray,
    layers: int,
    seed: int = 0,
    n_trunc: int = DEFAULT_TRUNC,
    restarts: int = 3,
    maxiter: int = 400,
    tol: float = 1e-12,
) -> CompileResult:
    """Fit the SNAP/displacement ansatz to a 24-dim unitary target.

    Deterministic for fixed (seed, restarts, maxiter).  The first start
    is structured: zero displacements, first SNAP set to the target's
    diagonal phases — exact whenever the target is diagonal.  Remaining
    starts draw small random parameters.
    """
    target = np.asarray(target, dtype=complex)
    if target.shape != (SUBSPACE, SUBSPACE):
        raise ValueError("target must be 24x24")
    if np.abs(target.conj().T @ target - np.eye(SUBSPACE)).max() > 1e-10:
        raise ValueError("target must be unitary")
    if layers < 1:
        raise ValueError("need at least one SNAP layer")
    n = n_trunc
    ga, gb = _ladder_generators(n)
    target_pad = np.zeros((n, n), dtype=complex)
    target_pad[:SUBSPACE, :SUBSPACE] = target

    rng = np.random.default_rng(seed)
    starts = []
    warm_phases = np.zeros((layers, SUBSPACE))
    warm_phases[0] = np.angle(np.diag(target))
    starts.append(_pack(warm_phases, np.zeros(layers + 1, complex)))
    for _ in range(max(restarts - 1, 0)):
        ph = rng.uniform(-math.pi, math.pi, (layers, SUBSPACE)) * 0.5
        al = (rng.normal(size=layers + 1) + 1j * rng.normal(size=layers + 1)) * 0.3
        starts.append(_pack(ph, al))

    best = None
    iters = 0
    used = 0
    for x0 in starts:
        used += 1
        res = scipy.optimize.minimize(
            _objective_and_grad,
            x0,
            args=(target_pad, layers, n, ga, gb),
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": maxiter, "ftol": 1e-15, "gtol": 1e-12},
        )
        iters += res.nit
        if best is None or res.fun < best.fun:
            best = res
        if best.fun < tol:
            break
    phases, alphas = _unpack(best.x, layers)
    ansatz = SnapDisplacementAnsatz(layers, phases, alphas, n)
    return CompileResult(ansatz, float(best.fun), iters, used)


def displacement_norm_leakage(alpha: complex, n_trunc: int = DEFAULT_TRUNC) -> float:
    """Deviation of the truncated displacement from unitarity on the
    computational subspace (truncation-error monitor)."""
    ga, gb = _ladder_generators(n_trunc)
    d = scipy.linalg.expm(alpha.real * ga + alpha.imag * gb)
    block = d[:, :SUBSPACE]
    return float(np.abs(block.conj().T @ block - np.eye(SUBSPACE)).max())
