"""Best rank-one approximation of a complex tensor by alternating updates.

For a unit-norm state tensor ``T`` the optimizer maximizes
``|<a^1 (x) ... (x) a^m | T>|`` over unit vectors ``a^k``. Holding every
factor but one fixed, the optimum for the free factor is the contraction of
``T`` with the conjugates of the others, normalized; sweeping over the modes
never decreases the overlap. This is the rank-one case of higher-order
orthogonal iteration, where each mode's dominant subspace is a single vector.

Restarts are independent. They are grouped into fixed chunks that run as a
batch (all active restarts of a chunk share each matrix product), and chunks
may be spread across threads; the chunking does not depend on the thread
count, so results are reproducible for a given seed.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidParams, NotMatrix, NotNormalized, ZeroTensor
from .tensor import ComplexTensor, RankOneState, frobenius_norm, full_overlap

# Batch budget in complex entries for the per-chunk left/right Kronecker factors.
_CHUNK_BUDGET = 1 << 22
_TIE_TOL = 1e-12


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 20
    max_iterations: int = 500
    tolerance: float = 1e-12
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise InvalidParams("restarts must be >= 1")
        if self.max_iterations < 1:
            raise InvalidParams("max_iterations must be >= 1")
        if not self.tolerance > 0:
            raise InvalidParams("tolerance must be > 0")
        if not 0 <= self.seed < 2**64:
            raise InvalidParams("seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise InvalidParams("workers must be >= 1")

    def replace(self, **changes) -> "OptimizerConfig":
        from dataclasses import replace
        return replace(self, **changes)


@dataclass(frozen=True)
class GmeResult:
    overlap: float
    entanglement: float
    best_state: RankOneState
    restart_overlaps: tuple[float, ...]
    iterations_used: tuple[int, ...]
    converged: tuple[bool, ...]
    best_restart: int = 0
    histories: tuple[tuple[float, ...], ...] | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "lambda": self.overlap,
            "E": self.entanglement,
            "best_restart": self.best_restart,
            "restart_overlaps": list(self.restart_overlaps),
            "iterations_used": list(self.iterations_used),
            "converged": list(self.converged),
            "factors": [[[z.real, z.imag] for z in f] for f in self.best_state.factors],
        }


def derive_seed(seed: int, *keys: int) -> int:
    """Independent 64-bit child seed for ``keys`` under ``seed``."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in keys))
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return int(lo) | (int(hi) << 32)


def random_factors(dims: Sequence[int], seed: int, restart: int) -> list[np.ndarray]:
    """Unit-norm complex Gaussian starting factors for one restart."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(restart,)))
    out = []
    for n in dims:
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        out.append(v / np.linalg.norm(v))
    return out


def _kron_rows(vecs: list[np.ndarray], batch: int) -> np.ndarray:
    out = np.ones((batch, 1), dtype=np.complex128)
    for v in vecs:
        out = (out[:, :, None] * v[:, None, :]).reshape(batch, -1)
    return out


def _contract_all_but(T: np.ndarray, conj_factors: list[np.ndarray], k: int) -> np.ndarray:
    """Row r: ``T`` contracted with ``conj_factors[j][r]`` for every ``j != k``."""
    batch = conj_factors[0].shape[0]
    dims = T.shape
    left = math.prod(dims[:k])
    right = math.prod(dims[k + 1:])
    nk = dims[k]
    L = _kron_rows(conj_factors[:k], batch)
    R = _kron_rows(conj_factors[k + 1:], batch)
    if left >= right:
        tmp = (L @ T.reshape(left, nk * right)).reshape(batch, nk, right)
        return np.einsum("bkm,bm->bk", tmp, R)
    tmp = (T.reshape(left * nk, right) @ R.T).reshape(left, nk, batch)
    return np.einsum("lkb,bl->bk", tmp, L)


def _run_chunk(T: np.ndarray, inits: list[list[np.ndarray]], max_iterations: int,
               tolerance: float, record_history: bool):
    """Run a batch of restarts to convergence; each row evolves independently."""
    m = T.ndim
    batch = len(inits)
    A = [np.stack([init[k] for init in inits]) for k in range(m)]
    lam = np.zeros(batch)
    iters = np.zeros(batch, dtype=int)
    done = np.zeros(batch, dtype=bool)
    hist: list[list[float]] = [[] for _ in range(batch)]
    active = np.arange(batch)
    prev = np.full(batch, -np.inf)
    for it in range(1, max_iterations + 1):
        conj = [a[active].conj() for a in A]
        for k in range(m):
            v = _contract_all_but(T, conj, k)
            nrm = np.linalg.norm(v, axis=1)
            ok = nrm > 0
            upd = A[k][active]
            upd[ok] = v[ok] / nrm[ok, None]
            A[k][active] = upd
            conj[k] = upd.conj()
        # after the last mode, |lambda| is the norm of the final contraction
        lam[active] = nrm
        iters[active] = it
        if record_history:
            for r, val in zip(active, nrm):
                hist[r].append(float(val))
        fin = np.abs(nrm - prev[active]) < tolerance
        prev[active] = nrm
        done[active[fin]] = True
        active = active[~fin]
        if active.size == 0:
            break
    factors = [[A[k][r].copy() for k in range(m)] for r in range(batch)]
    return lam, iters, done, factors, hist


def best_rank_one(T: ComplexTensor, cfg: OptimizerConfig | None = None, *,
                  initial_factors: Sequence[Sequence[np.ndarray]] | None = None,
                  record_history: bool = False) -> GmeResult:
    """Largest overlap of the unit-norm tensor ``T`` with a product state.

    Parameters
    ----------
    T : ComplexTensor
        State tensor; must already have unit Frobenius norm.
    cfg : OptimizerConfig, optional
        Restart count, iteration cap, tolerance on the change of ``|lambda|``
        between sweeps, seed and thread count.
    initial_factors : list of factor lists, optional
        Explicit starting points, one per restart, overriding the random ones.
    record_history : bool
        Keep the per-sweep ``|lambda|`` sequence of every restart.

    Returns
    -------
    GmeResult
        The best restart (first one within 1e-12 of the maximum), gauge fixed
        so that ``best_state.overlap`` is real and non-negative.
    """
    cfg = cfg or OptimizerConfig()
    nrm = frobenius_norm(T)
    if nrm == 0:
        raise ZeroTensor("tensor is identically zero")
    if abs(nrm - 1) > 1e-9:
        raise NotNormalized(f"tensor norm is {nrm!r}; normalize it first")

    if initial_factors is None:
        inits = [random_factors(T.dims, cfg.seed, r) for r in range(cfg.restarts)]
    else:
        inits = []
        for init in initial_factors:
            fs = [np.asarray(f, dtype=np.complex128).ravel() for f in init]
            if tuple(f.size for f in fs) != T.dims:
                raise InvalidParams("initial factor dims do not match the tensor")
            inits.append([f / np.linalg.norm(f) for f in fs])
        if not inits:
            raise InvalidParams("initial_factors is empty")

    n = len(inits)
    big = max(math.prod(T.dims[:k]) + math.prod(T.dims[k + 1:]) for k in range(T.order))
    chunk = max(1, min(n, _CHUNK_BUDGET // max(big, 1)))
    chunks = [inits[i:i + chunk] for i in range(0, n, chunk)]

    def run(c):
        return _run_chunk(T.array, c, cfg.max_iterations, cfg.tolerance, record_history)

    if cfg.workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            outs = list(pool.map(run, chunks))
    else:
        outs = [run(c) for c in chunks]

    lam = np.concatenate([o[0] for o in outs])
    iters = np.concatenate([o[1] for o in outs])
    done = np.concatenate([o[2] for o in outs])
    factors = [f for o in outs for f in o[3]]
    hists = [h for o in outs for h in o[4]]

    best = int(np.flatnonzero(lam >= lam.max() - _TIE_TOL)[0])
    state = RankOneState(factors[best])
    state = RankOneState(state.factors, full_overlap(T, state)).gauge_fixed()
    overlap = float(lam[best])
    return GmeResult(
        overlap=overlap,
        entanglement=1.0 - overlap * overlap,
        best_state=state,
        restart_overlaps=tuple(float(x) for x in lam),
        iterations_used=tuple(int(x) for x in iters),
        converged=tuple(bool(x) for x in done),
        best_restart=best,
        histories=tuple(tuple(h) for h in hists) if record_history else None,
    )


def geometric_entanglement(T: ComplexTensor, cfg: OptimizerConfig | None = None) -> float:
    return best_rank_one(T, cfg).entanglement


def matrix_svd_oracle(T: ComplexTensor) -> float:
    """Largest singular value of a two-party tensor.

    Uses the top eigenvalue of the smaller Gram matrix, so it shares nothing
    with the alternating loop.
    """
    if T.order != 2:
        raise NotMatrix(f"expected a 2-way tensor, got order {T.order}")
    M = T.array
    G = M @ M.conj().T if M.shape[0] <= M.shape[1] else M.conj().T @ M
    top = np.linalg.eigvalsh(G)[-1]
    return float(math.sqrt(max(top, 0.0)))


def real_bound(dims: Sequence[int]) -> float:
    """``1/sqrt(n_1...n_{m-1})`` with the largest local dimension left out."""
    ds = sorted(int(d) for d in dims)
    return 1.0 / math.sqrt(math.prod(ds[:-1]))


def real_bound_check(result: GmeResult, dims: Sequence[int], slack: float = 1e-12) -> bool:
    """Check ``real_bound(dims) <= overlap <= 1`` for a real-amplitude state.

    The lower end is attained by e.g. the Bell state, so it is tested
    non-strictly (up to ``slack``).
    """
    if len(dims) < 2:
        return abs(result.overlap - 1) <= slack
    return real_bound(dims) - slack <= result.overlap <= 1 + slack
