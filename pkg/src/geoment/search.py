"""Support-set search for highly entangled qubit states, and family sweeps.

A sample places unit amplitudes on ``ones_count`` distinct computational
basis states of ``n_qubits`` qubits, normalizes, and scores the result by
its geometric entanglement. Because a stuck optimizer run underestimates the
overlap (and so overstates the entanglement), every survivor is re-scored
with a larger restart budget before the final ranking.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CapExceeded, InvalidParams
from .optimizer import OptimizerConfig, best_rank_one, derive_seed
from .states import StateFamily, support_state

_SAMPLE_KEY = 1
_CONFIRM_KEY = 2
_SWEEP_KEY = 3


@dataclass(frozen=True)
class SearchHit:
    support: tuple[int, ...]
    overlap: float
    entanglement: float

    def as_dict(self) -> dict:
        return {"support": list(self.support), "lambda": self.overlap, "E": self.entanglement}


@dataclass(frozen=True)
class SearchConfig:
    n_qubits: int
    ones_count: int
    samples: int
    seed: int = 0
    optimizer: OptimizerConfig = field(default_factory=lambda: OptimizerConfig(restarts=8))
    keep_top: int = 10
    confirm_restarts: int = 30
    workers: int = 1

    def __post_init__(self):
        if self.n_qubits < 2:
            raise InvalidParams("need at least two qubits")
        if not 1 <= self.ones_count <= 2 ** self.n_qubits:
            raise InvalidParams(f"ones_count must lie in [1, {2 ** self.n_qubits}]")
        if self.samples < 1:
            raise InvalidParams("samples must be positive")
        if self.keep_top < 1:
            raise InvalidParams("keep_top must be positive")
        if self.confirm_restarts < 1:
            raise InvalidParams("confirm_restarts must be positive")


def _rank(hits: list[SearchHit]) -> list[SearchHit]:
    return sorted(hits, key=lambda h: (-h.entanglement, h.support))


def _evaluate(n: int, support: tuple[int, ...], cfg: OptimizerConfig) -> SearchHit:
    r = best_rank_one(support_state(n, support), cfg)
    return SearchHit(support, r.overlap, r.entanglement)


def _map(fn, items, workers: int):
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def sample_support(n_qubits: int, ones_count: int, seed: int, sample: int) -> tuple[int, ...]:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(_SAMPLE_KEY, sample)))
    return tuple(sorted(int(i) for i in rng.choice(2 ** n_qubits, ones_count, replace=False)))


def confirm(n_qubits: int, hits: Sequence[SearchHit], base: OptimizerConfig,
            restarts: int, seed: int, workers: int = 1) -> list[SearchHit]:
    """Re-score ``hits`` with ``restarts`` restarts each; returns them ranked."""
    def run(h):
        cfg = base.replace(restarts=restarts,
                           seed=derive_seed(seed, _CONFIRM_KEY, *h.support))
        return _evaluate(n_qubits, h.support, cfg)
    return _rank(_map(run, list(hits), workers))


def mc_search(cfg: SearchConfig) -> list[SearchHit]:
    """Sample random equal-weight supports and keep the most entangled ones.

    Returns at most ``keep_top`` distinct supports sorted by decreasing
    entanglement, each re-scored with ``confirm_restarts`` restarts.
    """
    n = cfg.n_qubits
    supports = list(dict.fromkeys(
        sample_support(n, cfg.ones_count, cfg.seed, i) for i in range(cfg.samples)))

    def run(item):
        i, sup = item
        return _evaluate(n, sup, cfg.optimizer.replace(seed=derive_seed(cfg.seed, _SAMPLE_KEY, i)))

    hits = _rank(_map(run, list(enumerate(supports)), cfg.workers))
    top = hits[:cfg.keep_top]
    return confirm(n, top, cfg.optimizer, cfg.confirm_restarts, cfg.seed, cfg.workers)


def exhaustive_search(n_qubits: int, ones_count: int, cfg: OptimizerConfig | None = None,
                      cap: int = 100_000) -> list[SearchHit]:
    """Score every support of size ``ones_count``; sorted by decreasing entanglement."""
    cfg = cfg or OptimizerConfig()
    if n_qubits < 1 or not 1 <= ones_count <= 2 ** n_qubits:
        raise InvalidParams(f"bad sizes n={n_qubits}, ones={ones_count}")
    total = math.comb(2 ** n_qubits, ones_count)
    if total > cap:
        raise CapExceeded(f"{total} supports exceed the cap of {cap}")
    return _rank([_evaluate(n_qubits, sup, cfg)
                  for sup in itertools.combinations(range(2 ** n_qubits), ones_count)])


@dataclass(frozen=True)
class SweepSpec:
    family: StateFamily
    parameter: str
    grid: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(float(x) for x in self.grid))
        if not self.grid:
            raise InvalidParams("sweep grid is empty")


@dataclass(frozen=True)
class SweepRow:
    value: float
    overlap: float
    entanglement: float


def sweep(spec: SweepSpec, cfg: OptimizerConfig | None = None) -> list[SweepRow]:
    """One optimizer run per grid value, each with its own restart seeds."""
    cfg = cfg or OptimizerConfig()

    def run(item):
        i, x = item
        T = spec.family.with_params(**{spec.parameter: x}).build()
        r = best_rank_one(T, cfg.replace(seed=derive_seed(cfg.seed, _SWEEP_KEY, i), workers=1))
        return SweepRow(x, r.overlap, r.entanglement)

    return _map(run, list(enumerate(spec.grid)), cfg.workers)


def parse_grid(text: str) -> tuple[str, tuple[float, ...]]:
    """``"t=0:6.2832:201"`` (start:stop:count, inclusive) or ``"t=0.1,0.2"``."""
    try:
        name, rhs = text.split("=", 1)
        if ":" in rhs:
            lo, hi, num = rhs.split(":")
            grid = np.linspace(float(lo), float(hi), int(num))
        else:
            grid = [float(x) for x in rhs.split(",")]
    except ValueError as exc:
        raise InvalidParams(f"cannot parse grid {text!r}") from exc
    if len(grid) == 0:
        raise InvalidParams("sweep grid is empty")
    return name.strip(), tuple(float(x) for x in grid)
