"""Geometric entanglement across coarse-grainings of the parties.

Grouping parties into blocks and treating each block as one party (index
merging) measures the distance to states that are product only across the
blocks. Evaluating every set partition gives the entanglement hierarchy.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .optimizer import GmeResult, OptimizerConfig, best_rank_one
from .partition import Partition, enumerate_partitions, signature_key
from .tensor import ComplexTensor, merge_indices


@dataclass(frozen=True)
class HierarchyRow:
    label: str
    dims: tuple[int, ...]
    overlap: float
    entanglement: float
    partition: Partition | None = None
    signature: tuple[int, ...] = ()


@dataclass(frozen=True)
class HierarchyReport:
    rows: tuple[HierarchyRow, ...]
    source: str = ""

    def by_label(self) -> dict[str, HierarchyRow]:
        return {r.label: r for r in self.rows}


def partition_gme(T: ComplexTensor, P: Partition, cfg: OptimizerConfig | None = None) -> GmeResult:
    """Best rank-one fit of ``T`` with the parties of each block merged."""
    return best_rank_one(merge_indices(T, P), cfg)


def _dims_label(dims) -> str:
    return "x".join(str(d) for d in dims)


def hierarchy_report(T: ComplexTensor, cfg: OptimizerConfig | None = None,
                     group_by_signature: bool = False, min_blocks: int = 2,
                     source: str = "") -> HierarchyReport:
    """Evaluate every partition of the parties of ``T`` into ``>= min_blocks`` blocks.

    With ``group_by_signature`` one row is kept per multiset of block sizes,
    the one with the largest overlap.
    """
    cfg = cfg or OptimizerConfig()
    parts = [p for p in enumerate_partitions(T.order) if len(p.blocks) >= min_blocks]

    def run(p):
        return partition_gme(T, p, cfg)

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(run, parts, chunksize=1))
    else:
        results = [run(p) for p in parts]

    rows = [HierarchyRow(str(p), p.merged_dims(T.dims), r.overlap, r.entanglement, p, p.signature)
            for p, r in zip(parts, results)]
    if group_by_signature:
        best: dict[tuple[int, ...], HierarchyRow] = {}
        for row in rows:
            cur = best.get(row.signature)
            if cur is None or row.overlap > cur.overlap:
                best[row.signature] = row
        rows = []
        for sig in sorted(best, key=signature_key):
            r = best[sig]
            rows.append(HierarchyRow(",".join(map(str, sig)), tuple(sorted(r.dims)),
                                     r.overlap, r.entanglement, r.partition, sig))
    return HierarchyReport(tuple(rows), source)
