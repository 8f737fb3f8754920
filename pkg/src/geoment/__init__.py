"""Geometric measure of entanglement via best rank-one tensor approximation."""
from .errors import (CapacityExceeded, CapExceeded, DimensionMismatch, GmeError, InvalidParams,
                     InvalidPartition, NotMatrix, NotNormalized, TooManyParties,
                     UnknownCatalogIndex, ZeroTensor)
from .hierarchy import HierarchyReport, hierarchy_report, partition_gme
from .optimizer import (GmeResult, OptimizerConfig, best_rank_one, geometric_entanglement,
                        matrix_svd_oracle, real_bound_check)
from .oracles import (WOverlapContext, dicke_overlap_oracle, qudit_overlap_oracle,
                      w_superposition_overlap_oracle, weighted_w_overlap_oracle)
from .partition import Partition, enumerate_partitions
from .search import SearchConfig, SweepSpec, exhaustive_search, mc_search, sweep
from .states import (Family, StateFamily, dicke_state, family_state, ghz_state, phi_state,
                     qudit_symmetric_state, w_superposition_state, weighted_w_state)
from .tensor import (ComplexTensor, RankOneState, frobenius_norm, full_overlap, merge_indices,
                     mode_contract, normalize)

__version__ = "0.1.0"
