import math

import numpy as np
import pytest
from scipy.optimize import minimize

from geoment.errors import CapacityExceeded, InvalidParams, UnknownCatalogIndex
from geoment.optimizer import OptimizerConfig, best_rank_one
from geoment.oracles import (dicke_overlap_oracle, qudit_overlap_oracle, w_cubic_residual,
                             w_superposition_overlap_oracle, weighted_w_overlap_oracle)
from geoment.partition import Partition
from geoment.states import (PHI_CATALOG, Family, StateFamily, bssb4_family_state, bssb4_state,
                            dicke_state, family_state, from_kets, ghz_state, phi_state,
                            qudit_symmetric_state, support_state, w_superposition_state,
                            weighted_w_axes, weighted_w_state)
from geoment.tensor import frobenius_norm, merge_indices


def symmetric_product_overlap(T, grid=400):
    """max over theta of |<(cos t, sin t)^{(x)n} | T>|, by grid search plus polish.

    For a state with nonnegative amplitudes that is permutation symmetric,
    the closest product state is a symmetric real product state.
    """
    n = T.order

    def neg(theta):
        v = np.array([math.cos(theta[0]), math.sin(theta[0])])
        out = T.array
        for _ in range(n):
            out = out @ v
        return -abs(complex(out))

    ts = np.linspace(0, math.pi / 2, grid)
    t0 = ts[np.argmin([neg([t]) for t in ts])]
    return -minimize(neg, [t0], method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-15}).fun


def test_dicke_state_examples():
    w = dicke_state(3, 2)
    nz = np.argwhere(np.abs(w.array) > 0)
    assert sorted(map(tuple, nz)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert np.allclose(w.array[np.abs(w.array) > 0], 1 / math.sqrt(3))
    prod = dicke_state(4, 0)
    assert prod.array[1, 1, 1, 1] == 1 and np.count_nonzero(prod.array) == 1
    s52 = dicke_state(5, 2)
    assert np.count_nonzero(s52.array) == 10
    assert np.allclose(s52.array[np.abs(s52.array) > 0], 1 / math.sqrt(10))
    with pytest.raises(InvalidParams):
        dicke_state(3, 4)


@pytest.mark.parametrize("n,k,expected", [(4, 2, 0.6124), (6, 3, 0.5590), (5, 1, 0.6400)])
def test_dicke_oracle_table_values(n, k, expected):
    assert abs(dicke_overlap_oracle(n, k) - expected) < 1e-4


def test_dicke_oracle_endpoints_and_symmetry():
    for n in range(1, 9):
        assert dicke_overlap_oracle(n, 0) == 1.0
        assert dicke_overlap_oracle(n, n) == 1.0
        for k in range(n + 1):
            assert dicke_overlap_oracle(n, k) == dicke_overlap_oracle(n, n - k)
    with pytest.raises(InvalidParams):
        dicke_overlap_oracle(3, -1)


@pytest.mark.parametrize("n,k", [(3, 1), (4, 1), (5, 2), (6, 3)])
def test_dicke_oracle_matches_symmetric_grid_search(n, k):
    assert abs(dicke_overlap_oracle(n, k) - symmetric_product_overlap(dicke_state(n, k))) < 1e-9


def test_w_oracle_endpoints():
    assert w_superposition_overlap_oracle(1.0).lambda_ == pytest.approx(2 / 3, abs=1e-12)
    assert w_superposition_overlap_oracle(0.0).lambda_ == pytest.approx(2 / 3, abs=1e-12)
    assert dicke_overlap_oracle(3, 2) == pytest.approx(math.sqrt(3) * (2 / 3) * (1 / 3) ** 0.5)
    with pytest.raises(InvalidParams):
        w_superposition_overlap_oracle(1.5)


def test_w_oracle_cubic_residual_on_grid():
    for s in np.linspace(0, 1, 201):
        ctx = w_superposition_overlap_oracle(s)
        assert w_cubic_residual(s, ctx.t) < 1e-10
        assert ctx.theta == pytest.approx(math.atan(ctx.t))


def test_w_oracle_matches_grid_search():
    for s in np.linspace(0, 1, 11):
        T = w_superposition_state(s, 0.0)
        assert abs(w_superposition_overlap_oracle(s).lambda_ - symmetric_product_overlap(T)) < 1e-9


def test_w_oracle_matches_optimizer_at_half():
    r = best_rank_one(w_superposition_state(0.5, 0.0))
    assert abs(r.overlap - w_superposition_overlap_oracle(0.5).lambda_) < 1e-4


def test_w_superposition_state():
    assert np.allclose(w_superposition_state(1.0, 1.3).array, dicke_state(3, 2).array)
    assert np.allclose(w_superposition_state(0.0, 0.0).array, dicke_state(3, 1).array)
    e0 = best_rank_one(w_superposition_state(0.5, 0.0)).entanglement
    e1 = best_rank_one(w_superposition_state(0.5, math.pi / 3)).entanglement
    assert abs(e0 - e1) < 1e-6


def test_qudit_state():
    T = qudit_symmetric_state(3, 4)
    assert T.dims == (4, 4, 4)
    assert np.count_nonzero(T.array) == 3
    assert T.array[3, 0, 0] == pytest.approx(1 / math.sqrt(3))
    for n in (2, 3, 4):
        assert np.array_equal(qudit_symmetric_state(n, 2).array, dicke_state(n, n - 1).array)
    with pytest.raises(CapacityExceeded):
        qudit_symmetric_state(5, 50, cap=1000)
    with pytest.raises(InvalidParams):
        qudit_symmetric_state(1, 3)


@pytest.mark.parametrize("n,expected", [(4, 0.6495), (5, 0.6400), (6, 0.6339)])
def test_qudit_oracle(n, expected):
    assert abs(qudit_overlap_oracle(n) - expected) < 1e-4


def test_qudit_oracle_n2():
    assert qudit_overlap_oracle(2) == pytest.approx(1 / math.sqrt(2))


@pytest.mark.parametrize("n,d", [(4, 10), (3, 7)])
def test_qudit_optimizer(n, d):
    assert abs(best_rank_one(qudit_symmetric_state(n, d)).overlap - qudit_overlap_oracle(n)) < 5e-4


def test_weighted_w_oracle_examples():
    assert weighted_w_overlap_oracle([1, 2, 3], Partition([[2], [0, 1]])) == pytest.approx(9 / 14)
    assert abs(9 / 14 - 0.6428) < 1e-4
    assert weighted_w_overlap_oracle([1, 2, 3, 4], Partition([[2, 3], [0, 1]])) == pytest.approx(25 / 30)
    for i in range(3):
        rest = [j for j in range(3) if j != i]
        assert weighted_w_overlap_oracle([1, 1, 1], Partition([[i], rest])) == pytest.approx(2 / 3)
    with pytest.raises(InvalidParams):
        weighted_w_overlap_oracle([1, -2, 3], Partition([[2], [0, 1]]))
    with pytest.raises(InvalidParams):
        weighted_w_overlap_oracle([1, 2, 3], Partition([[0], [1], [2]]))


def test_weighted_w_state_layout():
    T = weighted_w_state([1, 2, 3])
    # gamma_1 on |001>, gamma_3 on |100>
    assert T.array[0, 0, 1] == pytest.approx(1 / math.sqrt(14))
    assert T.array[1, 0, 0] == pytest.approx(3 / math.sqrt(14))
    assert weighted_w_axes([[2], [0, 1]], 3) == [[0], [2, 1]]


@pytest.mark.parametrize("gammas", [[1, 2, 3], [0.5, 1.5, 0.7], [1, 2, 3, 4], [2, 1, 1, 3]])
def test_weighted_w_oracle_matches_optimizer_on_all_bipartitions(gammas):
    from geoment.hierarchy import partition_gme
    from geoment.partition import enumerate_partitions

    T = weighted_w_state(gammas)
    for P in enumerate_partitions(len(gammas), n_blocks=2):
        axes = Partition(weighted_w_axes(P.blocks, len(gammas)))
        lam = partition_gme(T, axes).overlap
        assert abs(lam ** 2 - weighted_w_overlap_oracle(gammas, P)) < 1e-9


def test_every_constructor_is_unit_norm():
    states = [dicke_state(5, 2), ghz_state(4), w_superposition_state(0.3, 1.0),
              qudit_symmetric_state(3, 5), weighted_w_state([1, 2, 3, 4]),
              bssb4_state(), bssb4_family_state(0.4)]
    states += [family_state(StateFamily(f)) for f in
               (Family.W5, Family.HS, Family.L, Family.BSSB5, Family.BSSB4_FAMILY)]
    states += [phi_state(*key) for key in PHI_CATALOG]
    for T in states:
        assert abs(frobenius_norm(T) - 1) < 1e-14


def test_phi_catalog_shapes():
    for (n, i), kets in PHI_CATALOG.items():
        assert all(len(k) == n for k in kets), (n, i)
        assert len(set(kets)) == len(kets)
        assert np.count_nonzero(phi_state(n, i).array) == len(kets)
    with pytest.raises(UnknownCatalogIndex):
        phi_state(4, 9)


def test_phi_4_1():
    r = best_rank_one(phi_state(4, 1))
    assert abs(r.overlap - 0.5) < 5e-4
    assert abs(r.entanglement - 0.75) < 5e-4


def test_phi_5_1():
    r = best_rank_one(phi_state(5, 1))
    assert abs(r.overlap - 0.4329) < 5e-4
    assert abs(r.entanglement - 0.8126) < 5e-4


def test_bssb4_family_at_i_is_bssb4():
    assert np.allclose(bssb4_family_state(math.pi / 2).array, bssb4_state().array)


def test_from_kets_left_pads_and_validates():
    T = from_kets(3, [("1", 1)])
    assert T.array[0, 0, 1] == 1
    with pytest.raises(InvalidParams):
        from_kets(2, [("012", 1)])


def test_support_state():
    T = support_state(2, [0, 3])
    assert np.allclose(T.array, np.diag([1, 1]) / math.sqrt(2))


def test_family_registry_parsing():
    T = StateFamily("hs", {"t": "2.0943951023931953"}).build()
    assert np.allclose(T.array, family_state(StateFamily(Family.HS)).array)
    assert np.allclose(StateFamily("phi", {"index": "5,1"}).build().array, phi_state(5, 1).array)
    assert np.allclose(StateFamily("weighted-w3", {"gammas": "1,2,3"}).build().array,
                       weighted_w_state([1, 2, 3]).array)
    assert StateFamily("dicke", {"n": "4", "k": "2"}).build().dims == (2,) * 4
    with pytest.raises(InvalidParams):
        StateFamily("nope")
    with pytest.raises(InvalidParams):
        StateFamily("hs", {"q": 1}).build()
    with pytest.raises(InvalidParams):
        StateFamily("dicke", {"n": "four", "k": 1}).build()
    with pytest.raises(InvalidParams):
        StateFamily("weighted-w3", {"gammas": "1,2"}).build()


def test_l_family_constant():
    cfg = OptimizerConfig(restarts=20, seed=3)
    for t in (0.3, 2.0, 4.4):
        assert abs(best_rank_one(StateFamily("l", {"t": t}).build(), cfg).entanglement - 0.6667) < 1e-3
