import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hiernet.analytics as an
from hiernet.core import ClusterRef, InvalidRefError, validate
from hiernet.gen import GenParams, generate_network
from conftest import build_model


# -- frozen worked-example values (oracle-confirmed) -------------------------


def test_counts(demo9):
    assert an.edge_count(demo9) == 18
    assert an.triangle_count(demo9) == 17
    assert an.four_cycle_count(demo9) == 43
    assert an.wedge_count(demo9) == 68


def test_per_cluster_counts(demo9):
    assert an.edge_count(demo9, ClusterRef(1, 1)) == 2
    assert an.edge_count(demo9, ClusterRef(1, 2)) == 3
    assert an.edge_count(demo9, ClusterRef(1, 3)) == 1
    assert an.wedge_count(demo9, ClusterRef(1, 1)) == 1
    assert an.wedge_count(demo9, ClusterRef(1, 2)) == 3
    assert an.triangle_count(demo9, ClusterRef(1, 1)) == 0
    assert an.four_cycle_count(demo9, ClusterRef(1, 2)) == 0
    assert an.edge_count(demo9, ClusterRef(0, 4)) == 0
    with pytest.raises(InvalidRefError):
        an.edge_count(demo9, ClusterRef(3, 1))
    with pytest.raises(InvalidRefError):
        an.triangle_count(demo9, ClusterRef(1, 4))


def test_degrees(demo9):
    assert [an.node_degree(demo9, x) for x in range(1, 10)] == [5, 5, 6, 4, 6, 4, 4, 1, 1]
    assert an.node_degrees(demo9).tolist() == [5, 5, 6, 4, 6, 4, 4, 1, 1]
    with pytest.raises(InvalidRefError):
        an.node_degree(demo9, 10)


def test_degree_distribution(demo9):
    assert an.degree_distribution(demo9).as_dict() == {1: 2, 4: 3, 5: 2, 6: 2}


def test_triangles_at_node(demo9):
    assert an.triangles_at_node(demo9, 5) == 11
    assert an.triangles_at_node(demo9, 8) == 0
    assert an.triangles_at_all_nodes(demo9).tolist() == [7, 7, 11, 5, 11, 5, 5, 0, 0]


def test_clustering(demo9):
    assert an.clustering_coefficient(demo9, 5) == pytest.approx(22 / 30)
    assert an.clustering_coefficient(demo9, 8) == 0.0
    vals = an.clustering_values(demo9)
    assert vals[4] == pytest.approx(22 / 30)
    assert vals[7] == 0.0


def test_distances(demo9):
    assert an.distance(demo9, 1, 4) == 1
    assert an.distance(demo9, 1, 2) == 2
    assert an.distance(demo9, 1, 8) is None
    assert an.distance(demo9, 3, 3) == 0
    assert an.distance(demo9, 8, 9) == 1
    with pytest.raises(InvalidRefError):
        an.distance(demo9, 0, 5)


def test_distance_distribution(demo9):
    h = an.distance_distribution(demo9)
    assert h.as_dict() == {1: 18, 2: 4}
    assert h.unreachable == 14
    assert h.total() == 9 * 8 // 2


def test_diameter_and_components(demo9):
    assert an.diameter(demo9) == 2
    assert an.component_sizes(demo9) == [7, 2]


# -- complete-graph and degenerate checks ------------------------------------


def test_k4_counts(k4):
    assert an.edge_count(k4) == 6
    assert an.wedge_count(k4) == 12
    assert an.triangle_count(k4) == 4
    assert an.four_cycle_count(k4) == 3
    assert an.diameter(k4) == 1
    assert an.component_sizes(k4) == [4]
    assert an.distance_distribution(k4).as_dict() == {1: 6}
    assert all(an.clustering_coefficient(k4, x) == 1.0 for x in range(1, 5))


def test_single_node_network():
    m = generate_network(GenParams(mode="by-levels", p=3, mu=0.5, seed=1, gamma=0))
    assert an.edge_count(m) == 0
    assert an.node_degree(m, 1) == 0
    assert an.degree_distribution(m).as_dict() == {0: 1}
    assert an.distance_distribution(m).counts == ()
    assert an.diameter(m) == 0
    assert an.component_sizes(m) == [1]
    assert an.triangles_at_node(m, 1) == 0


def test_all_zero_bitmaps():
    m = build_model(3, [[2, 3], [2]], [["0", "000"], ["0"]])
    assert an.edge_count(m) == 0
    assert an.component_sizes(m) == [1] * 5
    h = an.distance_distribution(m)
    assert h.counts == () and h.unreachable == 10


def test_mu_zero_is_complete():
    m = generate_network(GenParams(mode="regular", p=3, mu=0.0, seed=3, gamma=3))
    n = m.shape.n
    assert an.edge_count(m) == n * (n - 1) // 2
    assert an.degree_distribution(m).as_dict() == {n - 1: n}
    assert an.diameter(m) == 1
    assert an.component_sizes(m) == [n]


# -- identities on random networks -------------------------------------------


@given(st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_count_identities(seed):
    p = 2 + seed % 4
    n = 2 + seed % 120
    mu = (0.1, 0.5, 1.0)[seed % 3]
    m = generate_network(GenParams(mode="by-nodes", p=p, mu=mu, seed=seed, n=n))
    deg = an.node_degrees(m)
    assert int(deg.sum()) == 2 * an.edge_count(m)
    assert int(np.sum(deg * (deg - 1) // 2)) == an.wedge_count(m)
    assert int(an.triangles_at_all_nodes(m).sum()) == 3 * an.triangle_count(m)
    h = an.degree_distribution(m)
    assert h.total() == n
    hd = an.distance_distribution(m)
    assert hd.total() == n * (n - 1) // 2
    comps = an.component_sizes(m)
    assert sum(comps) == n and sorted(comps, reverse=True) == comps
    if hd.counts:
        assert an.diameter(m) == max(v for v, _ in hd.counts)


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_aggregate_consistency_across_levels(seed):
    # the root aggregate must follow from any level's aggregates re-merged,
    # so per-cluster values of every level are internally consistent
    m = generate_network(GenParams(mode="by-nodes", p=3, mu=0.5, seed=seed, n=40))
    aggs = an.cluster_aggregates(m)
    shape = m.shape
    for g in range(1, shape.gamma + 1):
        assert int(aggs[g - 1].v.sum()) == shape.n
        assert aggs[g - 1].e.sum() <= aggs[-1].e[0]
    # child edges never exceed the parent's
    for g in range(2, shape.gamma + 1):
        lo = 0
        for i in range(1, shape.n_clusters(g) + 1):
            hi = lo + shape.count(g, i)
            assert int(aggs[g - 2].e[lo:hi].sum()) <= int(aggs[g - 1].e[i - 1])
            lo = hi


# -- engine dtype strategy ---------------------------------------------------


def test_object_dtype_matches_int64(monkeypatch):
    params = GenParams(mode="by-nodes", p=4, mu=0.3, seed=77, n=150)
    m1 = generate_network(params)
    base = (
        an.edge_count(m1),
        an.wedge_count(m1),
        an.triangle_count(m1),
        an.four_cycle_count(m1),
    )
    monkeypatch.setattr(an, "_INT64_SAFE_NODES", 0)
    m2 = generate_network(params)
    forced = (
        an.edge_count(m2),
        an.wedge_count(m2),
        an.triangle_count(m2),
        an.four_cycle_count(m2),
    )
    assert an.cluster_aggregates(m2)[-1].e.dtype == object
    assert forced == base
    assert an.node_degrees(m2).tolist() == an.node_degrees(m1).tolist()
    assert an.distance_distribution(m2) == an.distance_distribution(m1)


def test_large_counts_stay_exact():
    # mu=0 regular p=3 gamma=8: complete graph on 6561 nodes; closed forms
    # for K_n push C4 beyond 2**53 so float contamination would show
    m = generate_network(GenParams(mode="regular", p=3, mu=0.0, seed=1, gamma=8))
    n = m.shape.n
    assert an.edge_count(m) == n * (n - 1) // 2
    assert an.triangle_count(m) == math.comb(n, 3)
    assert an.four_cycle_count(m) == 3 * math.comb(n, 4)
    assert an.wedge_count(m) == n * math.comb(n - 1, 2)


# -- distance engine vs per-pair recomputation -------------------------------


@given(st.integers(0, 10**5))
@settings(max_examples=25, deadline=None)
def test_distribution_agrees_with_pointwise_distance(seed):
    m = generate_network(GenParams(mode="by-nodes", p=4, mu=0.8, seed=seed, n=24))
    n = m.shape.n
    hist: dict[int, int] = {}
    unreachable = 0
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            d = an.distance(m, x, y)
            if d is None:
                unreachable += 1
            else:
                hist[d] = hist.get(d, 0) + 1
    h = an.distance_distribution(m)
    assert h.as_dict() == hist
    assert h.unreachable == unreachable


def test_read_only_outputs(demo9):
    with pytest.raises(ValueError):
        an.node_degrees(demo9)[0] = 99
