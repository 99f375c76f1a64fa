"""Tree-traversal statistics of block-hierarchical networks.

Everything here is computed on the node-link tree itself; adjacency is
never expanded.  The key fact is that a set bit joins two sub-clusters
completely, node by node, so any small pattern (edge, wedge, triangle,
four-cycle) decomposes by how it straddles the children of a vertex, and
each count obeys an exact bottom-up recurrence over per-cluster aggregates
(nodes, edges, wedges, triangles, four-cycles).

Per-node quantities (degree, triangles through a node) follow from one
leaf-to-root climb; whole-network distributions reuse the same per-vertex
terms in vectorised top-down passes.  A distance query collapses to a
breadth-first search over the at most p children of the two nodes' lowest
common cluster, plus a possible two-step detour through any ancestor that
links the chain sideways, which keeps it at O(gamma + p**2); the pair
distance distribution needs only one pass over clusters because every pair
with the same (cluster, child, child) triple shares one distance.

Aggregate arithmetic is exact.  Levels whose largest cluster holds at most
40000 nodes run vectorised int64 (the largest intermediate product then
stays below 2**63); bigger levels switch to object arrays of Python ints,
which only the top few vertices of a deep tree ever reach.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .core import (
    ClusterRef,
    InvalidRefError,
    NetworkModel,
    node_path,
    pair_index,
)

__all__ = [
    "ClusterAggregates",
    "Histogram",
    "cluster_aggregates",
    "node_degree",
    "node_degrees",
    "degree_distribution",
    "edge_count",
    "wedge_count",
    "triangle_count",
    "four_cycle_count",
    "triangles_at_node",
    "triangles_at_all_nodes",
    "clustering_coefficient",
    "clustering_values",
    "distance",
    "distance_distribution",
    "diameter",
    "component_sizes",
]

_INT64_SAFE_NODES = 40_000


@dataclass(frozen=True)
class ClusterAggregates:
    """Per-cluster pattern counts for one level, arrays indexed by cluster.

    v: nodes covered; e: edges; p2: wedges (unordered 2-edge paths);
    c3: triangles; c4: four-cycles (distinct 4-edge cycle subgraphs).
    dtype is int64 or object (exact Python ints) per the module contract.
    """

    v: np.ndarray
    e: np.ndarray
    p2: np.ndarray
    c3: np.ndarray
    c4: np.ndarray


@dataclass(frozen=True)
class Histogram:
    """Sorted (value, count) pairs; `unreachable` holds disconnected pairs."""

    counts: tuple[tuple[int, int], ...]
    unreachable: int = 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def total(self) -> int:
        return sum(c for _, c in self.counts) + self.unreachable


# -- small cached pair-geometry tables --------------------------------------


@lru_cache(maxsize=None)
def _pairs(c: int) -> tuple[tuple[int, int], ...]:
    # 0-based, in the same lexicographic order as pair_index
    return tuple((i, j) for i in range(c) for j in range(i + 1, c))


@lru_cache(maxsize=None)
def _pair_offsets(c: int) -> dict[tuple[int, int], int]:
    return {pair: t for t, pair in enumerate(_pairs(c))}


def _comb2(x):
    return x * (x - 1) // 2


def _object_array(arr: np.ndarray) -> np.ndarray:
    # tolist() yields Python ints, immune to int64 wraparound
    out = np.empty(arr.shape, dtype=object)
    out[...] = arr.tolist()
    return out


def _level_groups(shape, g: int):
    """Yield (c, sel, child_idx) for level-g clusters grouped by child count.

    `sel` are 0-based cluster indices with count c; `child_idx` is the
    (len(sel), c) matrix of their children's 0-based indices in level g-1.
    """
    counts = shape.counts_at(g)
    starts = shape.child_start_at(g)
    for c in np.unique(counts):
        c = int(c)
        sel = np.nonzero(counts == c)[0]
        idx = starts[sel][:, None] + np.arange(c, dtype=np.int64)[None, :]
        yield c, sel, idx


def _bits_matrix(links, g: int, sel: np.ndarray, c: int) -> np.ndarray:
    nb = c * (c - 1) // 2
    if nb == 0:
        return np.zeros((len(sel), 0), dtype=np.int64)
    starts = links.starts_at(g)
    idx = starts[sel][:, None] + np.arange(nb, dtype=np.int64)[None, :]
    return links.flat_at(g)[idx].astype(np.int64)


def _w_matrices(B, Vm, Em=None):
    """Per child a: W[:, a] = sum of linked sibling node counts, WE likewise for edges."""
    W = np.zeros_like(Vm)
    WE = np.zeros_like(Em) if Em is not None else None
    for t, (i, j) in enumerate(_pairs(Vm.shape[1])):
        bt = B[:, t]
        W[:, i] = W[:, i] + bt * Vm[:, j]
        W[:, j] = W[:, j] + bt * Vm[:, i]
        if Em is not None:
            WE[:, i] = WE[:, i] + bt * Em[:, j]
            WE[:, j] = WE[:, j] + bt * Em[:, i]
    return W, WE


# -- bottom-up aggregate engine ---------------------------------------------


def cluster_aggregates(model: NetworkModel) -> tuple[ClusterAggregates, ...]:
    """Aggregates of every internal level, bottom-up; cached on the model."""
    if model._aggregates is None:
        model._aggregates = _compute_aggregates(model)
    return model._aggregates


def _compute_aggregates(model: NetworkModel) -> tuple[ClusterAggregates, ...]:
    shape, links = model.shape, model.links
    out: list[ClusterAggregates] = []
    prev: ClusterAggregates | None = None  # level below; None means leaves
    for g in range(1, shape.gamma + 1):
        sizes = shape.sizes_at(g)
        n_cl = len(sizes)
        big = bool(n_cl) and int(sizes.max()) > _INT64_SAFE_NODES
        dtype = object if big else np.int64
        V = _object_array(sizes) if big else sizes.astype(np.int64)
        E = np.zeros(n_cl, dtype)
        P2 = np.zeros(n_cl, dtype)
        C3 = np.zeros(n_cl, dtype)
        C4 = np.zeros(n_cl, dtype)
        for c, sel, idx in _level_groups(shape, g):
            m = len(sel)
            if prev is None:
                Vm = np.ones((m, c), dtype)
                Em = np.zeros((m, c), dtype)
                P2m = np.zeros((m, c), dtype)
                C3m = np.zeros((m, c), dtype)
                C4m = np.zeros((m, c), dtype)
            else:
                Vm, Em, P2m, C3m, C4m = (
                    a[idx] for a in (prev.v, prev.e, prev.p2, prev.c3, prev.c4)
                )
                if big and Vm.dtype != object:
                    Vm, Em, P2m, C3m, C4m = (
                        _object_array(a) for a in (Vm, Em, P2m, C3m, C4m)
                    )
            B = _bits_matrix(links, g, sel, c)
            e, p2, c3, c4 = _merge_children(B, Vm, Em, P2m, C3m, C4m)
            E[sel] = e
            P2[sel] = p2
            C3[sel] = c3
            C4[sel] = c4
        agg = ClusterAggregates(v=V, e=E, p2=P2, c3=C3, c4=C4)
        out.append(agg)
        prev = agg
    return tuple(out)


def _merge_children(B, Vm, Em, P2m, C3m, C4m):
    """One level of the aggregate recurrences, vectorised over clusters.

    Rows are clusters sharing child count c, columns their children.  Each
    term mirrors one way a pattern can straddle the children, using that a
    set bit joins two children completely:

      edges      child edges, plus Vi*Vj per set pair;
      wedges     child wedges, plus centre-in-a-child arms (2*Ei*Wi: an
                 internal edge extended sideways) and V*C(W,2) (both arms
                 crossing out of the centre's child);
      triangles  child triangles, plus edge-with-apex (Ei*Wi) and one node
                 in each of three mutually linked children;
      4-cycles   child cycles; two-children terms (wedge plus apex, two
                 disjoint internal edges, pure bipartite quad); bowtie and
                 edge-with-two-apexes terms across three children; one node
                 in each of four children, over the 3 cyclic pairings.
    """
    m, c = Vm.shape
    pairs = _pairs(c)
    toff = _pair_offsets(c)
    W, WE = _w_matrices(B, Vm, Em)
    E = Em.sum(axis=1)
    P2 = P2m.sum(axis=1) + (2 * Em * W + Vm * _comb2(W)).sum(axis=1)
    C3 = C3m.sum(axis=1) + (Em * W).sum(axis=1)
    C4 = C4m.sum(axis=1)

    def bit(a, b):
        return B[:, toff[(a, b) if a < b else (b, a)]]

    for t, (i, j) in enumerate(pairs):
        bt = B[:, t]
        E = E + bt * (Vm[:, i] * Vm[:, j])
        C4 = C4 + bt * (
            P2m[:, i] * Vm[:, j]
            + P2m[:, j] * Vm[:, i]
            + _comb2(Vm[:, i]) * _comb2(Vm[:, j])
            + 2 * (Em[:, i] * Em[:, j])
        )
    for i, j, k in combinations(range(c), 3):
        C3 = C3 + bit(i, j) * bit(j, k) * bit(i, k) * (Vm[:, i] * Vm[:, j] * Vm[:, k])
    for i in range(c):
        for j, k in combinations([x for x in range(c) if x != i], 2):
            both = bit(i, j) * bit(i, k)
            wings = Vm[:, j] * Vm[:, k]
            C4 = C4 + both * wings * _comb2(Vm[:, i])
            C4 = C4 + 2 * both * bit(j, k) * wings * Em[:, i]
    for i, j, k, l in combinations(range(c), 4):
        vv = Vm[:, i] * Vm[:, j] * Vm[:, k] * Vm[:, l]
        rings = (
            bit(i, j) * bit(j, k) * bit(k, l) * bit(l, i)
            + bit(i, j) * bit(j, l) * bit(l, k) * bit(k, i)
            + bit(i, k) * bit(k, j) * bit(j, l) * bit(l, i)
        )
        C4 = C4 + vv * rings
    return E, P2, C3, C4


# -- whole-network and per-cluster counts ------------------------------------


def _agg_value(model: NetworkModel, cluster: ClusterRef | None, field: str) -> int:
    shape = model.shape
    if cluster is None:
        if shape.gamma == 0:
            return 1 if field == "v" else 0
        cluster = ClusterRef(shape.gamma, 1)
    g, i = cluster.gamma, cluster.index
    if g == 0:
        if not 1 <= i <= shape.n:
            raise InvalidRefError(f"no node {i} in a {shape.n}-node network")
        return 1 if field == "v" else 0
    if not 1 <= g <= shape.gamma:
        raise InvalidRefError(f"no level {g} in a {shape.gamma}-level model")
    if not 1 <= i <= shape.n_clusters(g):
        raise InvalidRefError(f"no cluster {i} at level {g}")
    agg = cluster_aggregates(model)[g - 1]
    return int(getattr(agg, field)[i - 1])


def edge_count(model: NetworkModel, cluster: ClusterRef | None = None) -> int:
    """Edges inside a cluster's induced graph; whole network when cluster is None."""
    return _agg_value(model, cluster, "e")


def wedge_count(model: NetworkModel, cluster: ClusterRef | None = None) -> int:
    """Unordered 2-edge paths inside a cluster; equals sum of C(degree, 2)."""
    return _agg_value(model, cluster, "p2")


def triangle_count(model: NetworkModel, cluster: ClusterRef | None = None) -> int:
    """Triangles inside a cluster's induced graph."""
    return _agg_value(model, cluster, "c3")


def four_cycle_count(model: NetworkModel, cluster: ClusterRef | None = None) -> int:
    """Distinct 4-edge cycle subgraphs inside a cluster's induced graph."""
    return _agg_value(model, cluster, "c4")


# -- per-node climbs ---------------------------------------------------------


def _child_values(model: NetworkModel, g: int, lo: int, hi: int):
    """(V, E) int64 arrays of the children occupying level g-1 slots [lo, hi).

    V and E of any cluster fit int64 even when the wider aggregates have
    moved to object arrays (both are at most C(n, 2) < 2**63 for supported
    n), so this narrowing is lossless.
    """
    width = hi - lo
    if g == 1:
        return np.ones(width, np.int64), np.zeros(width, np.int64)
    agg = cluster_aggregates(model)[g - 2]
    v, e = agg.v[lo:hi], agg.e[lo:hi]
    if v.dtype == object:
        v = v.astype(np.int64)
        e = e.astype(np.int64)
    return v, e


def node_degree(model: NetworkModel, x: int) -> int:
    """Degree of node x, by one leaf-to-root climb over its chain."""
    deg = 0
    for entry in node_path(model, x):
        g, i, a = entry.gamma, entry.cluster_index, entry.child_pos
        c = model.shape.count(g, i)
        if c == 1:
            continue
        vec = model.links.vector(g, i)
        lo, hi = model.shape.child_range(g, i)
        v, _ = _child_values(model, g, lo, hi)
        for j in range(1, c + 1):
            if j != a and vec[pair_index(min(a, j), max(a, j), c)]:
                deg += int(v[j - 1])
    return deg


def triangles_at_node(model: NetworkModel, x: int) -> int:
    """Triangles through node x, accumulated level by level along its chain.

    At each level the new triangles either use a linked sibling's internal
    edge as the far side, pair one linked sibling node with the degree
    already accumulated below, or take one node from each of two siblings
    that are linked to the chain child and to each other.
    """
    total = 0
    deg_below = 0
    for entry in node_path(model, x):
        g, i, a = entry.gamma, entry.cluster_index, entry.child_pos
        c = model.shape.count(g, i)
        if c == 1:
            continue
        vec = model.links.vector(g, i)
        lo, hi = model.shape.child_range(g, i)
        v, e = _child_values(model, g, lo, hi)

        def linked(m_, s_):
            return int(vec[pair_index(min(m_, s_), max(m_, s_), c)])

        w = 0
        we = 0
        for j in range(1, c + 1):
            if j != a and linked(a, j):
                w += int(v[j - 1])
                we += int(e[j - 1])
        tri = 0
        for j, k in combinations([j for j in range(1, c + 1) if j != a], 2):
            if linked(a, j) and linked(a, k) and linked(j, k):
                tri += int(v[j - 1]) * int(v[k - 1])
        total += we + deg_below * w + tri
        deg_below += w
    return total


def clustering_coefficient(model: NetworkModel, x: int) -> float:
    """2 * triangles_at_node / (d * (d - 1)); 0 by convention when d < 2."""
    d = node_degree(model, x)
    if d < 2:
        return 0.0
    return 2.0 * triangles_at_node(model, x) / (d * (d - 1))


# -- vectorised all-node passes ----------------------------------------------


def _per_node_passes(model: NetworkModel) -> tuple[np.ndarray, np.ndarray]:
    """(degrees, triangles through each node) for all nodes, top-down.

    Carries three per-chain accumulators down the tree: the flat terms
    (linked siblings' edges plus the two-sibling products), the degree, and
    the sum of squared per-level degree increments; triangles then follow
    from S1 + (deg**2 - sumsq) / 2, because the cross products of increments
    from two different levels are exactly the degree-times-new-weight terms.
    """
    if model._node_passes is not None:
        return model._node_passes
    shape = model.shape
    if shape.gamma == 0:
        result = (np.zeros(1, np.int64), np.zeros(1, np.int64))
        for a in result:
            a.flags.writeable = False
        model._node_passes = result
        return result
    agg = cluster_aggregates(model)
    S1 = np.zeros(1, np.int64)
    D = np.zeros(1, np.int64)
    Q = np.zeros(1, np.int64)
    for g in range(shape.gamma, 0, -1):
        width = shape.n_clusters(g - 1)
        S1n = np.empty(width, np.int64)
        Dn = np.empty(width, np.int64)
        Qn = np.empty(width, np.int64)
        for c, sel, idx in _level_groups(shape, g):
            m = len(sel)
            if g == 1:
                Vm = np.ones((m, c), np.int64)
                Em = np.zeros((m, c), np.int64)
            else:
                below = agg[g - 2]
                Vm, Em = below.v[idx], below.e[idx]
                if Vm.dtype == object:  # V and E always fit int64, see _child_values
                    Vm = Vm.astype(np.int64)
                    Em = Em.astype(np.int64)
            B = _bits_matrix(model.links, g, sel, c)
            W, WE = _w_matrices(B, Vm, Em)
            Ct = np.zeros((m, c), np.int64)
            toff = _pair_offsets(c)
            for t, (i, j) in enumerate(_pairs(c)):
                vv = B[:, t] * Vm[:, i] * Vm[:, j]
                for a in range(c):
                    if a != i and a != j:
                        tai = toff[(a, i) if a < i else (i, a)]
                        taj = toff[(a, j) if a < j else (j, a)]
                        Ct[:, a] += vv * B[:, tai] * B[:, taj]
            S1n[idx] = S1[sel][:, None] + WE + Ct
            Dn[idx] = D[sel][:, None] + W
            Qn[idx] = Q[sel][:, None] + W * W
        S1, D, Q = S1n, Dn, Qn
    T = S1 + (D * D - Q) // 2
    D.flags.writeable = False
    T.flags.writeable = False
    model._node_passes = (D, T)
    return model._node_passes


def node_degrees(model: NetworkModel) -> np.ndarray:
    """Degrees of every node, in node order (int64, read-only view)."""
    return _per_node_passes(model)[0]


def triangles_at_all_nodes(model: NetworkModel) -> np.ndarray:
    """Triangles through every node, in node order (int64, read-only view)."""
    return _per_node_passes(model)[1]


def degree_distribution(model: NetworkModel) -> Histogram:
    vals, cnts = np.unique(node_degrees(model), return_counts=True)
    return Histogram(tuple((int(v), int(c)) for v, c in zip(vals, cnts)))


def clustering_values(model: NetworkModel) -> np.ndarray:
    """Clustering coefficient of every node, in node order (float64)."""
    d, t = _per_node_passes(model)
    denom = d.astype(np.float64) * (d - 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(d >= 2, 2.0 * t / np.where(denom > 0, denom, 1.0), 0.0)
    return out


# -- distances ---------------------------------------------------------------


def _reach_flags(model: NetworkModel) -> tuple[np.ndarray, ...]:
    """Per level Gamma..0: whether any strict ancestor links the chain sideways.

    Entry [g][i] answers: walking up from cluster i at level g, does some
    ancestor vertex set a bit between the walked-through child and any
    sibling?  If so, every node under the cluster has a neighbour outside
    it, which bounds cross-cluster distances by 2.
    """
    if model._reach is not None:
        return model._reach
    shape = model.shape
    big_g = shape.gamma
    ex: list[np.ndarray | None] = [None] * (big_g + 1)
    ex[big_g] = np.zeros(1, dtype=bool)
    for g in range(big_g, 0, -1):
        exn = np.empty(shape.n_clusters(g - 1), dtype=bool)
        for c, sel, idx in _level_groups(shape, g):
            B = _bits_matrix(model.links, g, sel, c).astype(bool)
            rowany = np.zeros((len(sel), c), dtype=bool)
            for t, (i, j) in enumerate(_pairs(c)):
                rowany[:, i] |= B[:, t]
                rowany[:, j] |= B[:, t]
            exn[idx] = ex[g][sel][:, None] | rowany
        ex[g - 1] = exn
    model._reach = tuple(ex)
    return model._reach


@lru_cache(maxsize=65536)
def _pattern_distances(c: int, bits: bytes) -> np.ndarray:
    """All-pairs BFS over one child graph pattern; -1 marks unreachable."""
    adj = [[] for _ in range(c)]
    for t, (i, j) in enumerate(_pairs(c)):
        if bits[t]:
            adj[i].append(j)
            adj[j].append(i)
    dist = np.full((c, c), -1, dtype=np.int64)
    for a in range(c):
        dist[a, a] = 0
        queue = deque([a])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if dist[a, w] < 0:
                    dist[a, w] = dist[a, u] + 1
                    queue.append(w)
    dist.flags.writeable = False
    return dist


@lru_cache(maxsize=65536)
def _pattern_components(c: int, bits: bytes) -> tuple[tuple[int, ...], ...]:
    """Connected groups of at least two children in one child graph pattern."""
    dist = _pattern_distances(c, bits)
    seen = [False] * c
    groups = []
    for a in range(c):
        if seen[a]:
            continue
        members = tuple(b for b in range(c) if dist[a, b] >= 0)
        for b in members:
            seen[b] = True
        if len(members) >= 2:
            groups.append(members)
    return tuple(groups)


def distance(model: NetworkModel, x: int, y: int) -> int | None:
    """Exact hop distance between two nodes; None when they are disconnected.

    The lowest cluster containing both nodes decides everything: a direct
    bit between their child positions is distance 1; otherwise the answer
    is the shorter of the child-graph path (whole children act as single
    hops, since cross links are complete) and a two-step detour through any
    ancestor-linked outside cluster.
    """
    shape = model.shape
    if not 1 <= x <= shape.n or not 1 <= y <= shape.n:
        raise InvalidRefError(f"node pair ({x},{y}) outside 1..{shape.n}")
    if x == y:
        return 0
    ix, iy = x - 1, y - 1  # 0-based chain positions at the level below g
    for g in range(1, shape.gamma + 1):
        cx = shape.node_cluster(g, x) - 1
        cy = shape.node_cluster(g, y) - 1
        if cx == cy:
            start = int(shape.child_start_at(g)[cx])
            a, b = ix - start, iy - start
            c = int(shape.counts_at(g)[cx])
            dmat = _pattern_distances(c, model.links.vector(g, cx + 1).tobytes())
            local = int(dmat[a, b])
            shortcut = bool(_reach_flags(model)[g][cx])
            if local == 1:
                return 1
            if local >= 0:
                return min(local, 2) if shortcut else local
            return 2 if shortcut else None
        ix, iy = cx, cy
    return None  # distinct roots cannot happen in a validated model


def _pattern_groups(B: np.ndarray):
    """Group rows of a 0/1 bit matrix by identical pattern.

    Yields (row indices, pattern bytes); the bytes value doubles as the
    lru cache key of the pattern helpers.
    """
    m, nb = B.shape
    if nb == 0:
        yield np.arange(m), b""
        return
    Bu = B.astype(np.uint8)
    packed = np.packbits(Bu, axis=1)
    _, inv = np.unique(packed, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    for u in range(int(inv.max()) + 1):
        rows = np.nonzero(inv == u)[0]
        yield rows, Bu[rows[0]].tobytes()


def _pair_distance_scan(model: NetworkModel):
    """Distance histogram over all unordered node pairs, one pass over clusters.

    Every pair's distance depends only on (lowest common cluster, child
    position, child position), so the scan weights each child pair by the
    product of the two subtree sizes instead of visiting node pairs.
    """
    if model._pair_scan is not None:
        return model._pair_scan
    shape = model.shape
    hist: dict[int, int] = {}
    unreachable = 0
    reach = _reach_flags(model)
    for g in range(1, shape.gamma + 1):
        ex = reach[g]
        for c, sel, idx in _level_groups(shape, g):
            if c < 2:
                continue
            Vm = (
                np.ones((len(sel), c), np.int64)
                if g == 1
                else shape.sizes_at(g - 1)[idx]
            )
            B = _bits_matrix(model.links, g, sel, c)
            for rows, bits in _pattern_groups(B):
                dmat = _pattern_distances(c, bits)
                has_exit = ex[sel[rows]]
                for a, b in _pairs(c):
                    w = Vm[rows, a] * Vm[rows, b]
                    local = int(dmat[a, b])
                    if local == 1:
                        hist[1] = hist.get(1, 0) + int(w.sum())
                        continue
                    w_exit = int(w[has_exit].sum())
                    w_plain = int(w[~has_exit].sum())
                    if local < 0:
                        if w_exit:
                            hist[2] = hist.get(2, 0) + w_exit
                        unreachable += w_plain
                    else:
                        if w_exit:
                            hist[2] = hist.get(2, 0) + w_exit
                        if w_plain:
                            hist[local] = hist.get(local, 0) + w_plain
    model._pair_scan = (hist, unreachable)
    return model._pair_scan


def distance_distribution(model: NetworkModel) -> Histogram:
    """Histogram over all N(N-1)/2 node pairs, disconnected ones bucketed apart."""
    hist, unreachable = _pair_distance_scan(model)
    return Histogram(tuple(sorted(hist.items())), unreachable=unreachable)


def diameter(model: NetworkModel) -> int:
    """Largest finite pairwise distance; 0 when no pair is connected."""
    hist, _ = _pair_distance_scan(model)
    return max(hist) if hist else 0


# -- connectivity ------------------------------------------------------------


def component_sizes(model: NetworkModel) -> list[int]:
    """Connected component sizes, descending.

    Linked children of one vertex merge into a single component spanning
    all their nodes, so every component is either a linked child group of
    some cluster none of whose ancestors link it further, or a single node
    whose whole chain stays unlinked.  One top-down pass with the
    ancestor-exit flags enumerates both kinds.
    """
    shape = model.shape
    if shape.gamma == 0:
        return [1]
    reach = _reach_flags(model)
    chunks: list[np.ndarray] = []
    for g in range(1, shape.gamma + 1):
        free = ~reach[g]
        if not free.any():
            continue
        for c, sel, idx in _level_groups(shape, g):
            rows = np.nonzero(free[sel])[0]
            if len(rows) == 0 or c < 2:
                continue
            Vm = (
                np.ones((len(rows), c), np.int64)
                if g == 1
                else shape.sizes_at(g - 1)[idx[rows]]
            )
            B = _bits_matrix(model.links, g, sel[rows], c)
            for grp, bits in _pattern_groups(B):
                for members in _pattern_components(c, bits):
                    chunks.append(Vm[grp][:, list(members)].sum(axis=1))
    singles = int((~reach[0]).sum())
    if singles:
        chunks.append(np.ones(singles, np.int64))
    if not chunks:
        return []
    sizes = np.concatenate(chunks)
    sizes[::-1].sort()
    return [int(s) for s in sizes]
