"""Node-link tree data model of block-hierarchical networks.

A network on N nodes is stored as a partition hierarchy plus one bit vector
per internal vertex.  Level gamma of the hierarchy holds n_gamma clusters;
cluster i at that level groups Count(gamma, i) clusters of the level below,
and its bit vector marks which pairs of those sub-clusters are joined.  Two
joined sub-clusters contribute a complete bipartite edge set between their
node sets, so the tree determines the graph exactly.  Leaves (level 0) are
the network nodes, numbered 1..N left to right.

Bits are stored in lexicographic pair order (1,2),(1,3),...,(1,k),(2,3),...,
(k-1,k); `pair_index` maps a pair to its offset, and the serialized text
format writes bit strings in the same order.  Adjacency is never expanded
here; the oracle module materialises edges when verification needs them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "HiernetError",
    "ParamError",
    "InvalidPairError",
    "InvalidRefError",
    "ParseError",
    "ClusterRef",
    "PathEntry",
    "HierarchyShape",
    "LinkTable",
    "NetworkModel",
    "pair_index",
    "psi",
    "cluster_size",
    "node_path",
    "validate",
    "serialize",
    "deserialize",
]

FORMAT_MAGIC = "BHNET 1"


class HiernetError(Exception):
    """Base class for every error raised by this package."""


class ParamError(HiernetError, ValueError):
    """Rejected construction or generation parameter."""


class InvalidPairError(HiernetError, ValueError):
    """Sub-cluster pair positions outside 1..k."""


class InvalidRefError(HiernetError, LookupError):
    """Cluster or node reference outside the tree."""


class ParseError(HiernetError, ValueError):
    """Malformed network text; `line` is the 1-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def pair_index(n: int, s: int, k: int) -> int:
    """Offset of the pair (n, s), n < s, within the bit vector of a k-child vertex.

    Pairs are enumerated lexicographically, (1,2),(1,3),...,(1,k),(2,3),...,
    (k-1,k); offsets run 0..k(k-1)/2 - 1 and the map is a bijection.
    """
    if not 1 <= n < s <= k:
        raise InvalidPairError(f"pair ({n},{s}) invalid for k={k}")
    # pairs whose first element is below n occupy (n-1)(2k-n)/2 leading slots
    return (n - 1) * (2 * k - n) // 2 + (s - n - 1)


@dataclass(frozen=True)
class ClusterRef:
    """Cluster address: level gamma in 0..Gamma and 1-based index within it.

    Level-0 refs are the network nodes themselves; (Gamma, 1) is the root.
    """

    gamma: int
    index: int


@dataclass(frozen=True)
class PathEntry:
    """One level of a node's leaf-to-root chain."""

    gamma: int
    cluster_index: int  # index of the level-gamma cluster containing the node
    child_pos: int      # 1-based position of the level gamma-1 cluster under it


class HierarchyShape:
    """Per-level child counts of the partition tree.

    `levels` is ordered bottom-up: entry 0 holds the child counts of the
    level-1 clusters (whose children are network nodes) and the last entry
    is the root level.  Construction only coerces and freezes the arrays;
    the structural rules live in `validate`, which reports violations
    instead of raising, so deliberately broken shapes can be inspected.
    """

    __slots__ = ("p", "_counts", "_derived_cache")

    def __init__(self, p: int, levels: Iterable[Sequence[int]]):
        if int(p) != p or p < 2:
            raise ParamError(f"p must be an integer >= 2, got {p!r}")
        self.p = int(p)
        frozen = []
        for level in levels:
            arr = np.array(list(level), dtype=np.int64)
            if arr.ndim != 1:
                raise ParamError("each level must be a flat sequence of counts")
            arr.flags.writeable = False
            frozen.append(arr)
        self._counts = tuple(frozen)
        self._derived_cache = None

    # -- basic dimensions ---------------------------------------------------

    @property
    def gamma(self) -> int:
        return len(self._counts)

    @property
    def n(self) -> int:
        if not self._counts:
            return 1
        return int(self._counts[0].sum())

    @property
    def levels(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(c) for c in arr) for arr in self._counts)

    def _check_level(self, gamma: int) -> None:
        if not 1 <= gamma <= len(self._counts):
            raise InvalidRefError(f"no level {gamma} in a {len(self._counts)}-level shape")

    def n_clusters(self, gamma: int) -> int:
        if gamma == 0:
            return self.n
        self._check_level(gamma)
        return len(self._counts[gamma - 1])

    def counts_at(self, gamma: int) -> np.ndarray:
        """Child counts of all clusters at a level, read-only int64."""
        self._check_level(gamma)
        return self._counts[gamma - 1]

    def count(self, gamma: int, i: int) -> int:
        arr = self.counts_at(gamma)
        if not 1 <= i <= len(arr):
            raise InvalidRefError(f"no cluster {i} at level {gamma}")
        return int(arr[i - 1])

    # -- derived navigation arrays ------------------------------------------

    def _derived(self):
        d = self._derived_cache
        if d is not None:
            return d
        sizes, child_start, leaf_cum = [], [], []
        prev_width = None
        prev_sizes = None
        for g, counts in enumerate(self._counts, start=1):
            if (counts < 1).any():
                raise ParamError("shape has counts below 1; run validate() for details")
            if g > 1 and int(counts.sum()) != prev_width:
                raise ParamError("inconsistent level widths; run validate() for details")
            starts = np.zeros(len(counts), dtype=np.int64)
            np.cumsum(counts[:-1], out=starts[1:])
            if g == 1:
                sz = counts.copy()
            else:
                sz = np.add.reduceat(prev_sizes, starts)
            cum = np.cumsum(sz)
            for a in (starts, sz, cum):
                a.flags.writeable = False
            sizes.append(sz)
            child_start.append(starts)
            leaf_cum.append(cum)
            prev_width = len(counts)
            prev_sizes = sz
        d = (tuple(sizes), tuple(child_start), tuple(leaf_cum))
        self._derived_cache = d
        return d

    def sizes_at(self, gamma: int) -> np.ndarray:
        """Node counts of all clusters at a level (gamma >= 1)."""
        self._check_level(gamma)
        return self._derived()[0][gamma - 1]

    def child_start_at(self, gamma: int) -> np.ndarray:
        """0-based index of each cluster's first child within level gamma-1."""
        self._check_level(gamma)
        return self._derived()[1][gamma - 1]

    def leaf_cum_at(self, gamma: int) -> np.ndarray:
        self._check_level(gamma)
        return self._derived()[2][gamma - 1]

    def cluster_size(self, gamma: int, i: int) -> int:
        if gamma == 0:
            if not 1 <= i <= self.n:
                raise InvalidRefError(f"no node {i} in a {self.n}-node network")
            return 1
        arr = self.sizes_at(gamma)
        if not 1 <= i <= len(arr):
            raise InvalidRefError(f"no cluster {i} at level {gamma}")
        return int(arr[i - 1])

    def child_range(self, gamma: int, i: int) -> tuple[int, int]:
        """Half-open 0-based range of cluster (gamma, i)'s children in level gamma-1."""
        lo = int(self.child_start_at(gamma)[i - 1])
        return lo, lo + self.count(gamma, i)

    def leaf_range(self, gamma: int, i: int) -> tuple[int, int]:
        """Half-open 0-based range of the nodes covered by cluster (gamma, i)."""
        if gamma == 0:
            if not 1 <= i <= self.n:
                raise InvalidRefError(f"no node {i} in a {self.n}-node network")
            return i - 1, i
        hi = int(self.leaf_cum_at(gamma)[i - 1])
        return hi - self.cluster_size(gamma, i), hi

    def node_cluster(self, gamma: int, x: int) -> int:
        """1-based index of the level-gamma cluster containing node x."""
        if not 1 <= x <= self.n:
            raise InvalidRefError(f"no node {x} in a {self.n}-node network")
        if gamma == 0:
            return x
        cum = self.leaf_cum_at(gamma)
        return int(np.searchsorted(cum, x, side="left")) + 1

    def __eq__(self, other):
        if not isinstance(other, HierarchyShape):
            return NotImplemented
        return (
            self.p == other.p
            and len(self._counts) == len(other._counts)
            and all(np.array_equal(a, b) for a, b in zip(self._counts, other._counts))
        )

    __hash__ = None

    def __repr__(self):
        return f"HierarchyShape(p={self.p}, gamma={self.gamma}, n={self.n})"


class LinkTable:
    """Per-vertex link bit vectors, stored flat per level.

    Level gamma keeps one contiguous uint8 array holding the bit vectors of
    all its clusters back to back, in cluster index order, each vector in
    lexicographic pair order.  `nbits_at` gives the per-cluster vector
    lengths and `starts_at` their offsets into the flat array.
    """

    __slots__ = ("_flat", "_nbits", "_starts")

    def __init__(self, flat_per_level, nbits_per_level):
        flats, nbits, starts = [], [], []
        for f, nb in zip(flat_per_level, nbits_per_level, strict=True):
            f = np.asarray(f, dtype=np.uint8)
            nb = np.asarray(nb, dtype=np.int64)
            st = np.zeros(len(nb), dtype=np.int64)
            np.cumsum(nb[:-1], out=st[1:])
            for a in (f, nb, st):
                a.flags.writeable = False
            flats.append(f)
            nbits.append(nb)
            starts.append(st)
        self._flat = tuple(flats)
        self._nbits = tuple(nbits)
        self._starts = tuple(starts)

    @classmethod
    def from_vectors(cls, vectors_per_level) -> "LinkTable":
        """Build from per-cluster bit sequences, e.g. [["011", "100110", "1"], ["100"]].

        Strings and 0/1 sequences are both accepted; a cluster with a single
        child gets the empty vector "".
        """
        flats, nbits = [], []
        for level in vectors_per_level:
            vecs = []
            for v in level:
                if isinstance(v, str):
                    vecs.append(np.array([int(ch) for ch in v], dtype=np.uint8))
                else:
                    vecs.append(np.array(list(v), dtype=np.uint8))
            nbits.append(np.array([len(v) for v in vecs], dtype=np.int64))
            flats.append(np.concatenate(vecs) if vecs else np.zeros(0, dtype=np.uint8))
        return cls(flats, nbits)

    @property
    def gamma(self) -> int:
        return len(self._flat)

    def _check_level(self, gamma: int) -> None:
        if not 1 <= gamma <= len(self._flat):
            raise InvalidRefError(f"no level {gamma} in a {len(self._flat)}-level link table")

    def flat_at(self, gamma: int) -> np.ndarray:
        self._check_level(gamma)
        return self._flat[gamma - 1]

    def nbits_at(self, gamma: int) -> np.ndarray:
        self._check_level(gamma)
        return self._nbits[gamma - 1]

    def starts_at(self, gamma: int) -> np.ndarray:
        self._check_level(gamma)
        return self._starts[gamma - 1]

    def vector(self, gamma: int, i: int) -> np.ndarray:
        nb = self.nbits_at(gamma)
        if not 1 <= i <= len(nb):
            raise InvalidRefError(f"no cluster {i} at level {gamma}")
        start = int(self.starts_at(gamma)[i - 1])
        return self.flat_at(gamma)[start:start + int(nb[i - 1])]

    def bitstring(self, gamma: int, i: int) -> str:
        vec = self.vector(gamma, i)
        return (vec + np.uint8(ord("0"))).tobytes().decode("ascii")

    def __eq__(self, other):
        if not isinstance(other, LinkTable):
            return NotImplemented
        return (
            len(self._flat) == len(other._flat)
            and all(np.array_equal(a, b) for a, b in zip(self._flat, other._flat))
            and all(np.array_equal(a, b) for a, b in zip(self._nbits, other._nbits))
        )

    __hash__ = None


class NetworkModel:
    """A complete network: hierarchy shape plus link table.

    Immutable after construction.  Analysis code attaches derived caches to
    the private slots below under a fill-once discipline; the cached values
    are deterministic functions of the model, so a racing recomputation by
    concurrent readers is harmless.
    """

    __slots__ = ("shape", "links", "_aggregates", "_reach", "_node_passes", "_pair_scan")

    def __init__(self, shape: HierarchyShape, links: LinkTable):
        self.shape = shape
        self.links = links
        self._aggregates = None
        self._reach = None
        self._node_passes = None
        self._pair_scan = None

    def __eq__(self, other):
        if not isinstance(other, NetworkModel):
            return NotImplemented
        return self.shape == other.shape and self.links == other.links

    __hash__ = None

    def __repr__(self):
        return f"NetworkModel(p={self.shape.p}, gamma={self.shape.gamma}, n={self.shape.n})"


def _checked_internal(model: NetworkModel, cluster: ClusterRef) -> tuple[int, int]:
    g, i = cluster.gamma, cluster.index
    if not 1 <= g <= model.shape.gamma:
        raise InvalidRefError(f"no internal level {g} in a {model.shape.gamma}-level model")
    if not 1 <= i <= model.shape.n_clusters(g):
        raise InvalidRefError(f"no cluster {i} at level {g}")
    return g, i


def psi(model: NetworkModel, cluster: ClusterRef, n: int, s: int) -> int:
    """Link indicator between sub-clusters n and s of an internal cluster.

    Symmetric in (n, s); psi(n, n) is 0 by convention (no self-link).
    """
    g, i = _checked_internal(model, cluster)
    k = model.shape.count(g, i)
    if not (1 <= n <= k and 1 <= s <= k):
        raise InvalidPairError(f"positions ({n},{s}) outside 1..{k}")
    if n == s:
        return 0
    lo, hi = (n, s) if n < s else (s, n)
    vec = model.links.vector(g, i)
    return int(vec[pair_index(lo, hi, k)])


def cluster_size(model: NetworkModel, cluster: ClusterRef) -> int:
    """Number of network nodes covered by a cluster; level-0 clusters are nodes."""
    return model.shape.cluster_size(cluster.gamma, cluster.index)


def node_path(model: NetworkModel, x: int) -> tuple[PathEntry, ...]:
    """Leaf-to-root chain of node x: one (cluster, child position) per level."""
    shape = model.shape
    if not 1 <= x <= shape.n:
        raise InvalidRefError(f"no node {x} in a {shape.n}-node network")
    entries = []
    child_idx0 = x - 1  # 0-based position of the node's chain at level 0
    for g in range(1, shape.gamma + 1):
        i = shape.node_cluster(g, x)
        pos = child_idx0 - int(shape.child_start_at(g)[i - 1]) + 1
        entries.append(PathEntry(gamma=g, cluster_index=i, child_pos=pos))
        child_idx0 = i - 1
    return tuple(entries)


def validate(model: NetworkModel) -> list[str]:
    """Check every structural invariant; returns [] when the model is well formed.

    Violations come back as human-readable strings and are never raised, so
    a broken model can still be inspected.
    """
    out: list[str] = []
    shape, links = model.shape, model.links
    p = shape.p
    big_g = shape.gamma
    counts = shape._counts
    for g, arr in enumerate(counts, start=1):
        if len(arr) == 0:
            out.append(f"level {g}: empty level")
            continue
        bad = (arr < 1) | (arr > p)
        if bad.any():
            j = int(np.argmax(bad))
            out.append(f"level {g} cluster {j + 1}: count {int(arr[j])} outside 1..p={p}")
    if big_g >= 1 and len(counts[-1]) != 1:
        out.append(f"level {big_g}: root level has {len(counts[-1])} clusters, want 1")
    for g in range(2, big_g + 1):
        want = len(counts[g - 2])
        got = int(counts[g - 1].sum())
        if got != want:
            out.append(
                f"level {g}: level telescoping broken, counts sum to {got} "
                f"but {want} clusters sit below"
            )
    if big_g >= 1 and len(counts[0]) > 0:
        n = int(counts[0].sum())
        if n > p ** big_g:
            out.append(f"n={n} exceeds p^gamma={p ** big_g}")
    if links.gamma != big_g:
        out.append(f"link table has {links.gamma} levels, shape has {big_g}")
        return out
    for g in range(1, big_g + 1):
        nb = links.nbits_at(g)
        arr = counts[g - 1]
        if len(nb) != len(arr):
            out.append(f"level {g}: {len(nb)} bit vectors for {len(arr)} clusters")
            continue
        want_nb = arr * (arr - 1) // 2
        bad = nb != want_nb
        if bad.any():
            j = int(np.argmax(bad))
            out.append(
                f"level {g} cluster {j + 1}: bitmap length != k(k-1)/2 "
                f"(got {int(nb[j])}, want {int(want_nb[j])})"
            )
        flat = links.flat_at(g)
        if flat.size and int(flat.max()) > 1:
            out.append(f"level {g}: bit values outside 0/1")
    return out


# -- text format ------------------------------------------------------------


def serialize(model: NetworkModel) -> str:
    """Render a model in the line-oriented text format; inverse of `deserialize`.

    Layout: magic line, `p=.. gamma=.. n=..` header, then one `L<g>: counts`
    line per level from the root down, then one `B<g>.<i>: bits` line per
    internal vertex with at least two children, in the same level order.
    """
    problems = validate(model)
    if problems:
        raise ParamError("refusing to serialize an invalid model: " + "; ".join(problems))
    shape = model.shape
    lines = [FORMAT_MAGIC, f"p={shape.p} gamma={shape.gamma} n={shape.n}"]
    for g in range(shape.gamma, 0, -1):
        counts = shape.counts_at(g)
        lines.append(f"L{g}: " + " ".join(str(int(c)) for c in counts))
    for g in range(shape.gamma, 0, -1):
        counts = shape.counts_at(g)
        for i in range(1, len(counts) + 1):
            if int(counts[i - 1]) >= 2:
                lines.append(f"B{g}.{i}: " + model.links.bitstring(g, i))
    return "\n".join(lines) + "\n"


_HEADER_RE = re.compile(r"p=(\d+) gamma=(\d+) n=(\d+)")


def deserialize(text: str) -> NetworkModel:
    """Parse the text format back into a model, verifying every structural rule.

    Errors carry the 1-based line number of the offending line.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # allow one trailing newline

    def need(idx0: int) -> str:
        if idx0 >= len(lines):
            raise ParseError("unexpected end of input", idx0 + 1)
        return lines[idx0]

    if need(0) != FORMAT_MAGIC:
        raise ParseError(f"bad magic, want '{FORMAT_MAGIC}'", 1)
    m = _HEADER_RE.fullmatch(need(1))
    if m is None:
        raise ParseError("bad header, want 'p=<int> gamma=<int> n=<int>'", 2)
    p, gamma, n = (int(tok) for tok in m.groups())
    if p < 2:
        raise ParseError(f"p={p} below the minimum of 2", 2)
    if gamma == 0 and n != 1:
        raise ParseError("gamma=0 requires n=1", 2)
    if gamma >= 1 and n > p ** gamma:
        raise ParseError(f"n={n} exceeds p^gamma={p ** gamma}", 2)

    ln = 2  # 0-based index of the next expected line
    top_down: list[list[int]] = []
    for g in range(gamma, 0, -1):
        line = need(ln)
        prefix = f"L{g}:"
        if not line.startswith(prefix + " ") and line != prefix:
            raise ParseError(f"expected a '{prefix}' line", ln + 1)
        body = line[len(prefix):].split()
        try:
            counts = [int(tok) for tok in body]
        except ValueError:
            raise ParseError(f"non-integer count on the '{prefix}' line", ln + 1) from None
        if not counts:
            raise ParseError(f"empty level on the '{prefix}' line", ln + 1)
        for c in counts:
            if not 1 <= c <= p:
                raise ParseError(f"count {c} outside 1..p={p}", ln + 1)
        if g == gamma and len(counts) != 1:
            raise ParseError(f"root level must hold exactly 1 cluster, got {len(counts)}", ln + 1)
        if top_down and sum(top_down[-1]) != len(counts):
            raise ParseError(
                f"level telescoping broken: level {g + 1} counts sum to "
                f"{sum(top_down[-1])} but level {g} lists {len(counts)} clusters",
                ln + 1,
            )
        top_down.append(counts)
        ln += 1
    if gamma >= 1 and sum(top_down[-1]) != n:
        raise ParseError(
            f"declared n={n} but level 1 counts sum to {sum(top_down[-1])}", ln
        )

    vectors_top_down: list[list[str]] = []
    for depth, g in enumerate(range(gamma, 0, -1)):
        counts = top_down[depth]
        level_vecs: list[str] = []
        for i, c in enumerate(counts, start=1):
            if c < 2:
                level_vecs.append("")
                continue
            line = need(ln)
            label = f"B{g}.{i}:"
            if not line.startswith(label + " ") and line != label:
                raise ParseError(f"expected bitmap line '{label}'", ln + 1)
            bits = line[len(label):].strip()
            want = c * (c - 1) // 2
            if len(bits) != want:
                raise ParseError(
                    f"bitmap for level {g} cluster {i}: length {len(bits)} != "
                    f"k(k-1)/2 = {want}",
                    ln + 1,
                )
            if bits.strip("01"):
                raise ParseError(
                    f"bitmap for level {g} cluster {i} has characters outside 0/1",
                    ln + 1,
                )
            level_vecs.append(bits)
            ln += 1
        vectors_top_down.append(level_vecs)
    if ln != len(lines):
        raise ParseError("unexpected trailing content", ln + 1)

    shape = HierarchyShape(p, list(reversed(top_down)))
    links = LinkTable.from_vectors(list(reversed(vectors_top_down)))
    model = NetworkModel(shape, links)
    problems = validate(model)
    if problems:  # belt and braces; the line checks above should have caught it
        raise ParseError("; ".join(problems), len(lines))
    return model
