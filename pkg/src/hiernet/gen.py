"""Seeded random generation of hierarchy shapes and link tables.

Shapes are drawn either bottom-up under a fixed node budget (the level
count emerges) or top-down under a fixed level count (the node count
emerges); the regular shape with p children everywhere is deterministic.
Links are drawn per internal vertex with probability omega = k**(-mu),
where k is the number of network nodes the vertex covers, so deeper (and
larger) clusters link their sub-clusters more sparsely as mu grows.

All randomness flows through `RngStream` with a fixed batching discipline,
which makes a (seed, stream) pair pin the network bit for bit:

  * by-nodes: one batch of n integers uniform on 1..p per level, n being
    the level's node budget; the leading draws become group sizes, the last
    used group is clipped to the remaining budget, and the surplus draws
    are discarded;
  * by-levels: one batch of w integers per level, w the cluster count;
  * links: one batch of uniforms per level, one value per bit, clusters in
    index order and bits in pair order, bottom level first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import HierarchyShape, LinkTable, NetworkModel, ParamError

__all__ = [
    "GenParams",
    "RngStream",
    "generate_shape_by_nodes",
    "generate_shape_by_levels",
    "generate_shape_regular",
    "generate_links",
    "generate_network",
]

# resource guard on node counts and level widths; far past any desk-scale run
MAX_NODES = 1 << 27

_MODES = ("by-nodes", "by-levels", "regular")


class RngStream:
    """Deterministic draw stream for one network.

    Wraps PCG64 keyed by SeedSequence([seed, stream]); distinct (seed,
    stream) pairs give independent streams.  numpy guarantees a batch of
    draws equals the same draws made one at a time, and the test suite pins
    the stream against a frozen reference sequence so a silent upstream
    change would be caught.
    """

    def __init__(self, seed: int, stream: int = 0):
        if seed < 0 or stream < 0:
            raise ParamError("seed and stream must be non-negative integers")
        self.seed = int(seed)
        self.stream = int(stream)
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([self.seed, self.stream]))
        )

    def integers(self, high: int, size: int) -> np.ndarray:
        """`size` draws uniform on 1..high, both ends inclusive."""
        return self._gen.integers(1, high, size=size, endpoint=True)

    def uniforms(self, size: int) -> np.ndarray:
        """`size` draws uniform on [0, 1)."""
        return self._gen.random(size)


@dataclass(frozen=True)
class GenParams:
    """Parameters of one generated network.

    `mode` selects the shape algorithm: "by-nodes" fixes the node count n
    and lets the level count emerge, "by-levels" fixes gamma and lets n
    emerge, "regular" builds the deterministic p-ary shape with n = p**gamma.
    `mu` >= 0 controls link density; mu = 0 joins every sub-cluster pair and
    is kept as a diagnostic mode.
    """

    mode: str
    p: int
    mu: float
    seed: int
    n: int | None = None
    gamma: int | None = None

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ParamError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if int(self.p) != self.p or self.p < 2:
            raise ParamError(f"p must be an integer >= 2, got {self.p!r}")
        if not self.mu >= 0.0:
            raise ParamError(f"mu must be >= 0, got {self.mu!r}")
        if self.seed < 0:
            raise ParamError("seed must be a non-negative integer")
        if self.mode == "by-nodes":
            if self.n is None or self.n < 1:
                raise ParamError("by-nodes mode requires n >= 1")
            if self.gamma is not None:
                raise ParamError("by-nodes mode takes no gamma")
        else:
            if self.gamma is None or self.gamma < 0:
                raise ParamError(f"{self.mode} mode requires gamma >= 0")
            if self.n is not None:
                raise ParamError(f"{self.mode} mode takes no n")


def _check_p(p: int) -> None:
    if p < 2:
        raise ParamError(f"p must be >= 2, got {p}")


def generate_shape_by_nodes(n: int, p: int, rng: RngStream) -> HierarchyShape:
    """Grow a shape bottom-up until one root cluster covers all n nodes.

    Each level partitions the one below it into groups whose sizes are
    drawn uniform on 1..p, the last group clipped to whatever remains; a
    level that ends up with a single group is the root.  n = 1 yields the
    degenerate zero-level shape.
    """
    _check_p(p)
    if n < 1:
        raise ParamError(f"n must be >= 1, got {n}")
    if n > MAX_NODES:
        raise ParamError(f"n={n} exceeds the supported maximum {MAX_NODES}")
    levels = []
    width = n
    while width > 1:
        draws = np.asarray(rng.integers(p, size=width), dtype=np.int64)
        cum = np.cumsum(draws)
        # first prefix whose group sizes cover the budget; draws past it are unused
        g = int(np.searchsorted(cum, width, side="left")) + 1
        counts = draws[:g].copy()
        counts[g - 1] = width - (int(cum[g - 1]) - int(counts[g - 1]))
        levels.append(counts)
        width = g
    return HierarchyShape(p, levels)


def generate_shape_by_levels(gamma: int, p: int, rng: RngStream) -> HierarchyShape:
    """Grow a shape top-down for exactly gamma levels; the node count emerges."""
    _check_p(p)
    if gamma < 0:
        raise ParamError(f"gamma must be >= 0, got {gamma}")
    top_down = []
    width = 1
    for _ in range(gamma):
        draws = np.asarray(rng.integers(p, size=width), dtype=np.int64)
        top_down.append(draws)
        width = int(draws.sum())
        if width > MAX_NODES:
            raise ParamError(f"level width {width} exceeds the supported maximum {MAX_NODES}")
    return HierarchyShape(p, list(reversed(top_down)))


def generate_shape_regular(gamma: int, p: int) -> HierarchyShape:
    """The deterministic shape with p children everywhere; n = p**gamma."""
    _check_p(p)
    if gamma < 0:
        raise ParamError(f"gamma must be >= 0, got {gamma}")
    if p ** gamma > MAX_NODES:
        raise ParamError(f"p**gamma = {p ** gamma} exceeds the supported maximum {MAX_NODES}")
    levels = [np.full(p ** (gamma - g), p, dtype=np.int64) for g in range(1, gamma + 1)]
    return HierarchyShape(p, levels)


def generate_links(shape: HierarchyShape, mu: float, rng: RngStream) -> LinkTable:
    """Draw every link bit of a shape.

    A vertex covering k network nodes sets each of its bits independently
    with probability k**(-mu).  One uniform is consumed per bit, levels
    bottom to top, clusters in index order, bits in pair order; mu = 0
    therefore sets every bit, since uniforms live in [0, 1).
    """
    if not mu >= 0.0:
        raise ParamError(f"mu must be >= 0, got {mu!r}")
    flats, nbits_per_level = [], []
    for g in range(1, shape.gamma + 1):
        counts = shape.counts_at(g)
        nbits = counts * (counts - 1) // 2
        omega = shape.sizes_at(g).astype(np.float64) ** (-float(mu))
        u = rng.uniforms(int(nbits.sum()))
        bits = (u < np.repeat(omega, nbits)).astype(np.uint8)
        flats.append(bits)
        nbits_per_level.append(nbits)
    return LinkTable(flats, nbits_per_level)


def generate_network(params: GenParams, stream: int = 0) -> NetworkModel:
    """Generate shape and links under one (seed, stream) pair.

    The same RngStream runs through shape and link draws in that order, so
    the pair (params, stream) determines the model bit for bit.
    """
    rng = RngStream(params.seed, stream)
    if params.mode == "by-nodes":
        shape = generate_shape_by_nodes(params.n, params.p, rng)
    elif params.mode == "by-levels":
        shape = generate_shape_by_levels(params.gamma, params.p, rng)
    else:
        shape = generate_shape_regular(params.gamma, params.p)
    links = generate_links(shape, params.mu, rng)
    return NetworkModel(shape, links)
