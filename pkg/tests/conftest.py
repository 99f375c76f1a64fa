import pytest

from hiernet.core import HierarchyShape, LinkTable, NetworkModel


def build_model(p, levels, vectors):
    return NetworkModel(HierarchyShape(p, levels), LinkTable.from_vectors(vectors))


@pytest.fixture
def demo9():
    """9-node worked example: three linked sub-clusters of 3, 4, 2 nodes.

    Cluster A (nodes 1..3) carries <011>, B (4..7) <100110>, C (8..9) <1>;
    the root <100> joins A with B and leaves C separate.  Every frozen
    value in the suite was confirmed against the brute-force oracle.
    """
    return build_model(4, [[3, 4, 2], [3]], [["011", "100110", "1"], ["100"]])


@pytest.fixture
def k4():
    """Complete graph on 4 nodes as a 2-level binary hierarchy, all bits set."""
    return build_model(2, [[2, 2], [2]], [["1", "1"], ["1"]])
