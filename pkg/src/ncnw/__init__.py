"""Exact enumeration and bijections for k-noncrossing set partitions."""

from .partitions import (
    Arc,
    ArcSet,
    ColoredDiagram,
    Convention,
    CrossingWitness,
    Kind,
    Mode,
    PartitionError,
    SetPartition,
    arcs,
    class_flags,
    make_partition,
    max_chain,
    partition_from_arcs,
    red_nodes_under_black_crossing,
)
from .polynomial import Polynomial

__version__ = "0.1.0"
