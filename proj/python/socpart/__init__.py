"""Optimal partitions, nonlinearity intervals and transition points of
parametric second-order cone programs."""

from ._core import (
    Error,
    Instance,
    Partition,
    SolveReport,
    Triple,
    bundled_instance,
    bundled_names,
    classify_point,
    grid_scan,
    interval_kind,
    load_instance,
    nondegeneracy,
    nonlinearity_interval,
    parse_instance,
    partition,
    run_cli,
    solve,
)

__all__ = [
    "Error",
    "Instance",
    "Partition",
    "SolveReport",
    "Triple",
    "bundled_instance",
    "bundled_names",
    "classify_point",
    "grid_scan",
    "interval_kind",
    "load_instance",
    "nondegeneracy",
    "nonlinearity_interval",
    "parse_instance",
    "partition",
    "run_cli",
    "solve",
]
