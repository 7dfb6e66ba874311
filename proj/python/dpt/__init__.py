"""Discrete potential theory on planar graphs: harmonic measure, partition functions,
cross-ratios and extremal lengths of discrete domains."""

from ._dpt import (
    Domain,
    DomainError,
    GraphError,
    IoError,
    SolverError,
    SpecError,
    cross_ratios,
    estimate_hm,
    extremal_length,
    generate,
    green,
    harmonic_measure,
    invariants,
    load_domain,
    partition_function,
    verify,
)

__all__ = [
    "Domain",
    "DomainError",
    "GraphError",
    "IoError",
    "SolverError",
    "SpecError",
    "cross_ratios",
    "estimate_hm",
    "extremal_length",
    "generate",
    "green",
    "harmonic_measure",
    "invariants",
    "load_domain",
    "partition_function",
    "verify",
]
