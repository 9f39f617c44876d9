"""Exact computations for discrete split oscillator groups: trace cycles,
symmetry groups, isomorphism classification and lattice embeddings."""

from .classify import GroupRep, commensurable, enumerate_classes, iso
from .cycles import cycle_of, cycle_step, decompose_trace, reduce_to_cycle
from .mat import Mat2, format_mat, parse_mat
from .quad import QuadElem, fundamental_unit, spectral_of_trace
from .symmetry import reversing_group, symmetry_data

__all__ = [
    "GroupRep",
    "Mat2",
    "QuadElem",
    "commensurable",
    "cycle_of",
    "cycle_step",
    "decompose_trace",
    "enumerate_classes",
    "format_mat",
    "fundamental_unit",
    "iso",
    "parse_mat",
    "reduce_to_cycle",
    "reversing_group",
    "spectral_of_trace",
    "symmetry_data",
]
