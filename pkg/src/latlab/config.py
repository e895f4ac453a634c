"""Resource bounds.

Quantifier sweeps are polynomial in the carrier size with degree set by the
formula, so every entry point that can blow up takes a Limits and refuses
inputs beyond it instead of hanging.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    ground_max: int = 10          # points in the ground set
    element_max: int = 4096       # elements of a lattice
    delta_n_max: int = 4          # covering-dimension formula index
    ind_n_max: int = 2            # inductive-dimension formula index
    dg_n_max: int = 2             # cut-dimension formula index
    sample_depth_max: int = 4     # interval sample combination depth
    corpus_ground_max: int = 6    # ground size for generated corpora


DEFAULT_LIMITS = Limits()
