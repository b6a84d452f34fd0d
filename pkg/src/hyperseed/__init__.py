"""Hyperseed: one-vector unsupervised map learning on phasor hypervectors."""

from .vsa import (
    BundleVector,
    DimensionError,
    PhasorVector,
    UndefinedSimilarityError,
    bind,
    cosine_real,
    fpe_power,
    identity_phasor,
    make_rng,
    normalize,
    permute,
    random_phasor,
    superpose,
    unbind,
)
from .hdmap import HdMap, build_map, find_bmv, similarity_landscape

__all__ = [
    "BundleVector",
    "DimensionError",
    "HdMap",
    "PhasorVector",
    "UndefinedSimilarityError",
    "bind",
    "build_map",
    "cosine_real",
    "find_bmv",
    "fpe_power",
    "identity_phasor",
    "make_rng",
    "normalize",
    "permute",
    "random_phasor",
    "similarity_landscape",
    "superpose",
    "unbind",
]

__version__ = "0.1.0"
