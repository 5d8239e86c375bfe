"""Norms of homogeneous Besov-type and F-type function spaces on periodic grids.

Three independent evaluations are provided: Gauss-Weierstrass heat norms
(:mod:`homspace.spacenorm`), dyadic Fourier blocks (:mod:`homspace.lpaley`)
and Daubechies wavelet coefficients (:mod:`homspace.wavelet`).
:mod:`homspace.verify` turns them into numerical checks.
"""

from .grid import (GridError, GridFunction, GridSpec, NonPowerOfTwo, TestFunction, build_grid,
                   catalog_sample, decays, dilate, lorentz_weak_norm, lp_norm, resolved, spectral_l2,
                   spectral_transform)
from .heat import FreeSpaceHeat, HeatEngine, HeatQuery, heat_evolve, heat_multiplier
from .lpaley import DyadicPartition, block_norms, default_partition, domestic_norm, dyadic_block
from .spacenorm import (NormResult, ProbeError, RegimeError, SpaceParams, TGrid, anchor_norm,
                        compound_norm, divergence_probe, f_infinity_norm, heat_b_norm, heat_f_norm)
from .wavelet import (WaveletExpansion, WaveletSystem, analyze, greedy_approximate, seq_norm,
                      synthesize)

__version__ = "0.1.0"

__all__ = [
    "GridError", "GridFunction", "GridSpec", "NonPowerOfTwo", "TestFunction", "build_grid",
    "catalog_sample", "decays", "dilate", "lorentz_weak_norm", "lp_norm", "resolved", "spectral_l2",
    "spectral_transform", "FreeSpaceHeat", "HeatEngine", "HeatQuery", "heat_evolve", "heat_multiplier",
    "DyadicPartition", "block_norms", "default_partition", "domestic_norm", "dyadic_block",
    "NormResult", "ProbeError", "RegimeError", "SpaceParams", "TGrid", "anchor_norm", "compound_norm",
    "divergence_probe", "f_infinity_norm", "heat_b_norm", "heat_f_norm", "WaveletExpansion",
    "WaveletSystem", "analyze", "greedy_approximate", "seq_norm", "synthesize",
]
