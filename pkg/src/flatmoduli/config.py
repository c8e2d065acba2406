from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs shared by the analysis pipeline and the CLI.

    Attributes
    ----------
    max_order : int
        Abort point-group closure beyond this many elements.
    height_bound : int
        Coefficient bound for unimodular searches in solution lattices.
    seed : int
        Seed for every pseudo-random choice (eigenvector splitting, primitive
        elements, zero-divisor probes, convexity samples).
    convexity_samples : int
        Number of random pairs used by the fixed-set convexity check.
    """

    max_order: int = 2000
    height_bound: int = 10
    seed: int = 0
    convexity_samples: int = 32


DEFAULT_CONFIG = AnalysisConfig()
