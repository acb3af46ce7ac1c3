"""
Core package: F_p linear algebra, seeded randomness, the error hierarchy and
the engines behind every operation.

Engines are imported from their modules (core.components, core.moduli, ...);
only the dependency-free modules are re-exported here, since models import
from core.
"""

from .errors import QuiverModuliError
from .randomness import derive_seed, make_rng

__all__ = ['QuiverModuliError', 'derive_seed', 'make_rng']
