"""Triply graded annular Khovanov homology over GF(2).

Computes the annular invariant from the cube of resolutions, the spectral
sequence induced by the annular filtration (abutting to plain Khovanov
homology of the mirror link), closed-form branched double cover invariants of
resolved diagrams, and the chain-level direct-summand verification for
diagrams cut along the annulus ray.
"""

from .diagram import (AnnularDiagram, Circle, Crossing, DiagramError, Edge,
                      FreeLoop, ResolvedDiagram, finger_move, load,
                      negate_windings, parse)
from .gf2 import GradedComplex, Generator, MatrixF2
from .khovanov import (FilteredComplex, annular_homology,
                       build_filtered_complex, euler_characteristic,
                       total_homology)
from .sfh import cover_space, check_equivalence, predicted_ranks
from .spectral import e_infinity, pages
from .tangle import cut, resolve_tangle, summand_check, tangle_homology

__version__ = "0.1.0"

__all__ = [
    "AnnularDiagram", "Circle", "Crossing", "DiagramError", "Edge",
    "FreeLoop", "ResolvedDiagram", "finger_move", "load", "negate_windings",
    "parse", "GradedComplex", "Generator", "MatrixF2", "FilteredComplex",
    "annular_homology", "build_filtered_complex", "euler_characteristic",
    "total_homology", "cover_space", "check_equivalence", "predicted_ranks",
    "e_infinity", "pages", "cut", "resolve_tangle", "summand_check",
    "tangle_homology", "__version__",
]
