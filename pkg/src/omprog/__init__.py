"""Computing with finite oriented matroids given by cocircuits.

Sign-vector algebra, axiom validation, minors and face lattices, oriented
matroid programs (edge directions, Euclideanness, feasibility, optima),
single-element extensions (lexicographic and parallel), topological sweeps,
and vertex-shelling orders with a recursive atom-ordering verifier.
"""

from omprog.signs import SignVector
from omprog.om import OrientedMatroid, validate_cocircuits
from omprog.programs import Program

__all__ = ["SignVector", "OrientedMatroid", "validate_cocircuits", "Program"]

__version__ = "0.1.0"
