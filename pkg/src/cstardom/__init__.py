"""Finite-scale lattices of commutative *-subalgebras and their domain checks.

The package materializes, at desk scale, the order-theoretic picture of a
matrix *-algebra: the lattice of its commutative subalgebras, the standard
domain-theoretic properties of that lattice, the dual picture through
partitions and closed equivalence relations, and the scatteredness
machinery used to tell finite-dimensional behaviour apart.
"""

__version__ = "0.1.0"

from . import cantor, order, ortho, partitions, scatter, staralg  # noqa: F401
