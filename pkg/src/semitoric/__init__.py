"""Crystal combinatorics, string polytopes and their tropical lifts.

Modules: rootdata (Cartan data, Weyl groups, reduced words), tropical
(min-plus expressions), reparam (string and Lusztig transitions), crystal
(highest weight crystals and the Schützenberger involution), geomlift
(symbolic group maps and their tropicalization), polyhedra (exact hulls and
face unions) and cli.
"""

from . import crystal, geomlift, polyhedra, reparam, rootdata, tableaux, tropical
from .errors import SemitoricError

__version__ = "0.1.0"
__all__ = ["crystal", "geomlift", "polyhedra", "reparam", "rootdata", "tableaux", "tropical",
           "SemitoricError", "__version__"]
