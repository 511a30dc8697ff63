"""Exact homological computations for finite dimensional quiver algebras:
higher Auslander-Reiten translates, representation-finiteness decisions,
preprojective algebras and fractional Calabi-Yau certificates."""

__version__ = "0.1.0"

from .errors import QuivercyError, Undecided, UNDECIDED  # noqa: F401
from .quiver import Arrow, Path, Quiver, Relation  # noqa: F401
from .algebra import (  # noqa: F401
    Algebra,
    BasisElt,
    build_algebra,
    opposite,
    path_algebra,
    semisimple_algebra,
    tensor_product,
)
from .module import Bimodule, Module, Morphism  # noqa: F401
from .parsing import AlgebraFile, load_algebra_file, parse_algebra_file  # noqa: F401
