"""Exact-arithmetic computer algebra for free pre-Lie algebras, permutative
coalgebras and their rigidity structure on rooted trees."""

from treelie.kernel import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
