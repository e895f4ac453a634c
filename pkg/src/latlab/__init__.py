"""latlab: a laboratory for finite distributive lattices and dimension formulas.

Builds set-family lattices, model-checks first-order lattice formulas
(including the covering/inductive/cut dimension families), constructs
Wallman ultrafilter spaces, closes subfamilies under formula witnesses, and
computes exactly with closed subsets of the unit interval over Q(sqrt 2).
"""

from .engine import available_backends, backend_name, set_backend

__version__ = "0.1.0"

__all__ = ["backend_name", "set_backend", "available_backends", "__version__"]
