"""commfibre: exact fibre counts of commutator word maps over finite
p-groups of nilpotency class < p and exponent p, with built-in
brute-force verification."""

__version__ = "0.1.0"

from .algebra import builtin, direct_sum, from_relations, reduce_presentation, validate
from .algfile import parse_algebra_file
from .field import make_field

__all__ = [
    "__version__",
    "builtin",
    "direct_sum",
    "from_relations",
    "make_field",
    "parse_algebra_file",
    "reduce_presentation",
    "validate",
]
