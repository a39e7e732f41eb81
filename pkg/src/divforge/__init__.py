"""divforge: exact divisor theory on graphs, rank-3 matroids and metrized complexes."""

from .errors import (CapacityError, DegenerateMatroid, DivforgeError, InvalidMatroid,
                     StructuralError, UsageError)
from .graph import (Divisor, FiringScript, VirtualizationMap, WeightedMultigraph, apply_firing,
                    canonical_divisor, genus, virtualize)
from .divisors import (dhar_reduce, is_equivalent_to_effective, is_q_reduced, linearly_equivalent,
                       rank, riemann_roch_check)
from .kernels import BACKEND

__version__ = "0.1.0"
