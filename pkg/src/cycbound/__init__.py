"""Lower bounds on the minimum distance of cyclic codes from their defining sets."""

from .bounds import all_bounds, bch, bound_c, bound_I_value, bound_II_value, bs, ht, roos, roos_at
from .cyclic import CyclicCodeSpec, coset_partition, cyclotomic_coset, enumerate_codes, parse_defining_set
from .gf import Field, build_field_context
from .oracle import true_distance
from .usemiring import UMatrix, UVec, includes, prk, singleton_procedure

__version__ = "0.1.0"
