"""In-place eq-transforms: Karp-Rabin fingerprints stored inside the text they index."""

from .derandomize import build_exact, verify_pow2_collision_free
from .eq_transform import (EqTransform, NotInvertible, PowerTable, TransformParams, build,
                           build_in_place, build_power_table, invert_in_place, transform)
from .packed_string import PackedString
from .positions import PositionArray
from .prime_gen import IntervalExhausted, RandomSource, miller_rabin, sample_prime, z_tau_interval
from .suffix_ops import (compress_integer_sequence, decompress_integer_sequence, full_lcp,
                         sparse_suffix_sort, ssa_to_slcp, suffix_compare, suffix_select)
from .wide_arith import WideUint

__version__ = "0.1.0"
