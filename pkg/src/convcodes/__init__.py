"""Access-optimal MDS convertible codes for merging erasure-coded stripes."""
from .bounds import (
    access_lower_bound,
    baseline_access,
    is_access_optimal,
    max_unchanged,
    read_lower_bound_per_stripe,
)
from .constructions import (
    ConversionPlan,
    ConvertibleCode,
    Source,
    construct,
    construct_best,
    general_construction,
    hankel1,
    hankel2,
    hankel_family,
    restrict,
    trivial_construction,
)
from .conversion import (
    AccessCostReport,
    Block,
    MessageBuffer,
    Stripe,
    convert,
    decode,
    encode_final,
    encode_initial,
    reencode_baseline,
    verify_conversion,
)
from .errors import ConvCodeError
from .gf import FieldElement, FieldSpec, field_new, primitive_element
from .hankel import HankelArray, build_superregular_hankel
from .matrix import Matrix, is_superregular
from .params import MergeParams

__version__ = "0.1.0"
