"""Jumping numbers of complete ideals in two-dimensional regular local rings,
computed from the proximity data of their minimal log resolution."""

from .divisors import (
    Basis,
    Divisor,
    antinef_closure,
    convert,
    excess,
    is_antinef,
    pointwise_min,
    support,
)
from .graph import (
    Constellation,
    DualGraph,
    ProximityTable,
    build_constellation,
    distance,
)
from .instance import canonical_text, parse_instance
from .invariants import (
    ResolvedIdeal,
    Side,
    alpha,
    lambda_value,
    lct,
    multiplier_divisor,
    resolve,
    xi_and_support,
)
from .jumping import (
    SplitMode,
    SupportCertificate,
    candidates_upto,
    criterion_is_jumping,
    extend_to_antinef,
    is_jumping_oracle,
    jumping_numbers,
    neighbor_split,
    rees_family,
    shift_family,
    star_value,
    union_supports,
)
from .contribution import (
    contributes,
    criterion_critical,
    critically_contributes,
    is_candidate,
)

__version__ = "0.1.0"
