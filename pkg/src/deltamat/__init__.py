"""Delta-matroids: operations, twist polynomials, binary detection, census."""

from .core import (
    CapacityExceeded,
    DeltaMatroid,
    DeltaMatroidError,
    EmptyFamily,
    ExchangeViolation,
    ExchangeWitness,
    Matroid,
    NotFeasible,
    NotNormal,
    SetSystem,
    check_symmetric_exchange,
    contract,
    delete,
    direct_sum,
    dual,
    envelope,
    is_matroid,
    is_normal,
    layer,
    max_matroid,
    min_matroid,
    new_delta_matroid,
    rank,
    restrict,
    twist,
    width,
)
from .gf2 import SymMatrixGF2, dm_from_matrix
from .binary import (
    d1,
    d2,
    excluded_minors,
    has_minor,
    is_binary_excluded_minor,
    is_binary_matrix_method,
    is_isomorphic,
)
from .twistpoly import (
    TwistPolynomial,
    characterize_monomial,
    is_twist_monomial,
    make_free,
    make_odd_complete,
    twist_polynomial,
)
from .census import canonical_code, enumerate_classes

__version__ = "0.1.0"
