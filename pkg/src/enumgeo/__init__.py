"""Exact arithmetic for enumerative-invariant generating functions:
q-series, modular forms, surface lattices and wall-crossing sums."""

from .series import (
    QSeries,
    SeriesError,
    VariableMismatch,
    ShiftMismatch,
    NonUnitConstantTerm,
    NonzeroConstantTerm,
    ConstantTermNotOne,
    OrderExceeded,
    product_family,
    int_binomial,
)
from .lattice import (
    SurfaceLattice,
    DimensionMismatch,
    NoCanonicalClass,
    ParityViolation,
    DegenerateForm,
    NotPositiveDefinite,
    make_gamma19,
    make_del_pezzo,
    gamma19_named_vectors,
    e8_minus_basis,
    e8_cartan_matrix,
    e8_lattice,
    enumerate_vectors,
    enumeration_backend,
    exceptional_classes,
)

__version__ = "0.1.0"
