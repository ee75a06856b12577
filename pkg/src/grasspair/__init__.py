"""Complementary subspace pairs over finite fields: enumeration, relations, transformations, checks."""

from .errors import CeilingExceeded
from .field import FieldTable, build_field, field_of_order
from .grassmann import (
    Ambient,
    Subspace,
    adjacent,
    complementary,
    enumerate_grassmannian,
    gaussian_binomial,
    incident,
    intersection,
    span,
)
from .linalg import Matrix, annihilator, kernel_basis, rank, rref, subspace_intersection, subspace_sum
from .pairs import (
    Kind,
    PairPoint,
    PairSpace,
    Relation,
    RelationGraph,
    build_graph,
    connect_path,
    enumerate_pairs,
    pair_adjacent,
    pair_close,
    sub_g,
)
from .transforms import (
    Catalog,
    DualityMap,
    PairTransformation,
    SemilinearMap,
    apply_pair_transformation,
    catalog,
    catalog_size,
    induce_duality,
    induce_grassmannian,
)
from .verify import VerificationReport, run_all, run_check

__version__ = "0.1.0"
