"""Finite computational structures modelled as semigroups."""

from .algebra import (
    MulTable,
    Verdict,
    are_isomorphic,
    cayley_embedding,
    closure_in_table,
    identity_element,
    idempotents,
    is_associative,
    resets,
)
from .constructions import (
    Cascade,
    CascadeEvent,
    FiniteFunction,
    cascade_flatten,
    direct_product,
    flip_flop,
    lookup_semigroup,
    piggyback_extract,
    xor_cascade,
)
from .emulation import (
    ElementMap,
    Encoding,
    Relation,
    find_division,
    find_surjective_homomorphisms,
    implements_function,
    invert,
    is_isomorphic_relation,
    is_modelling,
)
from .enumeration import (
    ClosedSet,
    ElementUniverse,
    bfs_oracle_enumerate,
    enumerate_subsemigroups,
    enumerate_up_to_conjugacy,
    partition_search,
    size_distribution,
)
from .transforms import (
    Transformation,
    TransSgp,
    canonical_form,
    closure,
    compose,
    conjugate,
    full_transformation_semigroup,
    mul_table_of,
)

__version__ = "0.1.0"
