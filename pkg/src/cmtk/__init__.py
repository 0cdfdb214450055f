"""Torsion verdicts and Hodge-class certificates for pairs of CM abelian varieties.

CM abelian varieties enter only through CM types on an abstract Galois group
with complex conjugation; all computations are exact integer lattice algebra
inside the group ring Z[G].
"""

from .cmtypes import (
    CMType,
    WeightSystem,
    classify_cm_types,
    enumerate_cm_types,
    is_nondegenerate,
    is_primitive,
    make_cm_type,
    mt_lattice,
    reflex_group,
    weight_system,
)
from .groups import GaloisFrame, Subgroup, cyclic_frame, product_frame, stabilizer, translate
from .lattice import (
    CharLattice,
    FgAbelianGroup,
    hermite_form,
    lattice_intersection,
    lattice_sum,
    qspan_contains,
    quotient_group,
    smith_invariants,
    solve_rational,
)
from .verdict import (
    LowDimDescriptor,
    TorsionVerdict,
    VerdictKind,
    decide_cm_pair,
    dimension_gap_sufficient,
    low_dim_verdict,
    mutual_verdict_equivalences,
    product_mt_lattice,
)
from .witness import (
    HodgeWitness,
    exterior_support,
    find_witness,
    verify_witness,
    witness_from_rational_solution,
)

__version__ = "0.1.0"
