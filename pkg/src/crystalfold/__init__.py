"""Crystals of symmetrizable Kac-Moody algebras obtained by folding simply-laced ones."""

__version__ = "0.1.0"

from .rootdata import (  # noqa: E402
    Automorphism,
    CartanDatum,
    FoldedDatum,
    InvariantViolation,
    Quiver,
    RejectedInput,
    Weight,
    builtin_cartan,
    builtin_fold,
    builtin_quiver,
    check_admissible,
    fold,
    freudenthal,
    kostant_count,
    pairing,
    positive_roots,
    weyl_dim,
)
from .crystal import (  # noqa: E402
    SCHEMA,
    BInfinity,
    CrystalGraph,
    HighestWeightCrystal,
    character,
    generate_binfinity,
    generate_blambda,
    isomorphic,
    verify_axioms,
)
from .folding import (  # noqa: E402
    check_fixed_equals_generated,
    folded_crystal,
    induced_automorphism,
    orbit_e,
    orbit_f,
    verify_folded_is_target,
)
from .spin import build_spin_crystal, chevalley_matrices, rep_from_young, verify_relations  # noqa: E402

__all__ = [name for name in dir() if not name.startswith("_")]
