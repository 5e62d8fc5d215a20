"""Exact Bredon homology and cohomology of proper G-CW complexes."""

from .ahss import E2Page, e2_page, k_theory_ranks_if_collapse
from .characters import CharacterTable, character_table, induction_matrix, restriction_matrix
from .coefficients import (
    BurnsideRing,
    CentralExtensionData,
    CoefficientSystem,
    ComplexRepRing,
    ConstantZ,
    KCentralRepRing,
    TensorSystem,
    system_from_spec,
)
from .complexes import (
    CellOrbit,
    EquivariantCellComplex,
    Incidence,
    load_bundled,
    load_complex,
    parse_complex,
    product_complex,
    serialize,
    validate,
)
from .errors import BredonError
from .groups import FiniteGroup, GroupHomomorphism, close_generators
from .homology import (
    AbelianGroup,
    GradedAbelianGroup,
    assemble_chain,
    assemble_cochain,
    bredon_cohomology,
    bredon_homology,
    homology,
    torsion_free_criterion,
)
from .snf import smith_normal_form
from .theorems import kunneth_check, uct_check, untwist_consistency

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "BredonError", "BurnsideRing", "CellOrbit", "CentralExtensionData",
    "CharacterTable", "CoefficientSystem", "ComplexRepRing", "ConstantZ", "E2Page",
    "EquivariantCellComplex", "FiniteGroup", "GradedAbelianGroup", "GroupHomomorphism",
    "Incidence", "KCentralRepRing", "TensorSystem", "assemble_chain", "assemble_cochain",
    "bredon_cohomology", "bredon_homology", "character_table", "close_generators", "e2_page",
    "homology", "induction_matrix", "k_theory_ranks_if_collapse", "kunneth_check", "load_bundled", "load_complex",
    "parse_complex", "product_complex", "restriction_matrix", "serialize", "smith_normal_form",
    "system_from_spec", "torsion_free_criterion", "uct_check", "untwist_consistency", "validate",
]
