"""Base change for depth-zero principal series blocks of GL2 over Qp.

The package builds the block Hecke algebras at level one and at an
unramified level r, the Bernstein center in its symmetric polynomial
model, and the base change map between the centers.  Everything
downstream of that is verification machinery: constant terms, exact
p-adic arithmetic, (twisted) orbital integrals, and trace pairings, all
over exact cyclotomic scalars so identities are checked by equality and
never by tolerance.
"""

from .basechange import (
    PlusLevelElement,
    base_change,
    base_change_poly,
    br_characterization,
    br_compat_conj,
    br_compat_iota,
    br_plus,
    ch_eval,
    conj_center,
    conjugate_block,
    iota_center,
    is_frobenius_fixed,
    norm_preimage,
    power_character,
    support_norm_check,
)
from .coeff import Cyc, LaurentV, MultiLaurent, SqrtScalar, cyclotomic, msym
from .constterm import (
    ct_algebraic,
    ct_center,
    ct_integral,
    dgm_factor,
    dgm_valuation,
    levi_algebra,
    levi_datum,
    realize_torus,
    unipotent_shell,
)
from .hecke import HeckeAlgebra, HeckeElt, character_from_exponents, unramified_character
from .orbital import (
    RealizedFunction,
    VerificationReport,
    convolve_eval,
    elliptic_class,
    eval_at,
    quadratic_generator,
    split_class,
    stable_orbital,
    twisted_orbital,
    verify_descent,
    verify_elementary,
    verify_fundamental_lemma,
    verify_nonnorm_char_vanishing,
    verify_trace_identities,
)
from .padic import (
    Mat2,
    PadicContext,
    PadicNum,
    PrecisionError,
    aff_cell,
    cell_aff,
    cell_matrix,
    chi_exponent,
    descend_num,
    iwahori_factor,
    norm_elt,
    reduced_word,
    schubert_cosets,
    torus_norm_fibers,
)
from .rootdata import AffElt, Block, Character, RootDatum, norm_transfer

__version__ = "0.1.0"

__all__ = [
    "AffElt",
    "Block",
    "Character",
    "Cyc",
    "HeckeAlgebra",
    "HeckeElt",
    "LaurentV",
    "Mat2",
    "MultiLaurent",
    "PadicContext",
    "PadicNum",
    "PlusLevelElement",
    "PrecisionError",
    "RealizedFunction",
    "RootDatum",
    "SqrtScalar",
    "VerificationReport",
    "aff_cell",
    "base_change",
    "base_change_poly",
    "br_characterization",
    "br_compat_conj",
    "br_compat_iota",
    "br_plus",
    "cell_aff",
    "cell_matrix",
    "ch_eval",
    "character_from_exponents",
    "chi_exponent",
    "conj_center",
    "conjugate_block",
    "convolve_eval",
    "ct_algebraic",
    "ct_center",
    "ct_integral",
    "cyclotomic",
    "descend_num",
    "dgm_factor",
    "dgm_valuation",
    "elliptic_class",
    "eval_at",
    "iota_center",
    "is_frobenius_fixed",
    "iwahori_factor",
    "levi_algebra",
    "levi_datum",
    "msym",
    "norm_elt",
    "norm_preimage",
    "norm_transfer",
    "power_character",
    "quadratic_generator",
    "realize_torus",
    "reduced_word",
    "schubert_cosets",
    "split_class",
    "stable_orbital",
    "support_norm_check",
    "torus_norm_fibers",
    "twisted_orbital",
    "unipotent_shell",
    "unramified_character",
    "verify_descent",
    "verify_elementary",
    "verify_fundamental_lemma",
    "verify_nonnorm_char_vanishing",
    "verify_trace_identities",
]
