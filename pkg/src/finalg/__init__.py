"""Factor congruences, Boolean centers, and sheaf-style direct decompositions
of finite algebras, with replayable certificates and first-order definability
checks."""

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    Product,
    PushoutResult,
    Quotient,
    Signature,
    eval_term,
    find_isomorphism,
    is_homomorphism,
    homomorphism_violation,
    product,
    pushout_of_quotients,
    quotient,
    subuniverse_generate,
)
from .center import (
    CenterAlgebra,
    CentralElement,
    are_complementary_centrals,
    center_algebra,
    central_elements,
    check_center_axioms,
    check_codisjoint,
    check_product_stability,
    hom_center_check,
    lift_central,
)
from .congruence import (
    Congruence,
    MaltsevCertificate,
    all_congruences,
    check_fhp_instance,
    congruence_join,
    congruence_meet,
    delta,
    extract_certificate,
    factor_pairs,
    factorize_product_congruence,
    is_factor_pair,
    nabla,
    permutes,
    principal_congruence,
    principal_pair_congruence,
    solve_system,
    verify_certificate,
)
from .logic import (
    PcfSchema,
    certificate_to_formula,
    check_connected_axioms,
    check_sigma,
    defines_theta1,
    eval_formula,
    format_formula,
    parse_formula,
    parse_term,
    sigma_set,
)
from .partition import Partition
from .pierce import (
    AlgebraSheaf,
    FiniteLatticeSite,
    PierceSheaf,
    SetSheaf,
    Ultrafilter,
    build_pierce,
    check_representation,
    check_sheaf_condition,
    constant_representation,
    decompose,
    is_connected,
    partition_object,
    pierce_representation,
    sheaf_coproduct,
    stalk,
    terminal_sheaf,
    ultrafilters,
)
from .terms import App, Term, Var

__all__ = [name for name in dir() if not name.startswith("_")]
