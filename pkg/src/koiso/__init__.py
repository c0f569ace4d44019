"""Finite Lie-algebra contractions for the second-order deformation analysis
of the symmetric metrics on SU(n)/SO(n) and SU(2n)/Sp(n).

The package builds orthonormal bases and Cartan decompositions, extracts
Casimir and sandwich eigenvalues, contracts the invariant cubic form and the
obstruction polynomials, and turns the resulting coefficient into a rigidity
verdict, checking every value against its closed form along the way.
"""

from .algebras import (
    AI,
    AII,
    Family,
    OrthonormalBasis,
    SymmetricPair,
    cartan_decomposition,
    killing_form_ratio,
    pair_residuals,
    structure_constants,
    su_basis,
)
from .casimir import (
    PairConstants,
    ScalarConstant,
    casimir_on_defining,
    casimir_on_subspace,
    compute_pair_constants,
    partial_casimir_defining,
    sandwich_apply,
    sandwich_casimir_identity_check,
    sandwich_constant,
)
from .closedforms import closed_forms, cubic_norm_closed
from .cubics import (
    CubicEvaluation,
    ObstructionConstants,
    SigmaTensor,
    aux_identity_check,
    cubic_casimir_check,
    cubic_form,
    cubic_norm_contraction,
    extract_constants,
    invariant_power,
    norm_restricted,
    obstruction_polynomials,
    polarized_cubic,
    restricted_components,
    sigma_tensor,
)
from .matrices import (
    Tolerance,
    anticommutator,
    product_trace,
    random_su,
    trace_inner_product,
    tracefree_projection,
)
from .report import ConstantsReport, build_constants_report, run_verification
from .rigidity import (
    PARTIAL_INTEGRABILITY,
    RIGID_SECOND_ORDER,
    RigidityVerdict,
    criticality_check,
    criticality_variety_agreement,
    eh_third_variation,
    nu_third_variation,
    odd_m_spectral_argument,
    rigidity_verdict,
    variety_membership,
    variety_witness,
)
from .roots import RootSystemData, freudenthal_eigenvalue, so_root_system, sp_root_system, su_root_system

__version__ = "0.1.0"
