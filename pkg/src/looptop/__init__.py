"""Exact and numeric evaluation of a supertrace functional on loop-space
wedge words and of its zeta-regularized top-degree counterpart."""

from .clifford import CliffordElement, cl_mul, sub_top_coeff, supertrace
from .exactnum import LaurentU, PolyExp, laurent_to_complex, polyexp_eval_at_one, polyexp_integrate
from .holonomy import (
    BasisCovector,
    LoopHolonomyModel,
    green_inner,
    green_inner_quadrature,
    spectrum,
    spinor_holonomy,
    tangent_holonomy,
    tangent_transport,
    zeta_det_closed,
    zeta_det_special_values,
    zeta_fn_numeric,
)
from .pfaffian import pfaffian, pfaffian_sq_is_det
from .qside import q_coefficient_fast, q_coefficient_oracle, q_parity_check
from .simplex import j_closed, j_numeric, j_oracle
from .topdegree import (
    ReferenceFrame,
    WedgeWord,
    finite_top_degree,
    finite_top_degree_oracle,
    loop_top_degree,
)
from .verifier import SweepConfig, VerificationCase, generate_cases, sweep, verify_case
