"""p-adic Gauss sums, local and global epsilon factors of rank-one modules on the projective line."""

from .characters import (
    AddChar,
    MultChar,
    gauss_sum,
    gauss_sum_extension,
    gross_koblitz,
    gross_koblitz_check,
    jacobi_sum,
    stickelberger_valuation,
)
from .epsilon import (
    LocalFormJet,
    RationalForm,
    determinant_formula_check,
    epsilon_holonomic,
    epsilon_natural,
    epsilon_sharp,
    form_jet,
)
from .finite_geometry import ClosedPoint, FiniteField, FqElem, closed_points, finite_field, residues_of_point, tower
from .global_modules import (
    INFINITY,
    EpsilonReport,
    LPolynomial,
    RankOneGlobalModule,
    TailNonvanishing,
    anchor_wild_sign,
    frobenius_eigenvalue,
    functional_equation_check,
    global_epsilon,
    gos_chi,
    l_polynomial,
    power_sums,
    verify_lastcor,
    verify_product_formula,
)
from .local_field import FieldCtx, PadicNumber, dwork_theta, make_context, padic_gamma, teichmuller, zeta_p
from .local_modules import (
    Boundary,
    HolonomicLocalObject,
    LaurentDatum,
    PunctualModule,
    RankOneLocalModule,
    UnsupportedModule,
    WeilDeligneChar,
    dual,
    dwork,
    kummer,
    local_fourier,
    nearby_cycle_trace,
    nearby_eval,
    rec_eval,
    stationary_phase,
    tate_twist,
    tensor,
    trivial,
    unramified,
    wd_char,
)
from .reports import Comparison, compare

__version__ = "0.1.0"
