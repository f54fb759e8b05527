"""Heun equations through the linear system of Painleve VI: pole-limit
systems, Schlesinger gauges, numerical monodromy, and explicit Heun
polynomials from reducible monodromy."""

from .config import DEFAULTS
from .fuchsian import (
    AsymptoticExpansion,
    FuchsianSystem,
    PviParameters,
    derived_parameters,
    evaluate_A,
    isomonodromy_flow,
    make_system,
    psi_expansion,
    pvi_constants,
    pvi_residual,
    recover_pvi,
    system_from_dict,
    system_to_dict,
)
from .heun_reduction import (
    HeunCanonicalGHE,
    HeunParameters,
    accessory_from_c0,
    accessory_from_d1,
    ghe_residual,
    reduce,
    to_canonical_ghe,
)
from .monodromy import (
    FrobeniusData,
    MonodromySet,
    TraceCoordinates,
    fricke_residual,
    frobenius_series,
    monodromy_matrices,
    reducible_monodromy_set,
    trace_coordinates,
)
from .numerics import (
    ContourPath,
    QuadratureRule,
    hankel_det,
    hankel_solve,
    integrate_singular,
    transport,
)
from .pole_matrices import (
    LimitSystem,
    SchlesingerGauge,
    Variant,
    apply_gauge,
    gauge_r0,
    gauge_r1,
    gauge_r2,
    limit_check,
    limit_hat,
    limit_regular,
    limit_tilde,
)
from .pvi_series import LaurentJet, double_pole_jet, extend_jet, simple_pole_jet
from .reducible_rh import (
    MomentTable,
    RHSolution,
    ReducibleData,
    build_heun_polynomial,
    classical_pvi_y,
    f_coefficients,
    heun_locus,
    heun_locus_sratio,
    make_reducible_data,
    moments,
    solve_rn,
    weight,
)

__version__ = "0.1.0"
