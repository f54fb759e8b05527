"""Exception taxonomy. Every error carries a stable machine-readable code."""

from __future__ import annotations


class HeunRHError(Exception):
    """Base class for all library errors."""

    code = "error"


# --- numerics ---------------------------------------------------------------

class NonConvergence(HeunRHError):
    code = "non_convergence"


class InvalidExponent(HeunRHError):
    code = "invalid_exponent"


class SingularityHit(HeunRHError):
    code = "singularity_hit"


class StepUnderflow(HeunRHError):
    code = "step_underflow"


class IllConditioned(HeunRHError):
    code = "ill_conditioned"


# --- fuchsian ---------------------------------------------------------------

class DegenerateDenominator(HeunRHError):
    code = "degenerate_denominator"


class AtSingularity(HeunRHError):
    code = "at_singularity"


class CriticalValue(HeunRHError):
    code = "critical_value"


class ResonantDelta(HeunRHError):
    code = "resonant_delta"


class TriangularExpansion(HeunRHError):
    code = "triangular_expansion"


# --- pvi_series -------------------------------------------------------------

class BadDelta(HeunRHError):
    code = "bad_delta"


class BadCenter(HeunRHError):
    code = "bad_center"


class ZeroLeading(HeunRHError):
    code = "zero_leading"


class RecursionSingular(HeunRHError):
    code = "recursion_singular"


# --- pole_matrices ----------------------------------------------------------

class GaugeSingular(HeunRHError):
    code = "gauge_singular"


# --- heun_reduction ---------------------------------------------------------

class VariantMismatch(HeunRHError):
    code = "variant_mismatch"


# --- monodromy --------------------------------------------------------------

class ResonantExponent(HeunRHError):
    code = "resonant_exponent"


class NormalizationFailure(HeunRHError):
    code = "normalization_failure"


class ResonantAlpha(HeunRHError):
    code = "resonant_alpha"


# --- reducible_rh -----------------------------------------------------------

class OnCutEndpoint(HeunRHError):
    code = "on_cut_endpoint"


class NotSolvable(HeunRHError):
    code = "not_solvable"


class DegenerateHankel(HeunRHError):
    code = "degenerate_hankel"


class NoRootInRegion(HeunRHError):
    code = "no_root_in_region"


class NotAtLocus(HeunRHError):
    code = "not_at_locus"


# --- cli --------------------------------------------------------------------

class ConfigInvalid(HeunRHError):
    code = "config_invalid"
