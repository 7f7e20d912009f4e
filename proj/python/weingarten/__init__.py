"""Generating curves of rotational Weingarten surfaces of parabolic type in H^3."""

from ._weingarten import (
    GaussConstant,
    GeneratingCurve,
    Kappa1Constant,
    Kappa2Constant,
    LinearPrincipal,
    TraceOptions,
    WeingartenError,
    classify,
    closedform,
    contact_angle,
    extrema,
    integral_identity_residual,
    measured_height,
    mesh_obj,
    normalize_angle,
    period,
    regime_of,
    render_svg,
    run_acceptance,
    self_intersections,
    spec_from_linear,
    symmetry_deviation,
    trace,
    weingarten_residual,
    write_figures,
)

__all__ = [name for name in dir() if not name.startswith("_")]
