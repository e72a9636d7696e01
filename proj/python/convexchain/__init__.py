"""Exact law, roots, moments and simulation of the vertex number of random convex chains.

Exact values come back as ``fractions.Fraction``. Arguments that take a
rational accept a Fraction or a decimal/fraction string such as ``"1e-30"``.
"""

from ._convexchain import (
    CertificationError,
    __version__,
    asymptotic_ratios,
    bernoulli_factorization,
    chain_vertex_count,
    check_pf_minors,
    check_strong_log_concavity,
    cumulant_bound_report,
    cumulants,
    factorial_moments,
    isolate_roots,
    kappa4_of_Yn,
    kolmogorov_distance,
    local_limit_profile,
    mod_gaussian_profile,
    moderate_deviation_profile,
    monic_poly,
    pgf_eval,
    pmf,
    pmf_compositions,
    pmf_weights,
    reflect_into_triangle,
    roots_interlace,
    simulate,
    verify,
    weight,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
