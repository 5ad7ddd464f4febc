"""Exact tables and inequality checks for broken k-diamond partition counts."""

from ._bkd import (
    Table,
    alpha,
    bessel_I,
    bessel_remainder,
    certify_phi_psi,
    conjecture_threshold,
    delta_bounds,
    delta_oracle,
    delta_table,
    dlog_margin,
    domination_thresholds,
    eta_quotient,
    jensen_hyperbolic,
    jensen_polynomial,
    jensen_threshold,
    lambda_bounds,
    lemma_uv,
    logconcave_margin,
    reverify_certificate,
    root_ordering,
    run_cli,
    sandwich,
    scan,
    table_from_values,
    theta_bounds,
    theta_exact,
    theta_monotone_margin,
    turan3_margin,
    x_k,
)

__all__ = [name for name in dir() if not name.startswith("_")]
