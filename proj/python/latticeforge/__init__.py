"""Rank-1 lattice generating vectors via reduced CBC construction.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from latticeforge._core import (  # noqa: F401
    CbcResult,
    DiscrepancyResult,
    GeneratingVector,
    Instance,
    cbc_bound,
    construct,
    discrepancy_bound,
    evaluate,
    lattice_points,
    local_discrepancy,
    make_instance,
    mean_bound,
    mean_r_bruteforce,
    n_star,
    phi_table,
    qmc_error_demo,
    s_n,
    s_n_asymptotic,
    search_space,
    sigma_d,
    star_discrepancy_exact,
    t_closed_form,
    t_direct,
    weighted_star_discrepancy_exact,
)

__all__ = [
    "CbcResult",
    "DiscrepancyResult",
    "GeneratingVector",
    "Instance",
    "cbc_bound",
    "construct",
    "discrepancy_bound",
    "evaluate",
    "lattice_points",
    "local_discrepancy",
    "make_instance",
    "mean_bound",
    "mean_r_bruteforce",
    "n_star",
    "phi_table",
    "qmc_error_demo",
    "s_n",
    "s_n_asymptotic",
    "search_space",
    "sigma_d",
    "star_discrepancy_exact",
    "t_closed_form",
    "t_direct",
    "weighted_star_discrepancy_exact",
]

__version__ = "0.1.0"
