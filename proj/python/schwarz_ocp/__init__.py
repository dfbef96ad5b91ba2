from ._core import (
    format_sci5,
    g,
    gamma_of_alpha,
    main,
    rate_vs_gamma_scan,
    rho_c,
    rho_e,
    rho_e_beta,
    run_cell,
    verify,
)

__all__ = [
    "format_sci5",
    "g",
    "gamma_of_alpha",
    "main",
    "rate_vs_gamma_scan",
    "rho_c",
    "rho_e",
    "rho_e_beta",
    "run_cell",
    "verify",
]
