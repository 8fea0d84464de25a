from .transform import (
    char_poly,
    mu_hat,
    mu_hat_discrete,
    tail_hat,
    product_transform,
    truncation_depth,
    frac_product,
    bad_step_bound,
    bad_step_check,
)
from .oscillatory import (
    OscillatoryResult,
    oscillatory,
    oscillatory_detail,
    oscillatory_at_level,
    choose_level,
    transport_bound,
    linearized_bound,
)
from .profile import (
    DecayProfile,
    decay_profile,
    fit_exponent,
    log_grid,
    write_profile_csv,
    save_profile,
    load_profile,
)

__all__ = [
    "char_poly",
    "mu_hat",
    "mu_hat_discrete",
    "tail_hat",
    "product_transform",
    "truncation_depth",
    "frac_product",
    "bad_step_bound",
    "bad_step_check",
    "OscillatoryResult",
    "oscillatory",
    "oscillatory_detail",
    "oscillatory_at_level",
    "choose_level",
    "transport_bound",
    "linearized_bound",
    "DecayProfile",
    "decay_profile",
    "fit_exponent",
    "log_grid",
    "write_profile_csv",
    "save_profile",
    "load_profile",
]
