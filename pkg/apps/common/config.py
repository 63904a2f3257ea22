# Numerical defaults shared by the apps. Django settings may override the
# runtime ones (see `config/settings/base.py`), these are the fallbacks.

QUADRATURE_CONFIG = {
    "rel_tol": 1e-10,
    "abs_tol": 1e-12,
    "singularity_width": 1e-6,
    # extra room added to the analytic truncation point of the semi-infinite integrals
    "truncation_safety": 50.0,
    "subdivision_limit": 500,
}

# |2α − 1| below this switches the variance formulas to their logarithmic limit
ALPHA_HALF_SWITCH = 1e-6

SIMULATION_CONFIG = {
    "horizon": 1.0,
    "n_grid": 300,
    "observation_end": 0.8,
    "generators": ["exact", "euler"],
}

ENERGY_RULES = ["rectangle", "trapezoid"]

INVERSION_CONFIG = {
    # forward map verified strictly increasing on [0, monotone_upper] before inverting
    "monotone_upper": 200.0,
    "monotone_spacing": 0.25,
    "root_tol": 1e-8,
    "x_tol": 1e-12,
    "max_expansions": 60,
}

PRIOR_CONFIG = {
    "uniform_upper": 10.0,
    "jeffreys_upper": 1000.0,
    "posterior_tol": 1e-8,
    "grid_size": 1025,
    "outer_grid_size": 257,
    # half width of the dense window, in posterior standard deviations
    "window_sds": 12.0,
}

EXPERIMENT_CONFIG = {
    "alphas": [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 8.0, 10.0],
    "observation_end": 0.8,
    "n_paths": 10_000,
    "full_scale_n_paths": 100_000,
    "n_grid": 300,
    "seed": 20140521,
    "estimators": ["mle", "cmle", "jeffreys_mean", "jeffreys_median", "uniform_mean", "uniform_median"],
    "max_degenerate_fraction": 0.01,
    "chunk_size": 250,
    # rectangle-rule discretization allowance on the mean MLE, scaled as 1/n_grid
    "discretization_constant": 24.0,
}

CLI_CONFIG = {
    "schema": "v1",
    "float_format": "%.17g",
    "figure_observation_ends": [0.7, 0.8, 0.9],
    "figure1_alphas": [0.0, 0.5, 1.0, 2.0, 5.0],
}

# messages used by the API layer | To make it DRY
API_RESPONSE_ACTION_CODES = {"display_error_1": "DISPLAY_ERROR_MESSAGES"}
