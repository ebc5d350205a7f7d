from ._netpdae import (
    ModalPipe,
    Scenario,
    builtin_scenario,
    conv_eps,
    conv_tau,
    eps_for_split_index,
    eps_grid,
    eps_order,
    fit_power_law,
    halving_sequence,
    load_scenario,
    matrices,
    norm_bounds,
    parse_scenario,
    pressure_mode,
    series_initial_flux,
    series_solution,
    solve,
    split_index,
    tableau,
    with_reaction,
)

__all__ = [
    "ModalPipe",
    "Scenario",
    "builtin_scenario",
    "conv_eps",
    "conv_tau",
    "eps_for_split_index",
    "eps_grid",
    "eps_order",
    "fit_power_law",
    "halving_sequence",
    "load_scenario",
    "matrices",
    "norm_bounds",
    "parse_scenario",
    "pressure_mode",
    "series_initial_flux",
    "series_solution",
    "solve",
    "split_index",
    "tableau",
    "with_reaction",
]
