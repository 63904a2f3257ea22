import numpy as np

from apps.bridge_sim.domain import SamplePath
from apps.bridge_sim.logic.simulate import to_unit_horizon
from apps.common.config import ENERGY_RULES
from apps.common.exceptions import DomainError
from apps.path_statistics.domain import EnergyResult


def energy_from_arrays(unit_times: np.ndarray, values: np.ndarray, rule: str = "rectangle") -> np.ndarray:
    """
    I_T for one path (1-d `values`) or a batch of paths (one per row) on a
    unit-horizon grid.

    rectangle: Σ_{i<n} X_i²/(1−t_i)²·Δt_i  (left endpoints)
    trapezoid: Σ_{i<n} ½(f_i + f_{i+1})·Δt_i
    """

    if rule not in ENERGY_RULES:
        raise DomainError(f"unknown quadrature rule {rule!r}, expected one of {ENERGY_RULES}")

    unit_times = np.asarray(unit_times, dtype=float)
    values = np.asarray(values, dtype=float)
    if unit_times.size == 0:
        raise DomainError("weighted energy needs a non-empty grid")

    steps = np.diff(unit_times)
    integrand = values**2 / (1.0 - unit_times) ** 2

    if rule == "rectangle":
        return integrand[..., :-1] @ steps

    return 0.5 * (integrand[..., :-1] + integrand[..., 1:]) @ steps


def weighted_energy(path: SamplePath, rule: str = "rectangle") -> EnergyResult:
    """The weighted energy I_T of a path, mapped to the unit horizon first."""

    times, values = to_unit_horizon(path).as_arrays()
    return EnergyResult(i_t=float(energy_from_arrays(times, values, rule)), rule=rule)
