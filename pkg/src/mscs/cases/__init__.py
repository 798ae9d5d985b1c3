from .clustering import (IrisDataset, IrisFormatError, clustering_accuracy, clustering_problem,
                         load_iris)
from .design import pressure_vessel_problem, speed_reducer_problem, spring_problem
from .vibration import (MEASURED, DivergenceError, OdeConfig, VibrationDataset, analytic_response,
                        rk4, rk4_solve, vibration_objective, vibration_problem, write_vibration_csv)

__all__ = [
    "DivergenceError",
    "IrisDataset",
    "IrisFormatError",
    "MEASURED",
    "OdeConfig",
    "VibrationDataset",
    "analytic_response",
    "clustering_accuracy",
    "clustering_problem",
    "load_iris",
    "pressure_vessel_problem",
    "rk4",
    "rk4_solve",
    "speed_reducer_problem",
    "spring_problem",
    "vibration_objective",
    "vibration_problem",
    "write_vibration_csv",
]
