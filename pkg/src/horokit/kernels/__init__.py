from .burger import (LambdaSpec, apply_kernel, apply_operator, burger1_reconstruct,
                     check_forcing, derivatives_at_zero, kernel_F, kernel_Fi, kernel_to_json,
                     ode_residual, order_lambda)
from .bounds import BoundReport, GridSpec, verify_burger2_bounds, verify_kernel_bounds
from .exppoly import NEG_INF, ZERO, ExpPoly, PiecewiseKernel2, one_var
from .schedule import Burger2Kernels, BurgerSchedule, burger2_coefficients, compose, uniform_schedule

__all__ = [
    "ExpPoly", "PiecewiseKernel2", "NEG_INF", "ZERO", "one_var",
    "LambdaSpec", "order_lambda", "kernel_F", "kernel_Fi", "burger1_reconstruct",
    "apply_kernel", "apply_operator", "check_forcing", "ode_residual",
    "derivatives_at_zero", "kernel_to_json",
    "BurgerSchedule", "Burger2Kernels", "burger2_coefficients", "compose", "uniform_schedule",
    "BoundReport", "GridSpec", "verify_kernel_bounds", "verify_burger2_bounds",
]
