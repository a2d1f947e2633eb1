from .counting import CountResult, unipotent_lattice_count
from .eisenstein import TestFunction, bump, eval_test_function
from .fit import DecayFit, fit_all, fit_decay
from .horocycle import (HeightRow, HoroExperiment, HoroRow, fundamental_domain_integral,
                        height_average, height_integral, horocycle_average, horocycle_points,
                        n_points, required_points)
from .quadrature import composite_integrate, composite_nodes
from .surface import (SurfacePoint, apply_word, height_many, invariant_height, mobius,
                      random_word, reduce_many, reduce_point, word_matrix)

__all__ = [
    "SurfacePoint", "reduce_point", "reduce_many", "invariant_height", "height_many",
    "apply_word", "word_matrix", "mobius", "random_word",
    "TestFunction", "bump", "eval_test_function",
    "HoroExperiment", "HoroRow", "HeightRow", "horocycle_average", "horocycle_points",
    "height_average", "height_integral", "fundamental_domain_integral", "n_points",
    "required_points", "composite_integrate", "composite_nodes",
    "DecayFit", "fit_decay", "fit_all", "CountResult", "unipotent_lattice_count",
]
