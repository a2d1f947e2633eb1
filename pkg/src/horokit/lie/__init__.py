"""Structure theory of split sl(n, R)."""

from .algebra import LieAlgebraData, build_split_sl, algebra_to_json, algebra_from_json
from .roots import (
    Root,
    RestrictedRootSystem,
    ParabolicData,
    restricted_root_system,
    parabolic_from_subset,
    parabolic_to_json,
    parabolic_from_json,
)
from .chamber import (
    ChamberVector,
    Classification,
    EpsilonDecomposition,
    chamber_vector,
    from_dual_coords,
    chamber_classify,
    norm_constants,
    epsilon_decompose,
    check_epsilon_decomposition,
)
