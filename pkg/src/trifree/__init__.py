"""Random independent sets in triangle-free graphs via a multiplicative weight process.

The package samples the process, verifies its probabilistic identities by
exhaustive enumeration, estimates inclusion probabilities by seeded Monte
Carlo, and computes exact fractional chromatic numbers for comparison.
"""

from .estimator import EstimateReport, empirical_min_inclusion, estimate_inclusion, sample_indicators
from .estimators import FractionalChromaticNumber, WeightProcessSampler
from .exact import (
    ExactReport,
    exact_expectation_main,
    exact_expectation_modified,
    exact_inclusion,
    verify_claim_martingale,
    verify_claim_procrel,
)
from .fractional import (
    FractionalColoring,
    chi_f_upper_bound_from_inclusion,
    enumerate_maximal_independent_sets,
    fractional_chromatic_number,
)
from .graph import (
    Graph,
    OrderedGraph,
    check_triangle_free,
    degeneracy_order,
    local_triangle_bound,
    order_by,
    order_by_decreasing_degree,
)
from .process import inclusion_integrand, run_modified_process, run_process
from .theorems import (
    ALPHA,
    local_shearer_weights,
    maingen_condition_check,
    maingen_driver,
    mainproc_check_and_bound,
    theorem_main_driver,
)

__version__ = "0.1.0"
