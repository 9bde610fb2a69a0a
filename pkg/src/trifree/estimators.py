"""scikit-learn style wrappers around the sampler and the fractional colouring LP."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .estimator import empirical_min_inclusion, estimate_inclusion, sample_indicators
from .exact import exact_inclusion
from .fractional import DEFAULT_CAP, chi_f_upper_bound_from_inclusion, fractional_chromatic_number
from .graph import degeneracy_order, identity_order, order_by_decreasing_degree
from .theorems import main_weight
from .validation import check_graph, check_weights

_ORDERINGS = {
    "degeneracy": lambda g: degeneracy_order(g)[0],
    "degree": order_by_decreasing_degree,
    "identity": identity_order,
}


class WeightProcessSampler(BaseEstimator):
    """Random independent sets from the weight process, with inclusion estimates.

    Parameters
    ----------
    w0 : "auto", float or array of shape (n_vertices,)
        Initial weights.  "auto" uses ``(ln d - 2 ln ln d) / (2d)`` for the
        degeneracy ``d`` of the fitted graph (which must be at least 3).
    ordering : {"degeneracy", "degree", "identity"}
    n_samples : int
        Replicas used by ``fit`` to estimate inclusion probabilities.
        Zero skips estimation.
    random_state : int
    n_jobs : int or None

    Attributes
    ----------
    ordered_graph_, degeneracy_, w0_, report_, inclusion_
    """

    def __init__(self, w0="auto", ordering="degeneracy", n_samples=100_000, random_state=0, n_jobs=None):
        self.w0 = w0
        self.ordering = ordering
        self.n_samples = n_samples
        self.random_state = random_state
        self.n_jobs = n_jobs

    def fit(self, G, y=None):
        G = check_graph(G)
        if self.ordering not in _ORDERINGS:
            raise ValueError(f"ordering must be one of {sorted(_ORDERINGS)}, got {self.ordering!r}")
        self.ordered_graph_ = _ORDERINGS[self.ordering](G)
        self.degeneracy_ = degeneracy_order(G)[1]
        if isinstance(self.w0, str):
            if self.w0 != "auto":
                raise ValueError(f"unknown w0 {self.w0!r}")
            self.w0_ = np.full(G.n, main_weight(self.degeneracy_))
        else:
            self.w0_ = check_weights(self.w0, G.n)
        self.n_vertices_ = G.n
        if self.n_samples:
            self.report_ = estimate_inclusion(
                self.ordered_graph_, self.w0_, self.n_samples, self.random_state, self.n_jobs
            )
            self.inclusion_ = self.report_.estimates
        return self

    def sample(self, n_samples=1, start=0):
        """Boolean indicator rows of sampled independent sets (replicas ``start..start+n_samples-1``)."""
        check_is_fitted(self, "w0_")
        return sample_indicators(self.ordered_graph_, self.w0_, n_samples, self.random_state, start)

    def transform(self, G=None):
        """Per-vertex inclusion estimates of the fitted graph."""
        check_is_fitted(self, "inclusion_")
        return self.inclusion_

    def exact_inclusion(self):
        check_is_fitted(self, "w0_")
        return np.array(exact_inclusion(self.ordered_graph_, self.w0_).per_vertex_inclusion)

    def min_inclusion(self):
        check_is_fitted(self, "report_")
        return empirical_min_inclusion(self.report_)

    def chi_f_upper_bound(self, q=None):
        """``1 / min q``; defaults to the lower confidence bounds of the fitted estimates."""
        if q is None:
            check_is_fitted(self, "report_")
            q = [e.ci_low for e in self.report_.per_vertex]
        return chi_f_upper_bound_from_inclusion(q)


class FractionalChromaticNumber(BaseEstimator):
    """Exact ``chi_f`` by the covering LP over maximal independent sets."""

    def __init__(self, cap=DEFAULT_CAP):
        self.cap = cap

    def fit(self, G, y=None):
        G = check_graph(G)
        self.value_, self.coloring_ = fractional_chromatic_number(G, self.cap)
        self.n_vertices_ = G.n
        return self

    def transform(self, G=None):
        """Coverage of each vertex by the optimal colouring (all at least 1)."""
        check_is_fitted(self, "coloring_")
        return self.coloring_.coverage(self.n_vertices_)
