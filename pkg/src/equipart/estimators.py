"""scikit-learn style estimators over the partition pipelines.

The pipelines are clustering-shaped: a graph goes in, per-vertex class
labels come out, so they compose with the scikit-learn ecosystem the
same way clusterers over precomputed affinities do. fit accepts either
a Graph or a dense 0/1 symmetric adjacency matrix; labels_ holds the
class index per vertex with -1 marking the exceptional set (like noise
in DBSCAN). Everything else the pipeline reports lands in trailing
underscore attributes.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .bipartition import balanced_cut_search, judicious_bipartition
from .graph import Graph, GraphError, build_graph
from .patterns import PatternGraph, named_pattern
from .pipelines import (
    PipelineParams,
    sparse_dense_partition,
    sparse_equitable_partition,
    sparse_uniform_partition,
    uniform_partition,
)
from .scooping import scoop as _scoop


def as_graph(X) -> Graph:
    """Validate estimator input: a Graph or a square 0/1 adjacency matrix."""
    if isinstance(X, Graph):
        return X
    arr = np.asarray(X)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise GraphError(f"adjacency matrix must be square, got shape {arr.shape}")
    if not np.array_equal(arr, arr.T):
        raise GraphError("adjacency matrix must be symmetric")
    if np.any(np.diag(arr) != 0):
        raise GraphError("adjacency matrix must have a zero diagonal")
    uniq = np.unique(arr)
    if not np.isin(uniq, (0, 1)).all():
        raise GraphError("adjacency entries must be 0 or 1")
    n = arr.shape[0]
    iu, ju = np.nonzero(np.triu(arr, 1))
    return build_graph(n, list(zip(iu.tolist(), ju.tolist())))


class _PartitionEstimator(ClusterMixin, BaseEstimator):
    """Shared fit plumbing: run the pipeline, expose labels and results."""

    def _params(self, **extra) -> PipelineParams:
        raise NotImplementedError

    def _run(self, g: Graph):
        raise NotImplementedError

    def fit(self, X, y=None):
        g = as_graph(X)
        result = self._run(g)
        self.result_ = result
        self.partition_ = result.partition
        self.certificate_ = result.certificate
        self.status_ = result.status
        self.labels_ = np.array(result.partition.labels(), dtype=int)
        self.n_classes_ = result.partition.q
        return self


class ScoopPartitioner(_PartitionEstimator):
    """Iterated minimum-edge (or maximum-edge) scooping.

    Parameters
    ----------
    s : class size; default floor(epsilon * n / 4).
    epsilon : density threshold, also bounds the leftover set.
    mode : "sparse" scoops the graph, "dense" its complement.
    strategy : "exact", "conditional" or "sampled" subset selection.
    """

    def __init__(self, s=None, epsilon=0.3, mode="sparse", strategy="conditional",
                 random_state=0, sample_count=64):
        self.s = s
        self.epsilon = epsilon
        self.mode = mode
        self.strategy = strategy
        self.random_state = random_state
        self.sample_count = sample_count

    def fit(self, X, y=None):
        from .exact import as_fraction, frac_floor

        g = as_graph(X)
        eps = as_fraction(self.epsilon)
        s = self.s if self.s is not None else max(1, frac_floor(eps * g.n / 4))
        result = _scoop(
            g, range(g.n), s, eps, mode=self.mode, strategy=self.strategy,
            seed=self.random_state, sample_count=self.sample_count,
        )
        self.result_ = result
        self.partition_ = result.partition
        self.certificate_ = result.certificate
        self.status_ = "complete" if result.complete else "incomplete"
        self.labels_ = np.array(result.partition.labels(), dtype=int)
        self.n_classes_ = result.partition.q
        return self


class UniformityPartitioner(_PartitionEstimator):
    """Budgeted equitable partition with few non-uniform pairs."""

    def __init__(self, delta=0.1, l=2, max_k=16, exact_budget=16,
                 sample_count=64, max_rounds=32, random_state=0):
        self.delta = delta
        self.l = l
        self.max_k = max_k
        self.exact_budget = exact_budget
        self.sample_count = sample_count
        self.max_rounds = max_rounds
        self.random_state = random_state

    def fit(self, X, y=None):
        g = as_graph(X)
        params = PipelineParams(
            epsilon=self.delta, delta=self.delta, l=self.l, max_k=self.max_k,
            exact_budget=self.exact_budget, sample_count=self.sample_count,
            max_rounds=self.max_rounds, seed=self.random_state,
        )
        result = uniform_partition(g, params)
        self.result_ = result
        self.partition_ = result.partition
        self.report_ = result.report
        self.trace_ = result.trace
        self.status_ = result.status
        self.labels_ = np.array(result.partition.labels(), dtype=int)
        self.n_classes_ = result.partition.q
        return self


class SparseEquitablePartitioner(_PartitionEstimator):
    """Equitable partition, every class sparse-certified at epsilon."""

    def __init__(self, r=3, epsilon=0.25, delta=None, l=2, max_k=16,
                 s=None, mode="sparse", strategy="conditional",
                 sample_count=64, exact_budget=16, max_rounds=32,
                 random_state=0):
        self.r = r
        self.epsilon = epsilon
        self.delta = delta
        self.l = l
        self.max_k = max_k
        self.s = s
        self.mode = mode
        self.strategy = strategy
        self.sample_count = sample_count
        self.exact_budget = exact_budget
        self.max_rounds = max_rounds
        self.random_state = random_state

    def _params(self) -> PipelineParams:
        return PipelineParams(
            epsilon=self.epsilon, r=self.r, delta=self.delta, l=self.l,
            max_k=self.max_k, s_override=self.s, mode=self.mode,
            strategy=self.strategy, sample_count=self.sample_count,
            exact_budget=self.exact_budget, max_rounds=self.max_rounds,
            seed=self.random_state,
        )

    def _run(self, g: Graph):
        return sparse_equitable_partition(g, self.r, self.epsilon, self._params())


class SparseUniformPartitioner(SparseEquitablePartitioner):
    """Sparse equitable partition that is additionally epsilon-uniform."""

    def __init__(self, r=3, epsilon=0.25, k_min=2, delta=None, l=2, max_k=16,
                 s=None, mode="sparse", strategy="conditional", sample_count=64,
                 exact_budget=16, max_rounds=32, random_state=0):
        super().__init__(
            r=r, epsilon=epsilon, delta=delta, l=l, max_k=max_k, s=s, mode=mode,
            strategy=strategy, sample_count=sample_count,
            exact_budget=exact_budget, max_rounds=max_rounds,
            random_state=random_state,
        )
        self.k_min = k_min

    def _run(self, g: Graph):
        return sparse_uniform_partition(g, self.r, self.epsilon, self.k_min, self._params())

    def fit(self, X, y=None):
        super().fit(X, y)
        self.report_ = self.result_.report
        return self


class SparseDensePartitioner(_PartitionEstimator):
    """Equitable partition with sparse- or dense-certified classes,
    driven by induced copies of a pattern (name like "K3"/"P4", or a
    PatternGraph)."""

    def __init__(self, pattern="K3", epsilon=0.25, delta=None, l=2, max_k=16,
                 s=None, b=2, strategy="conditional", sample_count=64,
                 exact_budget=16, max_rounds=32, random_state=0):
        self.pattern = pattern
        self.epsilon = epsilon
        self.delta = delta
        self.l = l
        self.max_k = max_k
        self.s = s
        self.b = b
        self.strategy = strategy
        self.sample_count = sample_count
        self.exact_budget = exact_budget
        self.max_rounds = max_rounds
        self.random_state = random_state

    def _run(self, g: Graph):
        pattern = (
            self.pattern
            if isinstance(self.pattern, PatternGraph)
            else named_pattern(self.pattern)
        )
        params = PipelineParams(
            epsilon=self.epsilon, r=pattern.r, delta=self.delta, l=self.l,
            max_k=self.max_k, s_override=self.s, mode="sparse_or_dense",
            strategy=self.strategy, sample_count=self.sample_count,
            exact_budget=self.exact_budget, max_rounds=self.max_rounds,
            seed=self.random_state, b=self.b,
        )
        return sparse_dense_partition(g, pattern, self.epsilon, params)


class JudiciousBipartitioner(ClusterMixin, BaseEstimator):
    """Two-class split: labels 0 for the sparse class V1, 1 for the rest."""

    def __init__(self, r=3, epsilon=0.25, delta=None, l=2, max_k=16,
                 random_state=0):
        self.r = r
        self.epsilon = epsilon
        self.delta = delta
        self.l = l
        self.max_k = max_k
        self.random_state = random_state

    def fit(self, X, y=None):
        g = as_graph(X)
        params = PipelineParams(
            epsilon=self.epsilon, r=self.r, delta=self.delta, l=self.l,
            max_k=self.max_k, seed=self.random_state,
        )
        result = judicious_bipartition(g, self.r, self.epsilon, params)
        self.result_ = result
        self.status_ = result.status
        labels = np.ones(g.n, dtype=int)
        for v in result.v1:
            labels[v] = 0
        self.labels_ = labels
        self.density_v1_ = result.density_v1
        self.density_v2_ = result.density_v2
        return self


class BalancedCutPartitioner(ClusterMixin, BaseEstimator):
    """Balanced max-cut local search; labels 0/1 give the two sides."""

    def __init__(self, r=3, epsilon=0.25, restarts=16, random_state=0):
        self.r = r
        self.epsilon = epsilon
        self.restarts = restarts
        self.random_state = random_state

    def fit(self, X, y=None):
        g = as_graph(X)
        params = PipelineParams(epsilon=self.epsilon, r=self.r, seed=self.random_state)
        result = balanced_cut_search(g, params, restarts=self.restarts)
        self.result_ = result
        labels = np.ones(g.n, dtype=int)
        for v in result.v1:
            labels[v] = 0
        self.labels_ = labels
        self.cut_ = result.cut
        self.ratio_ = result.ratio
        return self
