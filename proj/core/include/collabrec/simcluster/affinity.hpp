#pragma once

#include <optional>
#include <vector>

#include "collabrec/simcluster/similarity.hpp"

namespace collabrec::simcluster {

struct AffinityOptions {
  double damping = 0.5;          // in [0.5, 1)
  int max_iter = 200;
  int convergence_iter = 15;     // iterations with an unchanged exemplar set
  std::optional<double> preference;  // nullopt: median off-diagonal similarity
};

/// Labels hold the index of each point's exemplar, so an exemplar's label is
/// its own index. Use dense_labels() for 0..k-1 cluster ids.
struct ClusterAssignment {
  std::vector<int> labels;
  std::vector<int> exemplars;  // ascending
  int n_clusters = 0;
  int iterations_run = 0;
  bool converged = false;
  double preference = 0.0;
};

/// Median of the off-diagonal entries (mean of the two middle values for
/// even counts).
double median_preference(const SimilarityMatrix& sim);

/// Affinity propagation by responsibility/availability message passing.
///
/// Before iterating, column k of the similarity matrix (preference on the
/// diagonal) is raised by 1e-12 * max(1, max|s|) * (n - k) / n. The shift is
/// far below any meaningful similarity gap; it only breaks exact symmetries
/// (duplicate profiles) in favour of the lower index, which keeps runs
/// deterministic where reference implementations inject random noise.
///
/// Special cases: n == 1 yields one cluster. If every off-diagonal
/// similarity is identical, the result is a single cluster with exemplar 0
/// unless the preference exceeds that common value, in which case every
/// point is its own exemplar. If a run ends with no positive
/// r(k,k) + a(k,k), the point maximizing it becomes the only exemplar.
ClusterAssignment affinity_propagation(const SimilarityMatrix& sim,
                                       const AffinityOptions& options = {});

}  // namespace collabrec::simcluster
