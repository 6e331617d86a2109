#include "collabrec/simcluster/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "collabrec/error.hpp"

namespace collabrec::simcluster {
namespace {

constexpr double kTieBreak = 1e-12;
constexpr double kEqualTolerance = 1e-12;

ClusterAssignment single_cluster(std::size_t n, double preference) {
  ClusterAssignment out;
  out.labels.assign(n, 0);
  out.exemplars = {0};
  out.n_clusters = 1;
  out.converged = true;
  out.preference = preference;
  return out;
}

ClusterAssignment all_singletons(std::size_t n, double preference) {
  ClusterAssignment out;
  for (std::size_t i = 0; i < n; ++i) {
    out.labels.push_back(static_cast<int>(i));
    out.exemplars.push_back(static_cast<int>(i));
  }
  out.n_clusters = static_cast<int>(n);
  out.converged = true;
  out.preference = preference;
  return out;
}

// Every point takes the exemplar it is most similar to (lowest index on
// ties); exemplars take themselves.
void assign_labels(const SimilarityMatrix& sim, ClusterAssignment& out) {
  const std::size_t n = sim.size();
  out.labels.assign(n, -1);
  for (int e : out.exemplars) out.labels[static_cast<std::size_t>(e)] = e;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.labels[i] >= 0) continue;
    int best = out.exemplars.front();
    double best_s = sim(i, static_cast<std::size_t>(best));
    for (int e : out.exemplars) {
      const double s = sim(i, static_cast<std::size_t>(e));
      if (s > best_s) {
        best_s = s;
        best = e;
      }
    }
    out.labels[i] = best;
  }
  out.n_clusters = static_cast<int>(out.exemplars.size());
}

}  // namespace

double median_preference(const SimilarityMatrix& sim) {
  const std::size_t n = sim.size();
  if (n < 2) return n == 1 ? sim(0, 0) : 0.0;
  std::vector<double> off;
  off.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) off.push_back(sim(i, j));
    }
  }
  std::sort(off.begin(), off.end());
  const std::size_t m = off.size();
  return m % 2 ? off[m / 2] : 0.5 * (off[m / 2 - 1] + off[m / 2]);
}

ClusterAssignment affinity_propagation(const SimilarityMatrix& sim, const AffinityOptions& options) {
  if (!(options.damping >= 0.5 && options.damping < 1.0)) {
    throw validation_error("affinity propagation: damping must lie in [0.5, 1)");
  }
  if (options.max_iter < 1 || options.convergence_iter < 1) {
    throw validation_error("affinity propagation: iteration limits must be positive");
  }
  const std::size_t n = sim.size();
  if (n == 0) throw validation_error("affinity propagation: empty similarity matrix");

  const double preference = options.preference.value_or(median_preference(sim));
  if (n == 1) return single_cluster(1, preference);

  // Degenerate input: all off-diagonal similarities equal.
  {
    const double first = sim(0, 1);
    bool all_equal = true;
    for (std::size_t i = 0; i < n && all_equal; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && std::abs(sim(i, j) - first) > kEqualTolerance) {
          all_equal = false;
          break;
        }
      }
    }
    if (all_equal) {
      return preference > first + kEqualTolerance ? all_singletons(n, preference)
                                                  : single_cluster(n, preference);
    }
  }

  double scale = std::max(1.0, std::abs(preference));
  for (double v : sim.values()) scale = std::max(scale, std::abs(v));
  const double tie = kTieBreak * scale;

  std::vector<double> s(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double base = i == k ? preference : sim(i, k);
      s[i * n + k] = base + tie * static_cast<double>(n - k) / static_cast<double>(n);
    }
  }

  const double damping = options.damping;
  std::vector<double> r(n * n, 0.0);
  std::vector<double> a(n * n, 0.0);
  std::vector<int> exemplars;
  std::vector<int> previous;
  int stable = 0;

  ClusterAssignment out;
  out.preference = preference;

  for (int it = 1; it <= options.max_iter; ++it) {
    out.iterations_run = it;

    // r(i,k) <- s(i,k) - max_{k' != k} [a(i,k') + s(i,k')]
    for (std::size_t i = 0; i < n; ++i) {
      const double* si = &s[i * n];
      const double* ai = &a[i * n];
      double max1 = -std::numeric_limits<double>::infinity();
      double max2 = max1;
      std::size_t arg1 = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const double v = ai[k] + si[k];
        if (v > max1) {
          max2 = max1;
          max1 = v;
          arg1 = k;
        } else if (v > max2) {
          max2 = v;
        }
      }
      double* ri = &r[i * n];
      for (std::size_t k = 0; k < n; ++k) {
        const double computed = si[k] - (k == arg1 ? max2 : max1);
        ri[k] = damping * ri[k] + (1.0 - damping) * computed;
      }
    }

    // a(i,k) <- min(0, r(k,k) + sum_{i' not in {i,k}} max(0, r(i',k)))
    // a(k,k) <- sum_{i' != k} max(0, r(i',k))
    for (std::size_t k = 0; k < n; ++k) {
      double positive = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i != k) positive += std::max(0.0, r[i * n + k]);
      }
      const double rkk = r[k * n + k];
      for (std::size_t i = 0; i < n; ++i) {
        double computed;
        if (i == k) {
          computed = positive;
        } else {
          computed = std::min(0.0, rkk + positive - std::max(0.0, r[i * n + k]));
        }
        a[i * n + k] = damping * a[i * n + k] + (1.0 - damping) * computed;
      }
    }

    exemplars.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (r[k * n + k] + a[k * n + k] > 0.0) exemplars.push_back(static_cast<int>(k));
    }
    stable = (it > 1 && exemplars == previous) ? stable + 1 : 1;
    previous = exemplars;
    if (stable >= options.convergence_iter && !exemplars.empty()) {
      out.converged = true;
      break;
    }
  }

  if (exemplars.empty()) {
    std::size_t best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      const double v = r[k * n + k] + a[k * n + k];
      if (v > best_v) {
        best_v = v;
        best = k;
      }
    }
    exemplars.push_back(static_cast<int>(best));
  }
  out.exemplars = exemplars;
  assign_labels(sim, out);
  return out;
}

}  // namespace collabrec::simcluster
