#pragma once

#include <span>
#include <vector>

#include "collabrec/simcluster/similarity.hpp"

namespace collabrec::eval {

/// Mean pairwise similarity inside each cluster of two or more members,
/// macro-averaged over those clusters.
double intra_cluster_similarity(const simcluster::SimilarityMatrix& sim, std::span<const int> labels);

/// Silhouette with distance 1 - similarity. Members of singleton clusters
/// score 0. Requires at least two clusters.
double silhouette(const simcluster::SimilarityMatrix& sim, std::span<const int> labels);

struct DaviesBouldinOptions {
  bool normalize = true;  // L2-normalise every vector first
};

/// Euclidean Davies-Bouldin index. Throws a validation Error with fewer than
/// two clusters or when two clusters share a centroid.
double davies_bouldin(std::span<const std::vector<double>> vectors, std::span<const int> labels,
                      const DaviesBouldinOptions& options = {});

}  // namespace collabrec::eval
