#pragma once

#include <span>
#include <vector>

#include "collabrec/corpus/profile.hpp"
#include "collabrec/simcluster/affinity.hpp"

namespace collabrec::simcluster {

/// Renumbers arbitrary labels to 0..k-1 in order of first appearance.
std::vector<int> dense_labels(std::span<const int> labels);

struct LabelledProfile {
  corpus::Profile profile;
  int cluster = 0;
};

/// Throws a validation Error if the lengths differ.
std::vector<LabelledProfile> relabel(std::span<const corpus::Profile> profiles,
                                     const ClusterAssignment& assignment);

}  // namespace collabrec::simcluster
