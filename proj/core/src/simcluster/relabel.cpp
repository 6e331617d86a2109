#include "collabrec/simcluster/relabel.hpp"

#include <map>
#include <string>

#include "collabrec/error.hpp"

namespace collabrec::simcluster {

std::vector<int> dense_labels(std::span<const int> labels) {
  std::map<int, int> mapping;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int label : labels) {
    auto [it, inserted] = mapping.emplace(label, static_cast<int>(mapping.size()));
    out.push_back(it->second);
  }
  return out;
}

std::vector<LabelledProfile> relabel(std::span<const corpus::Profile> profiles,
                                     const ClusterAssignment& assignment) {
  if (profiles.size() != assignment.labels.size()) {
    throw validation_error("relabel: " + std::to_string(profiles.size()) + " profiles but " +
                           std::to_string(assignment.labels.size()) + " labels");
  }
  const auto dense = dense_labels(assignment.labels);
  std::vector<LabelledProfile> out;
  out.reserve(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) out.push_back({profiles[i], dense[i]});
  return out;
}

}  // namespace collabrec::simcluster
