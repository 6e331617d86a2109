#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "collabrec/simcluster/affinity.hpp"
#include "collabrec/simcluster/projection.hpp"
#include "collabrec/simcluster/similarity.hpp"

namespace collabrec::simcluster {

/// {"technique": ..., "n": ..., "ids": [...], "matrix": [[...], ...]}
nlohmann::json to_json(const SimilarityMatrix& sim, std::span<const std::string> ids);

/// {"labels": [...], "exemplars": [...], "converged": bool, ...}
nlohmann::json to_json(const ClusterAssignment& assignment);

/// Header "id,x,y,cluster", one row per point.
void write_coordinates_csv(std::ostream& out, std::span<const std::string> ids,
                           const Projection& projection, std::span<const int> clusters);

}  // namespace collabrec::simcluster
