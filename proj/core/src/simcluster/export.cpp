#include "collabrec/simcluster/export.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "collabrec/error.hpp"

namespace collabrec::simcluster {

nlohmann::json to_json(const SimilarityMatrix& sim, std::span<const std::string> ids) {
  nlohmann::json matrix = nlohmann::json::array();
  for (std::size_t i = 0; i < sim.size(); ++i) {
    const auto row = sim.row(i);
    matrix.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"technique", vectorize::to_string(sim.technique())},
          {"n", sim.size()},
          {"ids", std::vector<std::string>(ids.begin(), ids.end())},
          {"matrix", std::move(matrix)}};
}

nlohmann::json to_json(const ClusterAssignment& assignment) {
  return {{"labels", assignment.labels},
          {"exemplars", assignment.exemplars},
          {"n_clusters", assignment.n_clusters},
          {"iterations", assignment.iterations_run},
          {"converged", assignment.converged},
          {"preference", assignment.preference}};
}

void write_coordinates_csv(std::ostream& out, std::span<const std::string> ids,
                           const Projection& projection, std::span<const int> clusters) {
  if (ids.size() != projection.points.size() || ids.size() != clusters.size()) {
    throw validation_error("coordinates: ids, points and clusters differ in length");
  }
  out << "id,x,y,cluster\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::ostringstream line;
    line << std::setprecision(17) << ids[i] << ',' << projection.points[i][0] << ','
         << projection.points[i][1] << ',' << clusters[i] << '\n';
    out << line.str();
  }
}

}  // namespace collabrec::simcluster
