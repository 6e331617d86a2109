#pragma once

#include <array>
#include <span>
#include <vector>

#include "collabrec/vectorize/representation.hpp"

namespace collabrec::simcluster {

struct Projection {
  std::vector<std::array<double, 2>> points;
  bool degenerate = false;  // all inputs identical; every point sits at the origin
};

/// Coordinates on the top two principal components of the mean-centred rows.
/// Each component's sign is fixed so its largest-magnitude loading is
/// positive. Requires at least two rows of equal length.
Projection project_2d(std::span<const std::vector<double>> rows);
Projection project_2d(std::span<const vectorize::Representation> vectors);

}  // namespace collabrec::simcluster
