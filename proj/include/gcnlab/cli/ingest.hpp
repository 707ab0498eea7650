#pragma once

// Point-cloud ingestion for the command-line front end.
//
// CSV: one point per row, `x1,...,xD` with an optional trailing weight
// column. A non-numeric first row is a header; a header whose last field is
// "weight" (any case) marks the weight column, as does `weighted = true`.
// JSON: {"points": [[...], ...], "weights": [...]} with weights optional.

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "gcnlab/measure.hpp"

namespace gcnlab::cli {

struct PointCloud {
  Matrix points;                  ///< D x N
  std::optional<Vector> weights;  ///< raw, not yet normalized
};

PointCloud parse_csv(std::istream& in, bool weighted = false);
PointCloud parse_json(const std::string& text);

/// Dispatches on a ".json" extension, otherwise CSV.
PointCloud read_point_cloud(const std::string& path, bool weighted = false);

/// Uniform weights when absent; weights off from 1 by more than 1e-6 are
/// renormalized and a warning is appended.
DiscreteMeasure to_measure(const PointCloud& cloud,
                           std::vector<std::string>* warnings = nullptr);

}  // namespace gcnlab::cli
