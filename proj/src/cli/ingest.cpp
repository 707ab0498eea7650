#include "gcnlab/cli/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gcnlab/error.hpp"

namespace gcnlab::cli {

namespace {

std::string trim(std::string_view s) {
  auto b = s.begin();
  auto e = s.end();
  while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
  return std::string(b, e);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::optional<double> parse_number(const std::string& field) {
  if (field.empty()) return std::nullopt;
  const char* first = field.data();
  if (*first == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    // from_chars rejects "nan"/"inf" spellings only in some forms; treat
    // any textual non-finite value as numeric so it is reported as such.
    std::string lower = field;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "nan" || lower == "inf" || lower == "-inf" || lower == "infinity")
      return std::nan("");
    return std::nullopt;
  }
  return value;
}

Error parse_error(std::size_t line, const std::string& what) {
  return Error(ErrorCode::parse_error,
               "line " + std::to_string(line) + ": " + what);
}

}  // namespace

PointCloud parse_csv(std::istream& in, bool weighted) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto fields = split_fields(content);
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (const auto& f : fields) {
      const auto v = parse_number(f);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (rows.empty() && !header_seen) {
        header_seen = true;
        std::string last = fields.back();
        std::transform(last.begin(), last.end(), last.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (last == "weight" || last == "weights" || last == "w") weighted = true;
        width = fields.size();
        continue;
      }
      throw parse_error(line_no, "non-numeric field");
    }
    for (const double v : row)
      if (!std::isfinite(v)) throw parse_error(line_no, "non-finite value");
    if (width == 0) width = row.size();
    if (row.size() != width)
      throw parse_error(line_no, "expected " + std::to_string(width) +
                                     " fields, found " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::parse_error, "no data rows");
  const auto dim = static_cast<Eigen::Index>(width) - (weighted ? 1 : 0);
  if (dim < 1) throw Error(ErrorCode::parse_error, "rows carry no coordinates");

  PointCloud cloud;
  const auto n = static_cast<Eigen::Index>(rows.size());
  cloud.points.resize(dim, n);
  if (weighted) cloud.weights = Vector(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& row = rows[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < dim; ++i)
      cloud.points(i, j) = row[static_cast<std::size_t>(i)];
    if (weighted) (*cloud.weights)(j) = row.back();
  }
  return cloud;
}

PointCloud parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
    throw Error(ErrorCode::parse_error, "JSON input needs a \"points\" array");
  const auto& pts = doc["points"];
  if (pts.empty()) throw Error(ErrorCode::parse_error, "\"points\" is empty");
  const std::size_t dim = pts[0].is_array() ? pts[0].size() : 0;
  if (dim == 0) throw Error(ErrorCode::parse_error, "points must be non-empty arrays");
  PointCloud cloud;
  cloud.points.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (!pts[j].is_array() || pts[j].size() != dim)
      throw Error(ErrorCode::parse_error,
                  "point " + std::to_string(j) + " has the wrong length");
    for (std::size_t i = 0; i < dim; ++i) {
      if (!pts[j][i].is_number())
        throw Error(ErrorCode::parse_error,
                    "point " + std::to_string(j) + " has a non-numeric coordinate");
      const double v = pts[j][i].get<double>();
      if (!std::isfinite(v))
        throw Error(ErrorCode::parse_error,
                    "point " + std::to_string(j) + " has a non-finite coordinate");
      cloud.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  if (doc.contains("weights") && !doc["weights"].is_null()) {
    const auto& w = doc["weights"];
    if (!w.is_array() || w.size() != pts.size())
      throw Error(ErrorCode::parse_error, "\"weights\" must match \"points\" in length");
    Vector weights(static_cast<Eigen::Index>(w.size()));
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (!w[j].is_number())
        throw Error(ErrorCode::parse_error, "weight " + std::to_string(j) + " is not a number");
      weights(static_cast<Eigen::Index>(j)) = w[j].get<double>();
    }
    cloud.weights = std::move(weights);
  }
  return cloud;
}

PointCloud read_point_cloud(const std::string& path, bool weighted) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (json) {
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str());
  }
  return parse_csv(in, weighted);
}

DiscreteMeasure to_measure(const PointCloud& cloud, std::vector<std::string>* warnings) {
  if (!cloud.weights) return DiscreteMeasure::uniform(cloud.points);
  Vector w = *cloud.weights;
  for (Eigen::Index j = 0; j < w.size(); ++j)
    if (!std::isfinite(w(j)) || !(w(j) > 0.0))
      throw Error(ErrorCode::parse_error,
                  "weight of point " + std::to_string(j) + " is not positive");
  const double total = w.sum();
  if (std::abs(total - 1.0) > 1e-6 && warnings)
    warnings->push_back("weights summed to " + std::to_string(total) +
                        "; renormalized to 1");
  w /= total;
  return DiscreteMeasure(cloud.points, w);
}

}  // namespace gcnlab::cli
