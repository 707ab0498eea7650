#include "gcnlab/gcn.hpp"

#include <cmath>

#include "gcnlab/error.hpp"

namespace gcnlab {

std::string to_string(GcnKind kind) {
  switch (kind) {
    case GcnKind::vol: return "vol";
    case GcnKind::vol_mu: return "vol_mu";
    case GcnKind::pol: return "pol";
    case GcnKind::dls: return "dls";
    case GcnKind::ht: return "ht";
    case GcnKind::curvature_vol: return "curvature_vol";
    case GcnKind::dsh: return "dsh";
    case GcnKind::vol_dsh: return "vol_dsh";
  }
  return "unknown";
}

GcnKind parse_gcn_kind(std::string_view name) {
  if (name == "vol") return GcnKind::vol;
  if (name == "vol_mu" || name == "vol-mu") return GcnKind::vol_mu;
  if (name == "pol") return GcnKind::pol;
  if (name == "dls") return GcnKind::dls;
  if (name == "ht") return GcnKind::ht;
  if (name == "curvature_vol" || name == "curvature-vol" || name == "curv")
    return GcnKind::curvature_vol;
  if (name == "dsh") return GcnKind::dsh;
  if (name == "vol_dsh" || name == "vol-dsh") return GcnKind::vol_dsh;
  throw Error(ErrorCode::invalid_argument,
              "unknown GCN kind '" + std::string(name) + "'");
}

namespace {

void require_gcn_simplex(const Simplex& x, const char* where) {
  if (x.num_vertices() < 2)
    throw Error(ErrorCode::invalid_argument,
                std::string(where) + ": needs d+2 >= 2 vertices");
}

}  // namespace

double c_vol(const Simplex& x) {
  require_gcn_simplex(x, "c_vol");
  const double dm = diam(x);
  if (dm == 0.0) return 0.0;
  return volume(x) / std::pow(dm, gcn_dim(x));
}

double c_vol_mu(const Simplex& x, double diam_mu) {
  require_gcn_simplex(x, "c_vol_mu");
  if (!(diam_mu > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "c_vol_mu: measure diameter must be positive");
  return volume(x) / std::pow(diam_mu, gcn_dim(x));
}

double c_pol(const Simplex& x) {
  require_gcn_simplex(x, "c_pol");
  if (min_edge(x) == 0.0) return 0.0;
  const double m = volume(x);
  if (m == 0.0) return 0.0;
  const Matrix& v = x.vertices();
  const auto k = v.cols();
  // Polar sines share the numerator; only the edge products differ.
  Matrix len(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j)
      len(i, j) = len(j, i) = (v.col(i) - v.col(j)).norm();
  double sum_sq = 0.0;
  double dm = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    double prod = 1.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (j == i) continue;
      prod *= len(i, j);
      dm = std::max(dm, len(i, j));
    }
    const double s = m / prod;
    sum_sq += s * s;
  }
  return dm * std::sqrt(sum_sq / static_cast<double>(k));
}

double c_dls(const Simplex& x, const std::optional<Vector>& anchor) {
  require_gcn_simplex(x, "c_dls");
  const int d = gcn_dim(x);
  const Matrix& v = x.vertices();
  if (anchor && anchor->size() != v.rows())
    throw Error(ErrorCode::dimension_mismatch,
                "c_dls: anchor has wrong dimension");
  const Vector center = anchor ? *anchor : Vector(v.rowwise().mean());
  const double scale = 1.0 / std::sqrt(static_cast<double>(v.cols()));
  Matrix data = ((v.colwise() - center) * scale).transpose();
  const Spectrum spec = jacobi_svd(std::move(data));
  double tail = 0.0;
  for (Eigen::Index i = d; i < spec.values.size(); ++i)
    tail += spec.values(i) * spec.values(i);
  return std::sqrt(tail);
}

double c_ht(const Simplex& x) {
  require_gcn_simplex(x, "c_ht");
  double best = height(x, 0);
  for (Eigen::Index i = 1; i < x.num_vertices() && best > 0.0; ++i)
    best = std::min(best, height(x, i));
  return best;
}

double curvature_vol(const Simplex& x) {
  require_gcn_simplex(x, "curvature_vol");
  const double dm = diam(x);
  if (dm == 0.0) return 0.0;
  const int e = (gcn_dim(x) + 1) * (gcn_dim(x) + 1);
  return volume(x) / std::pow(dm, e);
}

double evaluate_gcn(GcnKind kind, const Simplex& x, double diam_mu,
                    const std::optional<Vector>& dls_anchor) {
  switch (kind) {
    case GcnKind::vol: return c_vol(x);
    case GcnKind::vol_mu: return c_vol_mu(x, diam_mu);
    case GcnKind::pol: return c_pol(x);
    case GcnKind::dls: return c_dls(x, dls_anchor);
    case GcnKind::ht: return c_ht(x);
    case GcnKind::curvature_vol: return curvature_vol(x);
    case GcnKind::dsh:
    case GcnKind::vol_dsh: break;
  }
  throw Error(ErrorCode::invalid_argument,
              "evaluate_gcn: '" + to_string(kind) +
                  "' depends on the measure; use the integral estimators");
}

}  // namespace gcnlab
