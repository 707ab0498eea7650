#include "gcnlab/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcnlab/error.hpp"
#include "gcnlab/parallel.hpp"
#include "gcnlab/rng.hpp"

namespace gcnlab {

std::string to_string(Anchor anchor) {
  switch (anchor) {
    case Anchor::none: return "none";
    case Anchor::xcm_plus_d1: return "xcm_plus_d1";
    case Anchor::xcm_plus_d: return "xcm_plus_d";
  }
  return "unknown";
}

Anchor parse_anchor(std::string_view raw) {
  std::string name(raw);
  for (auto& ch : name)
    if (ch == '-') ch = '_';
  if (name == "none") return Anchor::none;
  if (name == "xcm_plus_d1" || name == "xcm_d1" || name == "xcm+d1")
    return Anchor::xcm_plus_d1;
  if (name == "xcm_plus_d" || name == "xcm_d" || name == "xcm+d")
    return Anchor::xcm_plus_d;
  throw Error(ErrorCode::invalid_argument,
              "unknown anchor '" + std::string(raw) + "'");
}

namespace {

constexpr std::uint64_t kChunk = 4096;

std::uint64_t checked_power(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && total > cap / base) return cap + 1;
    total *= base;
  }
  return total;
}

std::uint64_t enumeration_size(const DiscreteMeasure& mu, int arity,
                               std::uint64_t cap, const char* where) {
  const auto total =
      checked_power(static_cast<std::uint64_t>(mu.size()), arity, cap);
  if (total > cap)
    throw Error(ErrorCode::cap_exceeded,
                std::string(where) + ": " + std::to_string(mu.size()) + "^" +
                    std::to_string(arity) +
                    " tuples exceed the enumeration cap of " +
                    std::to_string(cap) + "; use Monte-Carlo mode");
  return total;
}

/// Flat through x_cm spanned by the tuple's edges from x_cm.
double mean_dist2_to_span(const DiscreteMeasure& mu, const Matrix& vertices) {
  const Vector base = vertices.col(0);
  Matrix edges = vertices.rightCols(vertices.cols() - 1).colwise() - base;
  double largest = 0.0;
  for (Eigen::Index j = 0; j < edges.cols(); ++j)
    largest = std::max(largest, edges.col(j).norm());
  const AffineFlat flat(base, orthonormal_basis(edges, 1e-10 * largest));
  return mean_squared_distance(mu, flat);
}

/// Evaluates c(X) for a tuple of atom indices under one IntegralSpec.
class Integrand {
 public:
  Integrand(const DiscreteMeasure& mu, const IntegralSpec& spec)
      : mu_(mu), spec_(spec), arity_(integral_arity(spec)) {
    diam_mu_ = diameter(mu);
    anchored_ = spec.anchor != Anchor::none;
    if (anchored_) x_cm_ = center_of_mass(mu);
    if (spec.kind == GcnKind::vol_mu && !(diam_mu_ > 0.0))
      throw Error(ErrorCode::degenerate_measure,
                  "integral: vol_mu needs a measure with positive diameter");
    if (spec.kind == GcnKind::dsh || spec.kind == GcnKind::vol_dsh) {
      dsh_norm_ = volume_moment(mu, spec.d, spec.cap);
      if (!(dsh_norm_ > 0.0))
        throw Error(ErrorCode::degenerate_measure,
                    "integral: dsh kinds need a positive volume moment");
    }
    if (spec.tau) tau_edge_ = *spec.tau * diam_mu_;
  }

  int arity() const { return arity_; }
  int vertex_count() const { return arity_ + (anchored_ ? 1 : 0); }

  /// `buffer` must be D x vertex_count().
  double value(std::span<const Eigen::Index> idx, Matrix& buffer) const {
    Eigen::Index col = 0;
    if (anchored_) buffer.col(col++) = x_cm_;
    for (const auto j : idx) buffer.col(col++) = mu_.atom(j);
    if (spec_.tau && buffer.cols() >= 2) {
      for (Eigen::Index i = 0; i < buffer.cols(); ++i)
        for (Eigen::Index k = i + 1; k < buffer.cols(); ++k)
          if ((buffer.col(i) - buffer.col(k)).norm() < tau_edge_) return 0.0;
    }
    const Simplex x(buffer);
    double c = 0.0;
    switch (spec_.kind) {
      case GcnKind::dsh: {
        const double m = volume(x);
        if (m == 0.0) return 0.0;
        c = m * std::sqrt(mean_dist2_to_span(mu_, buffer) / dsh_norm_);
        break;
      }
      case GcnKind::vol_dsh:
        c = volume(x) / std::sqrt(dsh_norm_);
        break;
      case GcnKind::dls:
        c = anchored_ ? c_dls(x, x_cm_) : c_dls(x);
        break;
      default:
        c = evaluate_gcn(spec_.kind, x, diam_mu_);
    }
    return c;
  }

  double power(double c) const {
    if (spec_.exponent == 2.0) return c * c;
    return std::pow(c, spec_.exponent);
  }

 private:
  const DiscreteMeasure& mu_;
  const IntegralSpec& spec_;
  int arity_;
  bool anchored_ = false;
  Vector x_cm_;
  double diam_mu_ = 0.0;
  double dsh_norm_ = 1.0;
  double tau_edge_ = 0.0;
};

void decode(std::uint64_t t, std::uint64_t n, std::span<Eigen::Index> idx) {
  for (std::size_t s = idx.size(); s-- > 0;) {
    idx[s] = static_cast<Eigen::Index>(t % n);
    t /= n;
  }
}

struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
};

Moments merge(const Moments& a, const Moments& b) {
  if (a.count == 0.0) return b;
  if (b.count == 0.0) return a;
  Moments out;
  out.count = a.count + b.count;
  const double delta = b.mean - a.mean;
  out.mean = a.mean + delta * b.count / out.count;
  out.m2 = a.m2 + b.m2 + delta * delta * a.count * b.count / out.count;
  return out;
}

Moments merge_range(const std::vector<Moments>& parts, std::size_t lo,
                    std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return merge(merge_range(parts, lo, mid), merge_range(parts, mid, hi));
}

}  // namespace

int integral_arity(const IntegralSpec& spec) {
  switch (spec.anchor) {
    case Anchor::none: return spec.d + 2;
    case Anchor::xcm_plus_d1: return spec.d + 1;
    case Anchor::xcm_plus_d: return spec.d;
  }
  return spec.d + 2;
}

void validate(const IntegralSpec& spec) {
  if (spec.d < 0)
    throw Error(ErrorCode::invalid_argument, "integral: d must be >= 0");
  if (!(spec.exponent > 0.0) || !std::isfinite(spec.exponent))
    throw Error(ErrorCode::invalid_argument,
                "integral: exponent must be positive");
  if (spec.tau && !(*spec.tau >= 0.0))
    throw Error(ErrorCode::invalid_argument, "integral: tau must be >= 0");
  const bool dsh = spec.kind == GcnKind::dsh;
  if (dsh != (spec.anchor == Anchor::xcm_plus_d))
    throw Error(ErrorCode::invalid_argument,
                "integral: the xcm_plus_d anchor goes with the dsh kind only");
  if (spec.kind == GcnKind::vol_dsh && spec.anchor != Anchor::xcm_plus_d1)
    throw Error(ErrorCode::invalid_argument,
                "integral: vol_dsh needs the xcm_plus_d1 anchor");
  if (spec.monte_carlo && spec.monte_carlo->samples == 0)
    throw Error(ErrorCode::invalid_argument,
                "integral: Monte-Carlo mode needs at least one sample");
}

double integral_exact(const DiscreteMeasure& mu, const IntegralSpec& spec) {
  validate(spec);
  const Integrand f(mu, spec);
  const int arity = f.arity();
  const auto total = enumeration_size(mu, arity, spec.cap, "integral_exact");
  const auto n = static_cast<std::uint64_t>(mu.size());
  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);

  const auto sums = map_chunks<double>(chunks, [&](std::size_t c) {
    Matrix buffer(mu.ambient_dim(), f.vertex_count());
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(arity));
    KahanSum acc;
    const std::uint64_t lo = c * kChunk;
    const std::uint64_t hi = std::min(total, lo + kChunk);
    for (std::uint64_t t = lo; t < hi; ++t) {
      decode(t, n, idx);
      double w = 1.0;
      for (const auto j : idx) w *= mu.weight(j);
      const double v = f.value(idx, buffer);
      if (v != 0.0) acc.add(w * f.power(v));
    }
    return acc.value();
  });
  return pairwise_sum(sums);
}

McEstimate integral_mc(const DiscreteMeasure& mu, const IntegralSpec& spec) {
  validate(spec);
  if (!spec.monte_carlo)
    throw Error(ErrorCode::invalid_argument,
                "integral_mc: spec is not in Monte-Carlo mode");
  const Integrand f(mu, spec);
  const int arity = f.arity();
  const auto total = spec.monte_carlo->samples;
  const CounterRng rng(spec.monte_carlo->seed);
  const WeightedIndexSampler sampler(mu.weights());
  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);

  const auto parts = map_chunks<Moments>(chunks, [&](std::size_t c) {
    Matrix buffer(mu.ambient_dim(), f.vertex_count());
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(arity));
    Moments m;
    const std::uint64_t lo = c * kChunk;
    const std::uint64_t hi = std::min(total, lo + kChunk);
    for (std::uint64_t t = lo; t < hi; ++t) {
      for (std::size_t s = 0; s < idx.size(); ++s) idx[s] = sampler(rng.uniform(t, s));
      const double v = f.power(f.value(idx, buffer));
      m.count += 1.0;
      const double delta = v - m.mean;
      m.mean += delta / m.count;
      m.m2 += delta * (v - m.mean);
    }
    return m;
  });
  const Moments all = merge_range(parts, 0, parts.size());
  McEstimate out;
  out.samples = total;
  out.estimate = all.mean;
  out.std_error =
      all.count > 1.0 ? std::sqrt(all.m2 / (all.count - 1.0) / all.count) : 0.0;
  return out;
}

double volume_moment(const DiscreteMeasure& mu, int m, std::uint64_t cap) {
  if (m < 0)
    throw Error(ErrorCode::invalid_argument, "volume_moment: m must be >= 0");
  if (m == 0) return 1.0;
  if (m > mu.ambient_dim()) return 0.0;
  const auto total = enumeration_size(mu, m, cap, "volume_moment");
  const auto n = static_cast<std::uint64_t>(mu.size());
  const Vector x_cm = center_of_mass(mu);
  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  const auto sums = map_chunks<double>(chunks, [&](std::size_t c) {
    Matrix buffer(mu.ambient_dim(), m + 1);
    buffer.col(0) = x_cm;
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(m));
    KahanSum acc;
    const std::uint64_t lo = c * kChunk;
    const std::uint64_t hi = std::min(total, lo + kChunk);
    for (std::uint64_t t = lo; t < hi; ++t) {
      decode(t, n, idx);
      double w = 1.0;
      for (std::size_t s = 0; s < idx.size(); ++s) {
        w *= mu.weight(idx[s]);
        buffer.col(static_cast<Eigen::Index>(s) + 1) = mu.atom(idx[s]);
      }
      const double v = volume(Simplex(buffer));
      acc.add(w * v * v);
    }
    return acc.value();
  });
  return pairwise_sum(sums);
}

MomentIdentity moment_identity_check(const DiscreteMeasure& mu, int m,
                                     std::uint64_t cap) {
  MomentIdentity out;
  out.lhs = volume_moment(mu, m, cap);
  const auto summary = spectral_summary(mu);
  const Vector sq = summary.spectrum.values.array().square();
  out.rhs_paper = elementary_symmetric(sq, m);
  out.rhs_corrected = std::tgamma(m + 1.0) * out.rhs_paper;
  if (out.rhs_paper > 0.0) out.kappa = out.lhs / out.rhs_paper;
  return out;
}

double c_dsh_integral(const DiscreteMeasure& mu, int d, std::uint64_t cap) {
  if (d < 0)
    throw Error(ErrorCode::invalid_argument, "c_dsh_integral: d must be >= 0");
  const double den = volume_moment(mu, d, cap);
  const double scale = std::pow(diameter(mu), 2 * d);
  if (!(den > 1e-20 * scale) || den == 0.0)
    throw Error(ErrorCode::degenerate_measure,
                "c_dsh_integral: the support lies in a (d-1)-flat");
  return volume_moment(mu, d + 1, cap) / den;
}

SymTailRatio sym_tail_ratio(const Vector& sigma, int d) {
  if (d < 0)
    throw Error(ErrorCode::invalid_argument, "sym_tail_ratio: d must be >= 0");
  std::vector<double> sq(static_cast<std::size_t>(sigma.size()));
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    sq[static_cast<std::size_t>(i)] = sigma(i) * sigma(i);
  std::sort(sq.begin(), sq.end(), std::greater<>());
  const double ed = elementary_symmetric(sq, d);
  if (ed == 0.0)
    throw Error(ErrorCode::degenerate_measure,
                "sym_tail_ratio: e_d(sigma^2) vanishes");
  SymTailRatio out;
  out.ratio = elementary_symmetric(sq, d + 1) / ed;
  for (std::size_t j = static_cast<std::size_t>(d); j < sq.size(); ++j)
    out.tail += sq[j];
  return out;
}

}  // namespace gcnlab
