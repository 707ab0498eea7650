#include "gcnlab/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcnlab/error.hpp"
#include "gcnlab/simplex.hpp"

namespace gcnlab {

std::string to_string(SeparationFlavor flavor) {
  switch (flavor) {
    case SeparationFlavor::plain: return "plain";
    case SeparationFlavor::central: return "central";
    case SeparationFlavor::simplex_wrt: return "simplex_wrt";
    case SeparationFlavor::robust: return "robust";
  }
  return "unknown";
}

SeparationFlavor parse_flavor(std::string_view name) {
  if (name == "plain") return SeparationFlavor::plain;
  if (name == "central") return SeparationFlavor::central;
  if (name == "simplex_wrt" || name == "simplex-wrt" || name == "simplex")
    return SeparationFlavor::simplex_wrt;
  if (name == "robust") return SeparationFlavor::robust;
  throw Error(ErrorCode::invalid_argument,
              "unknown separation flavor '" + std::string(name) + "'");
}

int set_count(SeparationFlavor flavor, int d) {
  switch (flavor) {
    case SeparationFlavor::plain: return d + 1;
    case SeparationFlavor::central:
    case SeparationFlavor::robust: return d;
    case SeparationFlavor::simplex_wrt: return d + 2;
  }
  return d + 1;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Normalized volume score of one tuple of atoms for a given flavor.
class Scorer {
 public:
  Scorer(const DiscreteMeasure& mu, int d, SeparationFlavor flavor,
         std::uint64_t cap)
      : mu_(mu), d_(d), flavor_(flavor) {
    if (d < 0)
      throw Error(ErrorCode::invalid_argument, "separation: d must be >= 0");
    diam_ = diameter(mu);
    norm_ = std::pow(diam_, d);
    anchored_ = flavor == SeparationFlavor::central ||
                flavor == SeparationFlavor::robust;
    if (anchored_) x_cm_ = center_of_mass(mu);
    if (flavor == SeparationFlavor::robust) norm_ = volume_moment(mu, d, cap);
    const int vertices =
        set_count(flavor, d) + (anchored_ ? 1 : 0);
    buffer_.resize(mu.ambient_dim(), vertices);
  }

  double diam() const { return diam_; }

  double operator()(std::span<const Eigen::Index> idx) {
    ++evaluations_;
    if (!(norm_ > 0.0)) return 0.0;
    Eigen::Index col = 0;
    if (anchored_) buffer_.col(col++) = x_cm_;
    for (const auto j : idx) buffer_.col(col++) = mu_.atom(j);
    const Simplex x(buffer_);
    switch (flavor_) {
      case SeparationFlavor::plain:
      case SeparationFlavor::central:
        return volume(x) / norm_;
      case SeparationFlavor::robust: {
        const double m = volume(x);
        return m * m / norm_;
      }
      case SeparationFlavor::simplex_wrt: {
        double worst = kInf;
        for (Eigen::Index i = 0; i < x.num_vertices(); ++i)
          worst = std::min(worst, volume(remove_vertex(x, i)) / norm_);
        return worst;
      }
    }
    return 0.0;
  }

  std::uint64_t evaluations() const { return evaluations_; }

 private:
  const DiscreteMeasure& mu_;
  int d_;
  SeparationFlavor flavor_;
  bool anchored_ = false;
  Vector x_cm_;
  double diam_ = 0.0;
  double norm_ = 1.0;
  Matrix buffer_;
  std::uint64_t evaluations_ = 0;
};

/// Minimum score over the product of the sets (+inf for an empty product
/// of zero sets is reported as the score of the empty tuple).
double product_min(Scorer& score, const std::vector<AtomSet>& sets) {
  std::vector<Eigen::Index> idx(sets.size());
  std::vector<std::size_t> pos(sets.size(), 0);
  for (const auto& s : sets)
    if (s.empty()) return 0.0;
  double worst = kInf;
  while (true) {
    for (std::size_t k = 0; k < sets.size(); ++k) idx[k] = sets[k][pos[k]];
    worst = std::min(worst, score(idx));
    if (worst == 0.0) return 0.0;
    std::size_t k = sets.size();
    while (k > 0) {
      --k;
      if (++pos[k] < sets[k].size()) break;
      pos[k] = 0;
      if (k == 0) return worst;
    }
    if (sets.empty()) return worst;
  }
}

double set_mass(const DiscreteMeasure& mu, const AtomSet& s) {
  double m = 0.0;
  for (const auto j : s) m += mu.weight(j);
  return m;
}

double min_mass(const DiscreteMeasure& mu, const std::vector<AtomSet>& sets) {
  double m = sets.empty() ? 1.0 : kInf;
  for (const auto& s : sets) m = std::min(m, set_mass(mu, s));
  return m;
}

/// min over i of dist_mu(V_i, U_i^c) / diam, capped at 1.
double separation_tau(const DiscreteMeasure& mu,
                      const std::vector<AtomSet>& inner,
                      const std::vector<AtomSet>& outer, double diam) {
  double tau = kInf;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    std::vector<bool> in_outer(static_cast<std::size_t>(mu.size()), false);
    for (const auto j : outer[i]) in_outer[static_cast<std::size_t>(j)] = true;
    for (const auto a : inner[i])
      for (Eigen::Index b = 0; b < mu.size(); ++b)
        if (!in_outer[static_cast<std::size_t>(b)])
          tau = std::min(tau, (mu.atom(a) - mu.atom(b)).norm() / diam);
  }
  return std::min(tau, 1.0);
}

void check_sets(const DiscreteMeasure& mu, const std::vector<AtomSet>& sets,
                std::size_t expected) {
  if (sets.size() != expected)
    throw Error(ErrorCode::invalid_argument,
                "certificate: expected " + std::to_string(expected) +
                    " sets, got " + std::to_string(sets.size()));
  for (const auto& s : sets)
    for (const auto j : s)
      if (j < 0 || j >= mu.size())
        throw Error(ErrorCode::index_out_of_range,
                    "certificate: atom index out of range");
}

bool is_subset(const AtomSet& inner, const AtomSet& outer) {
  return std::all_of(inner.begin(), inner.end(), [&](Eigen::Index j) {
    return std::find(outer.begin(), outer.end(), j) != outer.end();
  });
}

double objective(double omega, double epsilon, std::size_t k) {
  return omega * omega * std::pow(epsilon, static_cast<double>(k));
}

}  // namespace

SeparationCertificate make_certificate(const DiscreteMeasure& mu, int d,
                                       SeparationFlavor flavor,
                                       std::vector<AtomSet> sets,
                                       std::vector<AtomSet> outer) {
  const auto k = static_cast<std::size_t>(set_count(flavor, d));
  check_sets(mu, sets, k);
  SeparationCertificate cert;
  cert.flavor = flavor;
  cert.d = d;
  Scorer score(mu, d, flavor, kDefaultEnumerationCap);
  if (flavor == SeparationFlavor::simplex_wrt) {
    if (outer.empty()) outer = sets;
    check_sets(mu, outer, k);
    for (std::size_t i = 0; i < k; ++i)
      if (!is_subset(sets[i], outer[i]))
        throw Error(ErrorCode::invalid_argument,
                    "certificate: V_i must be contained in U_i");
    cert.omega = product_min(score, outer);
    cert.tau = separation_tau(mu, sets, outer, score.diam());
    cert.outer = std::move(outer);
  } else {
    cert.omega = product_min(score, sets);
  }
  cert.epsilon = min_mass(mu, sets);
  cert.sets = std::move(sets);
  return cert;
}

CertificateCheck verify_certificate(const DiscreteMeasure& mu,
                                    const SeparationCertificate& cert) {
  CertificateCheck check;
  try {
    const auto fresh = make_certificate(mu, cert.d, cert.flavor, cert.sets,
                                        cert.outer);
    check.omega = fresh.omega;
    check.epsilon = fresh.epsilon;
    check.tau = fresh.tau;
  } catch (const Error& e) {
    check.reason = e.what();
    return check;
  }
  constexpr double slack = 1.0 + 1e-12;
  if (!(check.omega > 0.0)) {
    check.reason = "product of the sets contains a degenerate simplex";
  } else if (cert.omega > check.omega * slack) {
    check.reason = "claimed omega exceeds the verified volume floor";
  } else if (cert.epsilon > check.epsilon * slack) {
    check.reason = "claimed epsilon exceeds the smallest set mass";
  } else if (cert.flavor == SeparationFlavor::simplex_wrt &&
             cert.tau > check.tau * slack) {
    check.reason = "claimed tau exceeds the verified set separation";
  } else if (!(cert.omega > 0.0) || !(cert.epsilon > 0.0)) {
    check.reason = "certificate constants must be positive";
  } else {
    check.valid = true;
  }
  return check;
}

std::optional<SeparationCertificate> certify_separation(
    const DiscreteMeasure& mu, int d, SeparationFlavor flavor,
    const SearchOptions& options) {
  const auto k = static_cast<std::size_t>(set_count(flavor, d));
  Scorer score(mu, d, flavor, options.budget);
  if (!(score.diam() > 0.0) && d > 0) return std::nullopt;

  // Stage 1: every ordered tuple of single atoms.
  const auto n = static_cast<std::uint64_t>(mu.size());
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > options.budget / n)
      throw Error(ErrorCode::cap_exceeded,
                  "certify_separation: singleton search exceeds the budget");
    total *= n;
  }
  std::vector<Eigen::Index> idx(k), best_idx;
  double best = 0.0;
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t r = t;
    for (std::size_t s = k; s-- > 0;) {
      idx[s] = static_cast<Eigen::Index>(r % n);
      r /= n;
    }
    const double v = score(idx);
    if (v > best) {
      best = v;
      best_idx = idx;
    }
  }
  if (k > 0 && !(best > 1e-12)) return std::nullopt;

  std::vector<AtomSet> sets(k);
  for (std::size_t i = 0; i < k; ++i) sets[i] = {best_idx[i]};
  double omega = k > 0 ? best : score(idx);
  double epsilon = min_mass(mu, sets);

  // Stage 2: greedy growth (not for the nested-set flavor).
  const bool grow = options.grow && flavor != SeparationFlavor::simplex_wrt;
  const double floor = options.growth_fraction * omega;
  while (grow && score.evaluations() < options.budget) {
    double best_obj = objective(omega, epsilon, k);
    std::optional<std::pair<std::size_t, Eigen::Index>> pick;
    double pick_omega = 0.0, pick_eps = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (Eigen::Index a = 0; a < mu.size(); ++a) {
        if (std::find(sets[i].begin(), sets[i].end(), a) != sets[i].end())
          continue;
        auto trial = sets;
        trial[i] = {a};
        const double w = std::min(omega, product_min(score, trial));
        if (w < floor || w <= 0.0) continue;
        trial[i] = sets[i];
        trial[i].push_back(a);
        const double e = min_mass(mu, trial);
        const double obj = objective(w, e, k);
        if (obj > best_obj * (1.0 + 1e-12)) {
          best_obj = obj;
          pick = {i, a};
          pick_omega = w;
          pick_eps = e;
        }
      }
    }
    if (!pick) break;
    sets[pick->first].push_back(pick->second);
    omega = pick_omega;
    epsilon = pick_eps;
  }

  for (auto& s : sets) std::sort(s.begin(), s.end());
  auto cert = make_certificate(mu, d, flavor, std::move(sets));
  if (!verify_certificate(mu, cert).valid) return std::nullopt;
  return cert;
}

EitherOr lemma_either_or(const DiscreteMeasure& mu, int d, std::uint64_t cap) {
  if (d < 1)
    throw Error(ErrorCode::invalid_argument, "lemma_either_or: d must be >= 1");
  EitherOr out;
  const double dm = diameter(mu);
  if (dm == 0.0) return out;

  const auto n = static_cast<std::uint64_t>(mu.size());
  std::uint64_t total = 1;
  for (int i = 0; i <= d; ++i) {
    if (total > cap / n)
      throw Error(ErrorCode::cap_exceeded,
                  "lemma_either_or: enumeration exceeds the cap");
    total *= n;
  }
  const double threshold = 1e-12 * std::pow(dm, d);
  Matrix buffer(mu.ambient_dim(), d + 1);
  if (d <= mu.ambient_dim()) {
    for (std::uint64_t t = 0; t < total && !out.has_positive_simplex; ++t) {
      std::uint64_t r = t;
      for (Eigen::Index s = d + 1; s-- > 0;) {
        buffer.col(s) = mu.atom(static_cast<Eigen::Index>(r % n));
        r /= n;
      }
      out.has_positive_simplex = volume(Simplex(buffer)) > threshold;
    }
  }
  if (d - 1 <= mu.ambient_dim())
    out.e2_prev_positive = ls_flat(mu, d - 1).e2 > 1e-12 * dm;
  return out;
}

}  // namespace gcnlab
