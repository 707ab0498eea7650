#include "gcnlab/bounds.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "gcnlab/error.hpp"

namespace gcnlab {

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::main_1: return "main_1";
    case TheoremId::lower_dls: return "lower_dls";
    case TheoremId::pol_upper: return "pol_upper";
    case TheoremId::anchored: return "anchored";
    case TheoremId::deshpande: return "deshpande";
    case TheoremId::singvals: return "singvals";
    case TheoremId::main_modified: return "main_modified";
  }
  return "unknown";
}

TheoremId parse_theorem(std::string_view name) {
  std::string n(name);
  for (auto& ch : n)
    if (ch == '-') ch = '_';
  if (n == "main_1" || n == "main1") return TheoremId::main_1;
  if (n == "lower_dls") return TheoremId::lower_dls;
  if (n == "pol_upper") return TheoremId::pol_upper;
  if (n == "anchored") return TheoremId::anchored;
  if (n == "deshpande") return TheoremId::deshpande;
  if (n == "singvals") return TheoremId::singvals;
  if (n == "main_modified") return TheoremId::main_modified;
  throw Error(ErrorCode::invalid_argument,
              "unknown theorem id '" + std::string(name) + "'");
}

std::string to_string(BoundStatus status) {
  switch (status) {
    case BoundStatus::pass: return "pass";
    case BoundStatus::fail: return "fail";
    case BoundStatus::not_applicable: return "not_applicable";
  }
  return "unknown";
}

bool bound_holds(double lhs, double rhs, double scale) {
  return lhs <= rhs * (1.0 + 1e-9) + 1e-14 * scale;
}

LegerConstants leger_constants(double gamma, double c_mu) {
  if (!(gamma > 1.0))
    throw Error(ErrorCode::invalid_argument,
                "leger_constants: gamma must exceed 1");
  if (!(c_mu >= 1.0))
    throw Error(ErrorCode::invalid_argument,
                "leger_constants: regularity constant must be >= 1");
  LegerConstants out;
  out.c0 = 0.5 * std::pow(4.0 * std::pow(5.0, gamma / 2.0) * c_mu * c_mu,
                          1.0 / (gamma - 1.0));
  out.alpha0 = std::pow(4.0 * c_mu * c_mu, -1.0 / gamma);
  return out;
}

namespace {

class ReportBuilder {
 public:
  ReportBuilder(TheoremId id, int d, double scale) : scale_(scale) {
    report_.theorem = id;
    report_.d = d;
  }

  void check(std::string name, double lhs, double rhs, bool asserted = true) {
    InequalityCheck c{std::move(name), lhs, rhs, asserted,
                      bound_holds(lhs, rhs, scale_)};
    if (asserted && !principal_) {
      report_.lhs = lhs;
      report_.rhs = rhs;
      principal_ = true;
    }
    report_.checks.push_back(std::move(c));
  }

  void constant(const std::string& name, double value) {
    report_.constants[name] = value;
  }

  BoundReport& report() { return report_; }

  BoundReport finish() {
    report_.status = BoundStatus::pass;
    for (const auto& c : report_.checks)
      if (c.asserted && !c.holds) report_.status = BoundStatus::fail;
    return std::move(report_);
  }

  BoundReport not_applicable(std::string note) {
    report_.status = BoundStatus::not_applicable;
    report_.note = std::move(note);
    return std::move(report_);
  }

 private:
  BoundReport report_;
  double scale_;
  bool principal_ = false;
};

double gcn_integral(const DiscreteMeasure& mu, const VerifyParams& params,
                    GcnKind kind, int d, Anchor anchor,
                    std::optional<double> tau = {}) {
  IntegralSpec spec;
  spec.kind = kind;
  spec.d = d;
  spec.anchor = anchor;
  spec.tau = tau;
  spec.cap = params.cap;
  if (params.monte_carlo) {
    spec.monte_carlo = params.monte_carlo;
    return integral_mc(mu, spec).estimate;
  }
  return integral_exact(mu, spec);
}

std::optional<SeparationCertificate> obtain_certificate(
    const DiscreteMeasure& mu, int d, SeparationFlavor flavor,
    const VerifyParams& params, std::string& why) {
  if (params.certificate) {
    if (params.certificate->flavor != flavor || params.certificate->d != d) {
      why = "supplied certificate has flavor " +
            to_string(params.certificate->flavor) + ", need " +
            to_string(flavor) + " for d=" + std::to_string(d);
      return std::nullopt;
    }
    const auto check = verify_certificate(mu, *params.certificate);
    if (!check.valid) {
      why = "supplied certificate rejected: " + check.reason;
      return std::nullopt;
    }
    return params.certificate;
  }
  auto cert = certify_separation(mu, d, flavor, params.search);
  if (!cert) why = "no " + to_string(flavor) + " separation certificate found";
  return cert;
}

void record_certificate(ReportBuilder& b, const SeparationCertificate& cert) {
  b.constant("omega", cert.omega);
  b.constant("epsilon", cert.epsilon);
  if (cert.flavor == SeparationFlavor::simplex_wrt) b.constant("tau", cert.tau);
  b.report().certificate = cert;
}

}  // namespace

BoundReport verify_bound(TheoremId theorem, const DiscreteMeasure& mu, int d,
                         const VerifyParams& params) {
  const auto start = std::chrono::steady_clock::now();
  if (d < 0 || d > mu.ambient_dim())
    throw Error(ErrorCode::invalid_argument,
                "verify_bound: d must lie in [0, D]");
  const double dm = diameter(mu);
  ReportBuilder b(theorem, d, dm * dm);
  const double e2 = ls_flat(mu, d).e2;
  const double e2sq = e2 * e2;
  b.constant("e2_squared", e2sq);
  b.constant("diam_mu", dm);

  auto finish = [&](BoundReport r) {
    r.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    return r;
  };

  std::string why;
  switch (theorem) {
    case TheoremId::main_1: {
      auto cert = obtain_certificate(mu, d, SeparationFlavor::plain, params, why);
      if (!cert) return finish(b.not_applicable(why));
      record_certificate(b, *cert);
      const double integral =
          gcn_integral(mu, params, GcnKind::vol_mu, d, Anchor::none);
      const double k = 1.0 / (cert->omega * cert->omega *
                              std::pow(cert->epsilon, d + 1));
      b.constant("integral_c_vol_mu_sq", integral);
      b.constant("constant", k);
      b.check("e2^2 <= K * int c_vol_mu^2", e2sq, k * integral);
      break;
    }
    case TheoremId::lower_dls: {
      const double integral =
          gcn_integral(mu, params, GcnKind::dls, d, Anchor::none);
      b.constant("integral_c_dls_sq", integral);
      b.check("int c_dls^2 <= e2^2", integral, e2sq);
      break;
    }
    case TheoremId::pol_upper: {
      const double integral =
          gcn_integral(mu, params, GcnKind::pol, d, Anchor::none);
      b.constant("integral_c_pol_sq", integral);
      b.constant("constant", params.pol_constant);
      b.constant("ratio", e2sq > 0.0 ? integral / e2sq
                                     : std::numeric_limits<double>::infinity());
      b.check("int c_pol^2 <= C * e2^2", integral, params.pol_constant * e2sq);
      break;
    }
    case TheoremId::anchored: {
      auto cert =
          obtain_certificate(mu, d, SeparationFlavor::central, params, why);
      if (!cert) return finish(b.not_applicable(why));
      record_certificate(b, *cert);
      const double vol_int =
          gcn_integral(mu, params, GcnKind::vol_mu, d, Anchor::xcm_plus_d1);
      const double dls_int =
          gcn_integral(mu, params, GcnKind::dls, d, Anchor::xcm_plus_d1);
      const double k =
          1.0 / (cert->omega * cert->omega * std::pow(cert->epsilon, d));
      b.constant("integral_anchored_c_vol_mu_sq", vol_int);
      b.constant("integral_anchored_c_dls_sq", dls_int);
      b.constant("constant", k);
      b.check("e2^2 <= K * int_xcm c_vol_mu^2", e2sq, k * vol_int);
      b.check("int_xcm c_dls^2 <= e2^2", dls_int, e2sq);
      break;
    }
    case TheoremId::deshpande: {
      auto cert =
          obtain_certificate(mu, d, SeparationFlavor::central, params, why);
      if (!cert) return finish(b.not_applicable(why));
      record_certificate(b, *cert);
      const double dsh = c_dsh_integral(mu, d, params.cap);
      const double k =
          1.0 / (cert->omega * cert->omega * std::pow(cert->epsilon, d));
      b.constant("integral_c_dsh_sq", dsh);
      b.constant("constant", k);
      b.constant("kappa_correction", d + 1.0);
      b.check("e2^2 <= K * int c_dsh^2", e2sq, k * dsh);
      b.check("int c_dsh^2 <= (d+1) e2^2", dsh, (d + 1.0) * e2sq);
      b.check("int c_dsh^2 <= e2^2 (as printed)", dsh, e2sq, false);
      break;
    }
    case TheoremId::singvals: {
      auto cert =
          obtain_certificate(mu, d, SeparationFlavor::central, params, why);
      if (!cert) return finish(b.not_applicable(why));
      record_certificate(b, *cert);
      const auto summary = spectral_summary(mu);
      const auto st = sym_tail_ratio(summary.spectrum.values, d);
      const double factor = cert->omega * cert->omega *
                            std::pow(cert->epsilon, d);
      b.constant("ratio", st.ratio);
      b.constant("tail", st.tail);
      b.constant("omega2_eps_d", factor);
      b.check("omega^2 eps^d tail <= e_{d+1}/e_d", factor * st.tail, st.ratio);
      b.check("e_{d+1}/e_d <= tail", st.ratio, st.tail);
      b.check("omega^2 eps^d tail <= (d+1) e_{d+1}/e_d", factor * st.tail,
              (d + 1.0) * st.ratio, false);
      break;
    }
    case TheoremId::main_modified: {
      auto cert =
          obtain_certificate(mu, d, SeparationFlavor::simplex_wrt, params, why);
      if (!cert) return finish(b.not_applicable(why));
      record_certificate(b, *cert);
      const double w2 = cert->omega * cert->omega;
      const double eps = cert->epsilon;
      const double dd = d + 1.0;
      const double k = 4.0 / (w2 * std::pow(eps, d + 1)) *
                       (1.0 + 4.0 * dd * dd + 4.0 * dd / (w2 * eps));
      const double integral =
          gcn_integral(mu, params, GcnKind::vol_mu, d, Anchor::none, cert->tau);
      b.constant("integral_le_tau_c_vol_mu_sq", integral);
      b.constant("constant", k);
      b.check("e2^2 <= K * int_LE_tau c_vol_mu^2", e2sq, k * integral);
      break;
    }
  }
  return finish(b.finish());
}

}  // namespace gcnlab
