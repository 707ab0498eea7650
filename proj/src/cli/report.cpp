#include "gcnlab/cli/report.hpp"

namespace gcnlab::cli {

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(to_json(Vector(m.col(j))));
  return out;
}

Json to_json(const SeparationCertificate& cert) {
  Json out;
  out["flavor"] = to_string(cert.flavor);
  out["d"] = cert.d;
  out["sets"] = cert.sets;
  out["omega"] = cert.omega;
  out["epsilon"] = cert.epsilon;
  if (cert.flavor == SeparationFlavor::simplex_wrt) {
    out["outer"] = cert.outer;
    out["tau"] = cert.tau;
  }
  return out;
}

Json to_json(const BoundReport& report) {
  Json out;
  out["theorem"] = to_string(report.theorem);
  out["d"] = report.d;
  out["lhs"] = report.lhs;
  out["rhs"] = report.rhs;
  out["status"] = to_string(report.status);
  out["constants"] = report.constants;
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"asserted", c.asserted},
                      {"holds", c.holds}});
  out["checks"] = checks;
  out["certificate"] = report.certificate ? to_json(*report.certificate) : Json(nullptr);
  out["note"] = report.note;
  return out;
}

Json to_json(const ConcentrationSummary& s) {
  return Json{{"trials", s.trials},
              {"sample_size", s.sample_size},
              {"omega", s.omega},
              {"epsilon", s.epsilon},
              {"delta", s.delta},
              {"delta_sep", s.delta_sep},
              {"diam_mu", s.diam_mu},
              {"integral_c_dls_sq", s.integral_c_dls_sq},
              {"e2_squared", s.e2_squared},
              {"kappa", s.kappa},
              {"floor_delta", s.floor_delta},
              {"floor_sep", s.floor_sep},
              {"left_frequency", s.left_frequency()},
              {"sandwich_delta_frequency", s.sandwich_delta_frequency()},
              {"sandwich_sep_frequency", s.sandwich_sep_frequency()},
              {"mean_empirical_e2_sq", s.mean_empirical_e2_sq},
              {"mean_empirical_c_dls_sq", s.mean_empirical_c_dls_sq}};
}

Json make_report(const std::string& command, Json inputs, Json outputs,
                 double runtime_ms, std::optional<std::uint64_t> seed) {
  Json report;
  report["command"] = command;
  report["inputs"] = std::move(inputs);
  report["outputs"] = std::move(outputs);
  report["runtime_ms"] = runtime_ms;
  report["library_version"] = kLibraryVersion;
  report["seed"] = seed ? Json(*seed) : Json(nullptr);
  return report;
}

std::string serialize(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace gcnlab::cli
