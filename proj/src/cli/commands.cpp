#include "gcnlab/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>

#include <CLI11.hpp>

#include "gcnlab/cli/ingest.hpp"
#include "gcnlab/error.hpp"
#include "gcnlab/integrals.hpp"
#include "gcnlab/scc.hpp"
#include "gcnlab/volume_sampling.hpp"

namespace gcnlab::cli {

namespace {

const std::vector<std::string> kCommands = {
    "ls-error", "gcn-eval", "integral", "moments",  "certify",
    "verify",   "concentration", "scc", "volsample"};

const std::map<std::string, std::string> kDescriptions = {
    {"ls-error", "least-squares d-flat and its error"},
    {"gcn-eval", "GCN values of each (d+1)-subset of the input points"},
    {"integral", "integral of the squared GCN over the measure"},
    {"moments", "volume moments and the spectral identity"},
    {"certify", "search for a d-separation certificate"},
    {"verify", "check one of the bounds on the measure"},
    {"concentration", "empirical-measure concentration experiment"},
    {"scc", "affinities from polar GCNs and spectral clustering"},
    {"volsample", "draw a flat by volume sampling"}};

void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::invalid_argument, message);
}

void require_input(const RunConfig& c) {
  require(!c.input.empty(), c.command + ": --input is required");
}

void require_dim(const RunConfig& c, int min) {
  require(c.d >= min, c.command + ": --dim must be >= " + std::to_string(min));
}

/// Fields that are either always reported or tied to one command.
Json common_inputs(const RunConfig& c) {
  Json in;
  in["input"] = c.input;
  in["dim"] = c.d;
  return in;
}

IntegralSpec integral_spec(const RunConfig& c) {
  IntegralSpec spec;
  spec.kind = parse_gcn_kind(c.gcn);
  spec.d = c.d;
  spec.exponent = c.exponent;
  spec.anchor = parse_anchor(c.anchor);
  spec.tau = c.tau;
  spec.cap = c.cap;
  if (c.mode == "mc") {
    spec.monte_carlo = MonteCarloMode{c.samples, c.seed};
  } else {
    require(c.mode == "exact", "--mode must be exact or mc");
  }
  validate(spec);
  return spec;
}

RunResult cmd_ls_error(const RunConfig& c, const DiscreteMeasure& mu) {
  const auto fit = ls_flat(mu, c.d);
  const auto summary = spectral_summary(mu);
  Json out;
  out["e2"] = fit.e2;
  out["e2_squared"] = fit.e2 * fit.e2;
  out["unique"] = fit.unique;
  out["base"] = to_json(fit.flat.base());
  out["basis"] = to_json(fit.flat.basis());
  out["singular_values"] = to_json(summary.spectrum.values);
  return {0, out, {}};
}

RunResult cmd_gcn_eval(const RunConfig& c, const Matrix& vertices) {
  const Simplex x(vertices);
  const GcnKind kind = parse_gcn_kind(c.gcn);
  double diam_mu = c.diam_mu.value_or(0.0);
  if (kind == GcnKind::vol_mu && !c.diam_mu) diam_mu = diam(x);
  Json out;
  out["gcn"] = to_string(kind);
  out["d"] = gcn_dim(x);
  out["value"] = evaluate_gcn(kind, x, diam_mu);
  out["volume"] = volume(x);
  out["diam"] = diam(x);
  if (kind == GcnKind::vol_mu) out["diam_mu"] = diam_mu;
  return {0, out, {}};
}

RunResult cmd_integral(const RunConfig& c, const DiscreteMeasure& mu) {
  const IntegralSpec spec = integral_spec(c);
  Json out;
  out["gcn"] = to_string(spec.kind);
  out["anchor"] = to_string(spec.anchor);
  if (spec.monte_carlo) {
    const auto est = integral_mc(mu, spec);
    out["mode"] = "mc";
    out["value"] = est.estimate;
    out["std_error"] = est.std_error;
    out["samples"] = est.samples;
  } else {
    try {
      out["value"] = integral_exact(mu, spec);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::cap_exceeded) throw;
      throw Error(ErrorCode::cap_exceeded,
                  std::string(e.what()) + "; rerun with --mode mc --samples <n>");
    }
    out["mode"] = "exact";
  }
  return {0, out, {}};
}

RunResult cmd_moments(const RunConfig& c, const DiscreteMeasure& mu) {
  require(c.m >= 0, "moments: --m must be >= 0");
  const auto id = moment_identity_check(mu, c.m, c.cap);
  Json out;
  out["m"] = c.m;
  out["volume_moment"] = id.lhs;
  out["elementary_symmetric"] = id.rhs_paper;
  out["factorial_times_elementary_symmetric"] = id.rhs_corrected;
  out["kappa"] = id.kappa ? Json(*id.kappa) : Json(nullptr);
  return {0, out, {}};
}

RunResult cmd_certify(const RunConfig& c, const DiscreteMeasure& mu) {
  SearchOptions options;
  options.budget = c.cap;
  const auto cert = certify_separation(mu, c.d, parse_flavor(c.flavor), options);
  Json out;
  out["found"] = cert.has_value();
  out["certificate"] = cert ? to_json(*cert) : Json(nullptr);
  return {0, out, {}};
}

RunResult cmd_verify(const RunConfig& c, const DiscreteMeasure& mu) {
  require(!c.theorem.empty(), "verify: --theorem is required");
  VerifyParams params;
  params.cap = c.cap;
  params.search.budget = c.cap;
  params.pol_constant = c.pol_constant;
  if (c.mode == "mc") params.monte_carlo = MonteCarloMode{c.samples, c.seed};
  const auto report = verify_bound(parse_theorem(c.theorem), mu, c.d, params);
  const int code = report.status == BoundStatus::fail ? 2 : 0;
  return {code, to_json(report), {}};
}

RunResult cmd_concentration(const RunConfig& c, const DiscreteMeasure& mu) {
  ConcentrationParams params;
  params.d = c.d;
  params.sample_size = c.sample_size;
  params.trials = c.trials;
  params.delta = c.delta;
  params.seed = c.seed;
  params.search.budget = c.cap;
  const auto summary = concentration_experiment(mu, params);
  // The left inequality is deterministic; any miss is a failed bound.
  const int code = summary.left_holds == summary.trials ? 0 : 2;
  return {code, to_json(summary), {}};
}

RunResult cmd_scc(const RunConfig& c, const Matrix& points) {
  const auto w = scc_affinities(points, c.d, c.sigma, c.tuples_per_point, c.seed);
  const auto clusters = spectral_cluster(w, c.k, c.seed);
  Json out;
  out["labels"] = clusters.labels;
  out["sigma"] = w.sigma;
  out["sampled_tuples"] = w.sampled_tuples;
  RunResult result{0, out, {}};
  if (!clusters.warning.empty()) result.warnings.push_back(clusters.warning);
  return result;
}

RunResult cmd_volsample(const RunConfig& c, const DiscreteMeasure& mu) {
  const auto sample = volume_sample_flat(mu, c.d, c.seed, c.cap);
  Json out;
  out["atoms"] = sample.atoms;
  out["probability"] = sample.probability;
  out["base"] = to_json(sample.flat.base());
  out["basis"] = to_json(sample.flat.basis());
  out["mean_squared_distance"] = mean_squared_distance(mu, sample.flat);
  out["expected_error"] = volume_sampling_expected_error(mu, c.d, c.cap);
  out["e2_squared"] = std::pow(ls_flat(mu, c.d).e2, 2);
  return {0, out, {}};
}

bool uses_seed(const RunConfig& c) {
  return c.mode == "mc" || c.command == "concentration" || c.command == "scc" ||
         c.command == "volsample";
}

}  // namespace

RunResult run(const RunConfig& c) {
  require(std::find(kCommands.begin(), kCommands.end(), c.command) != kCommands.end(),
          "unknown command '" + c.command + "'");
  require_input(c);
  require(c.mode == "exact" || c.mode == "mc", "--mode must be exact or mc");
  require(c.mode != "mc" || c.samples > 0, "--samples must be positive");
  require(c.cap > 0, "--cap must be positive");

  const auto start = std::chrono::steady_clock::now();
  const PointCloud cloud = read_point_cloud(c.input, c.weighted);
  std::vector<std::string> warnings;
  Json inputs = common_inputs(c);
  inputs["points"] = cloud.points.cols();
  inputs["ambient_dim"] = cloud.points.rows();

  RunResult result;
  if (c.command == "gcn-eval") {
    inputs["gcn"] = c.gcn;
    result = cmd_gcn_eval(c, cloud.points);
  } else if (c.command == "scc") {
    require_dim(c, 0);
    require(c.k >= 1, "scc: --k must be >= 1");
    inputs["k"] = c.k;
    inputs["tuples_per_point"] = c.tuples_per_point;
    inputs["sigma"] = c.sigma ? Json(*c.sigma) : Json(nullptr);
    result = cmd_scc(c, cloud.points);
  } else {
    const DiscreteMeasure mu = to_measure(cloud, &warnings);
    if (c.command == "ls-error") {
      require_dim(c, 0);
      result = cmd_ls_error(c, mu);
    } else if (c.command == "integral") {
      require_dim(c, 0);
      inputs["gcn"] = c.gcn;
      inputs["p"] = c.exponent;
      inputs["mode"] = c.mode;
      inputs["anchor"] = c.anchor;
      inputs["tau"] = c.tau ? Json(*c.tau) : Json(nullptr);
      inputs["cap"] = c.cap;
      if (c.mode == "mc") inputs["samples"] = c.samples;
      result = cmd_integral(c, mu);
    } else if (c.command == "moments") {
      inputs["m"] = c.m;
      result = cmd_moments(c, mu);
    } else if (c.command == "certify") {
      require_dim(c, 0);
      inputs["flavor"] = c.flavor;
      result = cmd_certify(c, mu);
    } else if (c.command == "verify") {
      require_dim(c, 0);
      inputs["theorem"] = c.theorem;
      inputs["mode"] = c.mode;
      if (c.mode == "mc") inputs["samples"] = c.samples;
      result = cmd_verify(c, mu);
    } else if (c.command == "concentration") {
      require_dim(c, 0);
      require(c.trials > 0 && c.sample_size > 0,
              "concentration: --trials and --N must be positive");
      inputs["trials"] = c.trials;
      inputs["N"] = c.sample_size;
      inputs["delta"] = c.delta;
      result = cmd_concentration(c, mu);
    } else {
      require_dim(c, 0);
      result = cmd_volsample(c, mu);
    }
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  warnings.insert(warnings.end(), result.warnings.begin(), result.warnings.end());
  result.warnings = warnings;
  Json outputs = std::move(result.report);
  if (!warnings.empty()) outputs["warnings"] = warnings;
  result.report = make_report(c.command, std::move(inputs), std::move(outputs), ms,
                              uses_seed(c) ? std::optional<std::uint64_t>(c.seed)
                                           : std::nullopt);
  return result;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"gcnlab: geometric condition numbers and least-squares flats"};
  app.name("gcnlab");
  app.require_subcommand(1);
  RunConfig c;
  double tau = -1.0;
  double sigma = -1.0;
  double diam_mu = -1.0;

  for (const auto& name : kCommands) {
    auto* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("--input", c.input, "CSV or JSON point file")->required();
    sub->add_flag("--weighted", c.weighted, "last CSV column holds weights");
    sub->add_option("--dim", c.d, "flat dimension d");
    sub->add_option("--gcn", c.gcn, "vol, vol-mu, pol, dls, ht, curvature-vol, dsh, vol-dsh");
    sub->add_option("--p", c.exponent, "exponent of the GCN");
    sub->add_option("--mode", c.mode, "exact or mc");
    sub->add_option("--samples", c.samples, "Monte-Carlo sample count");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--anchor", c.anchor, "none, xcm-plus-d1, xcm-plus-d");
    sub->add_option("--tau", tau, "minimal-edge restriction as a fraction of diam");
    sub->add_option("--out", c.out, "write the report here instead of stdout");
    sub->add_option("--theorem", c.theorem, "bound to verify");
    sub->add_option("--flavor", c.flavor, "plain, central, simplex-wrt, robust");
    sub->add_option("--sigma", sigma, "SCC affinity bandwidth");
    sub->add_option("--k", c.k, "number of clusters");
    sub->add_option("--cap", c.cap, "enumeration cap");
    sub->add_option("--trials", c.trials, "concentration trials");
    sub->add_option("--N", c.sample_size, "concentration sample size");
    sub->add_option("--delta", c.delta, "concentration delta");
    sub->add_option("--m", c.m, "volume moment order");
    sub->add_option("--tuples", c.tuples_per_point, "SCC tuples per point");
    sub->add_option("--pol-constant", c.pol_constant, "pass threshold for pol-upper");
    sub->add_option("--diam-mu", diam_mu, "diameter used by vol-mu in gcn-eval");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (tau >= 0.0) c.tau = tau;
  if (sigma >= 0.0) c.sigma = sigma;
  if (diam_mu >= 0.0) c.diam_mu = diam_mu;

  try {
    const RunResult result = run(c);
    for (const auto& w : result.warnings) err << "warning: " << w << "\n";
    const std::string text = serialize(result.report);
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream file(c.out, std::ios::binary);
      if (!file) throw Error(ErrorCode::invalid_argument, "cannot write " + c.out);
      file << text;
    }
    return result.exit_code;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace gcnlab::cli
