#include "qpol/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpol/degrees.hpp"
#include "qpol/state_spec.hpp"
#include "qpol/states.hpp"
#include "qpol/stokes.hpp"
#include "qpol/twolevel.hpp"

namespace qpol::cli {

using nlohmann::json;

namespace {

std::string fmt12(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

struct MeasureRow {
  std::string measure;
  double value = 0.0;
  std::string method;
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> spectrum;
};

MeasureRow from_report(const std::string& measure, const DegreeReport& r) {
  return {measure, r.value, std::string(to_string(r.method)), r.iterations, r.residual, r.optimal_spectrum.lambdas()};
}

MeasureRow bures_row(const LoadedState& state, const RunConfig& config) {
  const bool alt = config.optimizer.alternative_definition;
  if (state.pure || state.diagonal) {
    auto report = state.pure ? degree_bures_pure(*state.pure) : degree_bures_diagonal(*state.diagonal);
    if (alt) report.value = alternative_bures(report.value);
    auto row = from_report("bures", report);
    // The diagonal closed form only spans the manifolds listed in the spec.
    row.spectrum.resize(static_cast<std::size_t>(state.density.cutoff() + 1), 0.0);
    return row;
  }
  return from_report("bures", degree_bures_general(state.density, config.optimizer));
}

void print_rows(const LoadedState& state, const std::vector<MeasureRow>& rows, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    json measures = json::object();
    for (const auto& r : rows) {
      json entry{{"value", r.value}, {"method", r.method}, {"iterations", r.iterations}, {"residual", r.residual}};
      if (!r.spectrum.empty()) entry["optimal_spectrum"] = r.spectrum;
      measures[r.measure] = entry;
    }
    json doc{{"kind", state.kind}, {"cutoff", state.density.cutoff()}, {"tail_mass", state.tail_mass},
             {"measures", measures}};
    out << doc.dump(2) << '\n';
    return;
  }
  out << "measure,value,method,iterations,residual,optimal_spectrum\n";
  for (const auto& r : rows) {
    std::string spectrum;
    for (std::size_t i = 0; i < r.spectrum.size(); ++i) spectrum += (i ? ";" : "") + fmt12(r.spectrum[i]);
    out << r.measure << ',' << fmt12(r.value) << ',' << r.method << ',' << r.iterations << ',' << fmt12(r.residual) << ','
        << spectrum << '\n';
  }
}

/// Evaluates fn(i) for i in [0, n) on a small worker pool; results keep index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn) {
  std::vector<T> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          results[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace

void validate_config(const RunConfig& config) {
  if (!(config.tail_tol > 0.0)) throw std::invalid_argument("tail tolerance must be positive");
  if (!(config.optimizer.kkt_tol > 0.0)) throw std::invalid_argument("KKT tolerance must be positive");
  if (!(config.optimizer.fd_step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  if (config.optimizer.max_iter <= 0) throw std::invalid_argument("max_iter must be positive");
  if (config.cutoff && *config.cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
}

int cmd_degree(const std::string& spec_path, const std::vector<std::string>& measures, const RunConfig& config,
               std::ostream& out, std::ostream& err) {
  std::optional<LoadedState> loaded;
  try {
    validate_config(config);
    for (const auto& m : measures)
      if (m != "hs" && m != "bures" && m != "sc" && m != "discrete") throw SpecError("unknown measure \"" + m + "\"");
    loaded = load_state_spec_file(spec_path, {config.cutoff, config.tail_tol});
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  const LoadedState& state = *loaded;

  std::vector<MeasureRow> rows;
  try {
    for (const auto& m : measures) {
      if (m == "hs") {
        rows.push_back(from_report("hs", degree_hs(state.density)));
      } else if (m == "bures") {
        rows.push_back(bures_row(state, config));
      } else if (m == "sc") {
        const double v = state.pure ? semiclassical_degree(*state.pure) : semiclassical_degree(state.density);
        rows.push_back({"sc", v, "closed_form", 0, 0.0, {}});
      } else {
        rows.push_back({"discrete", static_cast<double>(degree_discrete(state.density)), "closed_form", 0, 0.0, {}});
      }
    }
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUndefined;
  } catch (const OptimizerError& e) {
    err << "error: " << e.what() << " (best value " << fmt12(1.0 - e.best().objective) << ", residual "
        << fmt12(e.best().residual) << ")\n";
    return kNotConverged;
  }
  print_rows(state, rows, config.format, out);
  return kOk;
}

int cmd_figure1(int N1, int N2, int resolution, const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<Figure1Row> rows;
  try {
    validate_config(config);
    rows = figure1_sweep(N1, N2, resolution);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  if (config.format == OutputFormat::json) {
    json doc = json::array();
    for (const auto& r : rows)
      doc.push_back({{"p", r.p}, {"q_squared", r.q_squared}, {"case", r.label}, {"P_HS", r.hs}, {"P_B", r.bures},
                     {"lambda1", r.lambda1}, {"lambda2", r.lambda2}});
    out << doc.dump(2) << '\n';
  } else {
    write_figure1_csv(out, rows);
  }
  return kOk;
}

int cmd_sweep(const SweepRequest& request, const RunConfig& config, std::ostream& out, std::ostream& err) {
  struct Row {
    double param = 0.0;
    double hs = 0.0;
    double bures = 0.0;
    double sc = NAN;
  };
  std::vector<Row> rows;
  try {
    validate_config(config);
    if (request.steps < 1) throw std::invalid_argument("sweep needs at least one step");
    if (request.family != "coherent" && request.family != "fock")
      throw std::invalid_argument("unknown sweep family \"" + request.family + "\"");
    const auto n = static_cast<std::size_t>(request.steps);
    rows = parallel_map<Row>(n, [&](std::size_t i) {
      const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      double param = request.from + t * (request.to - request.from);
      PureState psi = fock_state(0, 0, 0);
      if (request.family == "fock") {
        param = std::round(param);
        const int N = static_cast<int>(param);
        psi = fock_state(N, 0, std::max(N, config.cutoff.value_or(N)));
      } else {
        CoherentSpec spec;
        spec.mean_photons = param;
        spec.theta = M_PI / 2;
        spec.tail_tol = config.tail_tol;
        psi = two_mode_coherent(spec).state;
      }
      Row row{param, degree_hs(DensityMatrix::from_pure(psi)).value, degree_bures_pure(psi).value, NAN};
      if (config.optimizer.alternative_definition) row.bures = alternative_bures(row.bures);
      if (stokes_moments(psi).s0 > 1e-14) row.sc = semiclassical_degree(psi);
      return row;
    });
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.param < b.param; });

  if (config.format == OutputFormat::json) {
    json doc = json::array();
    for (const auto& r : rows) {
      json entry{{"family", request.family}, {"param", r.param}, {"P_HS", r.hs}, {"P_B", r.bures}};
      entry["P_sc"] = std::isnan(r.sc) ? json(nullptr) : json(r.sc);
      doc.push_back(entry);
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "family,param,P_HS,P_B,P_sc\n";
    for (const auto& r : rows)
      out << request.family << ',' << fmt12(r.param) << ',' << fmt12(r.hs) << ',' << fmt12(r.bures) << ','
          << (std::isnan(r.sc) ? std::string() : fmt12(r.sc)) << '\n';
  }
  return kOk;
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err, const ValidationHooks& hooks) {
  std::vector<CheckResult> results;
  try {
    validate_config(config);
    results = run_validation(config, hooks);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  int failures = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << '\n';
    if (!r.passed) {
      ++failures;
      err << "failed: " << r.name << ": " << r.detail << '\n';
    }
  }
  out << results.size() - static_cast<std::size_t>(failures) << '/' << results.size() << " checks passed\n";
  return failures == 0 ? kOk : kCheckFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance-based degrees of polarization for two-mode quantum fields", "qpol"};
  app.require_subcommand(1);

  RunConfig config;
  int cutoff = -1;
  std::string format = "csv";
  app.add_option("--cutoff", cutoff, "Embed states into this photon-number cutoff");
  app.add_option("--tail-tol", config.tail_tol, "Discarded Poisson mass allowed for coherent states");
  app.add_option("--kkt-tol", config.optimizer.kkt_tol, "Projected-gradient tolerance of the Bures optimizer");
  app.add_option("--max-iter", config.optimizer.max_iter, "Iteration cap of the Bures optimizer");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", config.seed, "Seed for randomized checks");
  app.add_flag("--alternative-bures", config.optimizer.alternative_definition, "Report 1 - sup F instead of 1 - sup sqrt(F)");

  auto* degree = app.add_subcommand("degree", "Degrees of polarization for a JSON state spec")->fallthrough();
  std::string spec_path;
  std::vector<std::string> measures{"hs", "bures"};
  degree->add_option("spec", spec_path, "State spec file")->required();
  degree->add_option("--measures", measures, "Subset of hs,bures,sc,discrete")->delimiter(',');

  auto* figure = app.add_subcommand("figure1", "Two-manifold sweep behind the ordering-reversal figure")->fallthrough();
  int n1 = 1;
  int n2 = 2;
  int resolution = 101;
  figure->add_option("--n1", n1, "First manifold");
  figure->add_option("--n2", n2, "Second manifold");
  figure->add_option("--resolution", resolution, "Number of p values in [0, 1]");

  auto* sweep = app.add_subcommand("sweep", "Degrees along a one-parameter state family")->fallthrough();
  SweepRequest request;
  sweep->add_option("--family", request.family, "coherent or fock")->check(CLI::IsMember({"coherent", "fock"}));
  sweep->add_option("--from", request.from, "First parameter value");
  sweep->add_option("--to", request.to, "Last parameter value");
  sweep->add_option("--steps", request.steps, "Number of points");

  auto* validate = app.add_subcommand("validate", "Run the oracle cross-check suite")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }
  if (cutoff >= 0) config.cutoff = cutoff;
  config.format = format == "json" ? OutputFormat::json : OutputFormat::csv;

  if (degree->parsed()) return cmd_degree(spec_path, measures, config, out, err);
  if (figure->parsed()) return cmd_figure1(n1, n2, resolution, config, out, err);
  if (sweep->parsed()) return cmd_sweep(request, config, out, err);
  if (validate->parsed()) return cmd_validate(config, out, err);
  return kBadInput;
}

}  // namespace qpol::cli
