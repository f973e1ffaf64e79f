#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qpol/optimizer.hpp"
#include "qpol/unpolarized.hpp"

namespace qpol::cli {

enum class OutputFormat { csv, json };

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,     // validate found failing checks
  kBadInput = 2,        // malformed spec or arguments
  kUndefined = 3,       // requested measure undefined (semiclassical degree of the vacuum)
  kNotConverged = 4,    // Bures optimizer hit max_iter
};

struct RunConfig {
  std::optional<int> cutoff;
  double tail_tol = 1e-12;
  OptimizerSettings optimizer;
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 42;
};

/// Checks that every tolerance is positive; throws std::invalid_argument otherwise.
void validate_config(const RunConfig& config);

int cmd_degree(const std::string& spec_path, const std::vector<std::string>& measures, const RunConfig& config,
               std::ostream& out, std::ostream& err);

int cmd_figure1(int N1, int N2, int resolution, const RunConfig& config, std::ostream& out, std::ostream& err);

struct SweepRequest {
  std::string family = "coherent";  // "coherent" (param N̄) or "fock" (param N, state |N,0⟩)
  double from = 0.5;
  double to = 10.0;
  int steps = 20;
};

int cmd_sweep(const SweepRequest& request, const RunConfig& config, std::ostream& out, std::ostream& err);

/// Replaceable pieces of the library, so a test can check that the oracle
/// suite notices a broken implementation.
struct ValidationHooks {
  std::function<UnpolarizedSpectrum(const DensityMatrix&)> hs_closest;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_validation(const RunConfig& config, const ValidationHooks& hooks = {});

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err, const ValidationHooks& hooks = {});

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qpol::cli
