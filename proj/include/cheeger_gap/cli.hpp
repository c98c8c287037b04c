#pragma once

// Command-line front end. Every command writes CSV (header row, '.' decimal,
// 17 significant digits) to the configured output.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cheeger_gap/error.hpp"
#include "cheeger_gap/model.hpp"
#include "cheeger_gap/pipeline.hpp"
#include "cheeger_gap/reduced.hpp"
#include "cheeger_gap/spectra.hpp"

namespace cheeger_gap::cli {

enum class Command { gap, bounds, sweep, verify, export_graph, export_network };

const char* to_string(Command c);

enum class DomainChoice { automatic, both, subsets_of_s, all_feasible };

enum class EnergyUnit { literal, constriction };

struct RunConfig {
  ModelSpec model{ModelKind::ring, 8, 1.0, {}};
  bool model_given = false;  // a model flag was set explicitly

  SpectraOptions spectra;
  double cap_tol = 1e-12;
  double tie_tol = 1e-12;
  double graph_tol = 1e-9;
  double check_tol = 1e-8;   // identities and inequalities in verify
  double flow_tol = 1e-6;    // relative, Theorem-1 min-cut value
  double flow_abs_tol = 1e-9;
  std::size_t enum_limit = 24;
  std::size_t subset_limit = 22;
  std::size_t max_spins = 20;
  std::size_t gap_limit = 4096;

  std::vector<ReductionStrategy> strategies{ReductionStrategy::cut_only, ReductionStrategy::cut_plus_paths,
                                            ReductionStrategy::full_graph};
  DomainChoice domain = DomainChoice::automatic;
  EnergyUnit energy_unit = EnergyUnit::literal;

  std::filesystem::path out;  // empty: the caller's stream
  std::uint64_t seed = 42;
  std::size_t threads = 0;    // 0: hardware concurrency, capped by CHEEGER_GAP_THREADS

  // sweep
  std::string param;
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;

  // verify
  std::vector<std::string> only;
  std::size_t instances = 100;
  std::size_t partitions = 100;
  bool inject_inflated = false;

  // export-network
  std::string support = "cut";  // "cut" or "vplus"

  /// Throws Error(validation) on non-positive limits or an empty strategy list.
  void validate() const;
  /// Options for an analysis of an N-dimensional model; `automatic` resolves
  /// to both domains for `bounds` and to default_domain(N) elsewhere.
  PipelineOptions pipeline(std::size_t dim, bool both_when_automatic = false) const;
  std::size_t worker_count() const;
};

/// Parses argv-style arguments (without the program name) and runs the
/// command. Returns the process exit code: 0 success, 1 verification failure,
/// 2 input or validation error, 3 numerical non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs one command on an already parsed configuration; library errors
/// propagate as exceptions.
int execute(Command cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Exit code for a library error.
int exit_code(ErrorKind kind);

void cmd_gap(const RunConfig& cfg, std::ostream& out);
void cmd_bounds(const RunConfig& cfg, std::ostream& out);
void cmd_sweep(const RunConfig& cfg, std::ostream& out);
void cmd_export_graph(const RunConfig& cfg, std::ostream& out);
void cmd_export_network(const RunConfig& cfg, std::ostream& out);

struct VerifySummary {
  std::size_t checks = 0;
  std::size_t failed = 0;
  std::size_t evidence = 0;  // logged observations that do not fail the run
  std::string first_failure; // "suite/instance/check"
  bool ok() const noexcept { return failed == 0; }
};

/// Suites: laplacian, cheeger, generalized, theorem1, rayleigh. Runs on the
/// configured model when one was given, otherwise on the built-in models plus
/// `instances` seeded random matrices. One CSV row per check, then a summary
/// row.
VerifySummary cmd_verify(const RunConfig& cfg, std::ostream& out);

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"laplacian", "cheeger", "generalized", "theorem1", "rayleigh"};
  return names;
}

}  // namespace cheeger_gap::cli
