#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orthosel/asymptotics.hpp"
#include "orthosel/criteria.hpp"
#include "orthosel/rng.hpp"
#include "orthosel/sample.hpp"
#include "orthosel/variance.hpp"

namespace orthosel {

using ordered_json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SignalKind { Zero, Sparse, RhoBall };

// Mean vector generator: Zero, s spikes of +-amplitude at uniformly random
// positions, or a vector rescaled onto the rho-sphere sum |beta_j|^rho = M.
struct SignalSpec {
  SignalKind kind = SignalKind::Zero;
  std::size_t n = 0;
  std::size_t s = 0;        // Sparse
  double amplitude = 0.0;   // Sparse
  double rho = 1.0;         // RhoBall, in (0, 2]
  double M = 0.0;           // RhoBall, > 0
};

enum class NoiseKind { Gaussian, StudentT };

// Noise generator; StudentT is rescaled so the coordinate variance is
// sigma^2 (dof > 2 required).
struct NoiseSpec {
  NoiseKind kind = NoiseKind::Gaussian;
  double sigma = 1.0;
  double dof = 0.0;
};

// Optional parameter grids for sweeping experiments.
struct SweepSpec {
  std::vector<std::size_t> n;
  std::vector<double> C;
  std::vector<std::size_t> k;

  bool empty() const { return n.empty() && C.empty() && k.empty(); }
};

struct ExperimentConfig {
  std::string name;
  SignalSpec signal;
  NoiseSpec noise;
  std::size_t replicas = 1;
  SeedSpec seed;
  std::vector<PenaltySpec> criterion_grid;
  SweepSpec sweep;
  double alpha = kDefaultAlpha;
  std::pair<double, double> window_frac = {kDefaultWindowLo, kDefaultWindowHi};
  std::string output_path;
};

// One emitted result line. k_hat is -1 when a degenerate replica selected
// nothing; risk is NaN in that case and serializes to an empty CSV field.
struct ReportRow {
  std::string experiment;
  std::size_t replica = 0;
  std::vector<std::pair<std::string, std::string>> parameters;
  long k_hat = 0;
  double risk = 0.0;
  double oracle_risk = 0.0;
  std::optional<double> sigma2_hat;
};

struct ExperimentResult {
  std::string name;
  std::vector<ReportRow> rows;
  std::vector<TailCheckReport> tail_rows;  // threshold_law only
  ordered_json summary;
};

// Draws (mu_true, sample = mu_true + noise) deterministically from the seed:
// signal positions/signs first, then the noise vector, all on one stream.
std::pair<std::vector<double>, Sample> generate(const SignalSpec& signal,
                                                const NoiseSpec& noise,
                                                const SeedSpec& seed);

// The four named experiments. Replicas run concurrently on derived streams;
// rows are buffered per replica and emitted in replica order, so output is
// identical for any thread count.
ExperimentResult run_phase_transition(const ExperimentConfig& config,
                                      int threads = 0);
ExperimentResult run_oracle_ratio(const ExperimentConfig& config,
                                  int threads = 0);
ExperimentResult run_variance_validation(const ExperimentConfig& config,
                                         int threads = 0);
ExperimentResult run_threshold_law(const ExperimentConfig& config,
                                   int threads = 0);

// Dispatch by config.name.
ExperimentResult run_experiment(const ExperimentConfig& config, int threads = 0);

// Strict config parsing: unknown keys anywhere are a hard ConfigError.
ExperimentConfig load_experiment_config(const ordered_json& json);
ExperimentConfig load_experiment_config_file(const std::string& path);

// CSV rendering (RFC 4180 quoting, header row, LF endings) of whichever row
// table the result carries.
std::string rows_to_csv(const ExperimentResult& result);

struct OutputPaths {
  std::string rows_csv;
  std::string summary_json;
};

// Writes <dir>/<name>_rows.csv and <dir>/<name>_summary.json.
OutputPaths write_experiment_outputs(const ExperimentResult& result,
                                     const std::string& dir);

}  // namespace orthosel
