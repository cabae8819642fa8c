// Command-line front end: path/criterion fits on a CSV response vector,
// slope-heuristic calibration, and the batch experiment runner.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orthosel/criteria.hpp"
#include "orthosel/csv.hpp"
#include "orthosel/selection.hpp"
#include "orthosel/simharness.hpp"
#include "orthosel/variance.hpp"

namespace {

using namespace orthosel;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;

struct GlobalOptions {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string output = ".";
};

double resolve_sigma2(const Sample& sample, const std::optional<double>& given,
                      double alpha, double f_lo, double f_hi,
                      std::string& source) {
  if (given) {
    if (!(*given > 0.0)) throw ConfigError("--sigma2 must be > 0");
    source = "known";
    return *given;
  }
  const SlopeFit fit = estimate_sigma2(sample, alpha, f_lo, f_hi);
  if (!(fit.sigma2_hat > 0.0))
    throw DegenerateVarianceError("slope-heuristic variance is 0");
  source = "slope_heuristic";
  return fit.sigma2_hat;
}

int run_fit(const GlobalOptions& global, const std::string& input,
            const std::optional<double>& sigma2_opt, double alpha,
            const std::pair<double, double>& window) {
  const auto sample = make_sample(read_y_csv_file(input));
  std::string sigma_source;
  const double sigma2 = resolve_sigma2(sample, sigma2_opt, alpha, window.first,
                                       window.second, sigma_source);
  const auto stats = abs_order_statistics(sample);
  const auto soft = soft_rss_curve(stats);
  const auto hard = hard_rss_curve(stats);
  const std::size_t n = sample.size();

  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    prefix[r + 1] = prefix[r] + stats.abs_desc[r];

  CsvWriter writer({"k", "threshold", "rss_soft", "rss_hard", "l1_soft",
                    "mallows_cp", "random_penalty"});
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = threshold_level(stats, k);
    const double kk = static_cast<double>(k);
    const double l1 = prefix[k] - kk * t;
    const double cp =
        soft[k] - static_cast<double>(n) * sigma2 + 2.0 * kk * sigma2;
    writer.append_row({std::to_string(k), format_double(t),
                       format_double(soft[k]), format_double(hard[k]),
                       format_double(l1), format_double(cp),
                       format_double(kk * t * t + 2.0 * kk * sigma2)});
  }
  std::filesystem::create_directories(global.output);
  const std::string path = global.output + "/fit_curves.csv";
  write_text_file(path, writer.str());
  std::cout << "n " << n << "\nsigma2 " << format_double(sigma2) << " ("
            << sigma_source << ")\nwrote " << path << "\n";
  return kExitOk;
}

int run_select(const GlobalOptions& global, const std::string& input,
               const std::optional<double>& sigma2_opt,
               const std::string& criterion, double C, double Cprime,
               double alpha, const std::pair<double, double>& window) {
  const auto sample = make_sample(read_y_csv_file(input));
  std::string sigma_source;
  const double sigma2 = resolve_sigma2(sample, sigma2_opt, alpha, window.first,
                                       window.second, sigma_source);

  PenaltySpec spec = PenaltySpec::mallows_cp();
  if (criterion == "mallows_cp")
    spec = PenaltySpec::mallows_cp();
  else if (criterion == "birge_massart")
    spec = PenaltySpec::birge_massart(C, Cprime);
  else if (criterion == "fdr")
    spec = PenaltySpec::fdr(Cprime);
  else if (criterion == "random_soft")
    spec = PenaltySpec::random_soft();
  else
    throw ConfigError("unknown --criterion '" + criterion + "'");

  const auto result = select_k(sample, sigma2, spec);

  CsvWriter writer({"index", "y", "estimate"});
  for (std::size_t i = 0; i < sample.size(); ++i)
    writer.append_row({std::to_string(i), format_double(sample.values[i]),
                       format_double(result.estimate.values[i])});
  std::filesystem::create_directories(global.output);
  const std::string path = global.output + "/select_estimate.csv";
  write_text_file(path, writer.str());

  std::cout << "k_hat " << result.k_hat << "\nlevel "
            << format_double(result.estimate.level) << "\nsigma2 "
            << format_double(sigma2) << " (" << sigma_source << ")\nwrote "
            << path << "\n";
  return kExitOk;
}

int run_calibrate(const GlobalOptions& global, std::size_t n,
                  std::size_t replicas,
                  const std::pair<double, double>& window) {
  const SeedSpec seed{global.seed, 0};
  const double alpha = calibrate_alpha(n, replicas, window.first, window.second,
                                       seed, global.threads);
  CsvWriter writer({"n", "replicas", "f_lo", "f_hi", "alpha_hat"});
  writer.append_row({std::to_string(n), std::to_string(replicas),
                     format_double(window.first), format_double(window.second),
                     format_double(alpha)});
  std::filesystem::create_directories(global.output);
  const std::string path = global.output + "/calibrate_alpha.csv";
  write_text_file(path, writer.str());
  std::cout << "alpha_hat " << format_double(alpha) << "\nwrote " << path
            << "\n";
  return kExitOk;
}

int run_experiment_cmd(const GlobalOptions& global,
                       const std::string& config_path, bool output_overridden,
                       bool seed_overridden) {
  ExperimentConfig config = load_experiment_config_file(config_path);
  if (seed_overridden) config.seed.master_seed = global.seed;
  const std::string dir = output_overridden || config.output_path.empty()
                              ? global.output
                              : config.output_path;
  const auto result = run_experiment(config, global.threads);
  const auto paths = write_experiment_outputs(result, dir);
  std::cout << "experiment " << result.name << "\nrows "
            << (result.tail_rows.empty() ? result.rows.size()
                                         : result.tail_rows.size())
            << "\nwrote " << paths.rows_csv << "\nwrote " << paths.summary_json
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-path model selection for orthogonal designs"};
  app.require_subcommand(1);

  GlobalOptions global;
  auto* seed_opt =
      app.add_option("--seed", global.seed, "Master seed for randomized commands");
  app.add_option("--threads", global.threads, "Worker threads (0 = auto)");
  auto* output_opt = app.add_option("--output", global.output, "Output directory");

  std::string input;
  double sigma2_value = 0.0;
  double alpha = kDefaultAlpha;
  std::pair<double, double> window{kDefaultWindowLo, kDefaultWindowHi};

  auto add_sigma_options = [&](CLI::App* cmd) {
    cmd->add_option("--sigma2", sigma2_value,
                    "Known noise variance (omit to use the slope heuristic)");
    cmd->add_option("--alpha", alpha, "Slope-heuristic alpha(n)");
    cmd->add_option("--window", window, "Slope-heuristic window fractions: lo hi");
  };

  auto* fit =
      app.add_subcommand("fit", "Emit threshold paths and criterion curves");
  fit->fallthrough();
  fit->add_option("--input", input, "Single-column y CSV")->required();
  add_sigma_options(fit);

  std::string criterion = "mallows_cp";
  double C = 1.0, Cprime = 0.0;
  auto* select = app.add_subcommand("select", "Select k and emit the estimate");
  select->fallthrough();
  select->add_option("--input", input, "Single-column y CSV")->required();
  select->add_option("--criterion", criterion,
                     "mallows_cp | birge_massart | fdr | random_soft");
  select->add_option("--C", C, "BirgeMassart constant C");
  select->add_option("--Cprime", Cprime, "BirgeMassart constant C'");
  add_sigma_options(select);

  std::size_t n = 0, replicas = 0;
  auto* calibrate =
      app.add_subcommand("calibrate-alpha", "Monte Carlo estimate of alpha(n)");
  calibrate->fallthrough();
  calibrate->add_option("--n", n, "Sample size")->required();
  calibrate->add_option("--replicas", replicas, "Replica count")->required();
  calibrate->add_option("--window", window, "Window fractions: lo hi");

  std::string config_path;
  auto* experiment = app.add_subcommand("experiment", "Run a named experiment");
  experiment->fallthrough();
  experiment->add_option("--config", config_path, "JSON config path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    std::optional<double> sigma2_opt;
    if (fit->parsed()) {
      if (fit->count("--sigma2")) sigma2_opt = sigma2_value;
      return run_fit(global, input, sigma2_opt, alpha, window);
    }
    if (select->parsed()) {
      if (select->count("--sigma2")) sigma2_opt = sigma2_value;
      return run_select(global, input, sigma2_opt, criterion, C, Cprime, alpha,
                        window);
    }
    if (calibrate->parsed()) return run_calibrate(global, n, replicas, window);
    if (experiment->parsed())
      return run_experiment_cmd(global, config_path, output_opt->count() > 0,
                                seed_opt->count() > 0);
    return kExitConfig;
  } catch (const DegenerateVarianceError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CsvParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
