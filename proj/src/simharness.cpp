#include "orthosel/simharness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "orthosel/csv.hpp"
#include "orthosel/parallel.hpp"
#include "orthosel/selection.hpp"
#include "orthosel/thresholding.hpp"

namespace orthosel {

namespace {

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// nearest-rank percentile
double percentile_of(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(v.size())));
  return v[std::min(v.size() - 1, rank == 0 ? 0 : rank - 1)];
}

std::string family_name(const PenaltySpec& spec) {
  switch (spec.family) {
    case PenaltyFamily::MallowsCp: return "mallows_cp";
    case PenaltyFamily::BirgeMassart: return "birge_massart";
    case PenaltyFamily::Fdr: return "fdr";
    case PenaltyFamily::RandomSoft: return "random_soft";
    case PenaltyFamily::CustomTable: return "custom_table";
  }
  return "unknown";
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

ordered_json signal_json(const SignalSpec& s) {
  ordered_json j;
  switch (s.kind) {
    case SignalKind::Zero:
      j["kind"] = "zero";
      break;
    case SignalKind::Sparse:
      j["kind"] = "sparse";
      j["s"] = s.s;
      j["amplitude"] = s.amplitude;
      break;
    case SignalKind::RhoBall:
      j["kind"] = "rho_ball";
      j["rho"] = s.rho;
      j["M"] = s.M;
      break;
  }
  j["n"] = s.n;
  return j;
}

ordered_json noise_json(const NoiseSpec& s) {
  ordered_json j;
  j["kind"] = s.kind == NoiseKind::Gaussian ? "gaussian" : "student_t";
  j["sigma"] = s.sigma;
  if (s.kind == NoiseKind::StudentT) j["dof"] = s.dof;
  return j;
}

ordered_json base_summary(const ExperimentConfig& config) {
  ordered_json j;
  j["experiment"] = config.name;
  j["rng_algorithm"] = kRngAlgorithm;
  j["seed"] = {{"master_seed", config.seed.master_seed},
               {"stream_id", config.seed.stream_id}};
  j["replicas"] = config.replicas;
  j["signal"] = signal_json(config.signal);
  j["noise"] = noise_json(config.noise);
  return j;
}

void validate_common(const ExperimentConfig& config) {
  if (config.replicas < 1) throw ConfigError("replicas must be >= 1");
  if (config.signal.n < 1) throw ConfigError("signal.n must be >= 1");
  if (!(config.noise.sigma > 0.0)) throw ConfigError("noise.sigma must be > 0");
  if (config.noise.kind == NoiseKind::StudentT && !(config.noise.dof > 2.0))
    throw ConfigError("student_t noise requires dof > 2");
  if (config.signal.kind == SignalKind::Sparse && config.signal.s > config.signal.n)
    throw ConfigError("sparse signal requires s <= n");
  if (config.signal.kind == SignalKind::RhoBall &&
      !(config.signal.rho > 0.0 && config.signal.rho <= 2.0 && config.signal.M > 0.0))
    throw ConfigError("rho_ball signal requires rho in (0,2] and M > 0");
}

}  // namespace

std::pair<std::vector<double>, Sample> generate(const SignalSpec& signal,
                                                const NoiseSpec& noise,
                                                const SeedSpec& seed) {
  const std::size_t n = signal.n;
  if (n < 1) throw std::invalid_argument("generate: signal.n must be >= 1");
  if (!(noise.sigma > 0.0))
    throw std::invalid_argument("generate: noise.sigma must be > 0");
  if (noise.kind == NoiseKind::StudentT && !(noise.dof > 2.0))
    throw std::invalid_argument("generate: student_t noise requires dof > 2");

  Rng rng(seed);
  std::vector<double> mu(n, 0.0);

  switch (signal.kind) {
    case SignalKind::Zero:
      break;
    case SignalKind::Sparse: {
      if (signal.s > n)
        throw std::invalid_argument("generate: sparse signal requires s <= n");
      // partial Fisher-Yates for the spike positions, then one sign per spike
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      for (std::size_t j = 0; j < signal.s; ++j)
        std::swap(idx[j], idx[j + rng.next_below(n - j)]);
      for (std::size_t j = 0; j < signal.s; ++j)
        mu[idx[j]] = rng.next_unit() < 0.5 ? -signal.amplitude : signal.amplitude;
      break;
    }
    case SignalKind::RhoBall: {
      if (!(signal.rho > 0.0 && signal.rho <= 2.0))
        throw std::invalid_argument("generate: rho must be in (0,2]");
      if (!(signal.M > 0.0))
        throw std::invalid_argument("generate: M must be > 0");
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        mu[i] = std::abs(rng.next_gaussian());
        total += std::pow(mu[i], signal.rho);
      }
      if (!(total > 0.0))
        throw std::runtime_error("generate: degenerate rho_ball magnitudes");
      const double scale = std::pow(signal.M / total, 1.0 / signal.rho);
      for (std::size_t i = 0; i < n; ++i) {
        mu[i] *= scale;
        if (rng.next_unit() < 0.5) mu[i] = -mu[i];
      }
      break;
    }
  }

  const double t_scale = noise.kind == NoiseKind::StudentT
                             ? std::sqrt((noise.dof - 2.0) / noise.dof)
                             : 1.0;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = noise.kind == NoiseKind::Gaussian
                           ? rng.next_gaussian()
                           : t_scale * rng.next_student_t(noise.dof);
    y[i] = mu[i] + noise.sigma * eps;
  }
  return {std::move(mu),
          Sample{std::move(y), noise.sigma * noise.sigma}};
}

ExperimentResult run_phase_transition(const ExperimentConfig& config,
                                      int threads) {
  validate_common(config);
  if (config.signal.kind != SignalKind::Zero)
    throw ConfigError("phase_transition requires a zero signal");

  std::vector<PenaltySpec> grid;
  for (const auto& spec : config.criterion_grid) {
    if (spec.family != PenaltyFamily::BirgeMassart &&
        spec.family != PenaltyFamily::Fdr)
      throw ConfigError("phase_transition criteria must be birge_massart or fdr");
    grid.push_back(spec);
  }
  for (double C : config.sweep.C)
    grid.push_back(PenaltySpec::birge_massart(C, 0.0));
  if (grid.empty())
    throw ConfigError("phase_transition needs a birge_massart grid (criterion_grid or sweep.C)");

  const std::size_t n = config.signal.n;
  const double sigma2 = config.noise.sigma * config.noise.sigma;
  // BM penalties degenerate toward pen ~ 0 as k -> n; the argmin is kept in
  // k <= n/2 where the log factor is active.
  const std::size_t k_cap = n / 2;

  struct ReplicaOut {
    std::vector<long> k_hat;
    std::vector<double> risk;
    double oracle_risk = 0.0;
  };
  std::vector<ReplicaOut> out(config.replicas);

  parallel_for(config.replicas, threads, [&](std::size_t r) {
    auto [mu, sample] = generate(config.signal, config.noise,
                                 derive_stream(config.seed, r));
    const auto stats = abs_order_statistics(sample);
    const auto hard_rss = hard_rss_curve(stats);
    const double total = hard_rss[0];

    ReplicaOut& slot = out[r];
    slot.oracle_risk = total;
    for (std::size_t k = 0; k <= n; ++k)
      slot.oracle_risk = std::min(slot.oracle_risk, total - hard_rss[k]);
    for (const auto& spec : grid) {
      const auto curve = criterion_curve(sample, stats, sigma2, spec);
      std::size_t best = 0;
      for (std::size_t k = 1; k <= k_cap; ++k)
        if (curve.values[k] < curve.values[best]) best = k;
      slot.k_hat.push_back(static_cast<long>(best));
      slot.risk.push_back(total - hard_rss[best]);
    }
  });

  ExperimentResult result;
  result.name = config.name;
  for (std::size_t r = 0; r < config.replicas; ++r) {
    for (std::size_t ci = 0; ci < grid.size(); ++ci) {
      ReportRow row;
      row.experiment = config.name;
      row.replica = r;
      row.parameters = {{"C", format_double(grid[ci].C)},
                        {"Cprime", format_double(grid[ci].Cprime)}};
      row.k_hat = out[r].k_hat[ci];
      row.risk = out[r].risk[ci];
      row.oracle_risk = out[r].oracle_risk;
      result.rows.push_back(std::move(row));
    }
  }

  result.summary = base_summary(config);
  result.summary["k_max_searched"] = k_cap;
  ordered_json per_c = ordered_json::array();
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    std::vector<double> ks;
    ks.reserve(config.replicas);
    for (std::size_t r = 0; r < config.replicas; ++r)
      ks.push_back(static_cast<double>(out[r].k_hat[ci]));
    ordered_json entry;
    entry["C"] = grid[ci].C;
    entry["Cprime"] = grid[ci].Cprime;
    entry["median_k_hat"] = median_of(ks);
    entry["mean_k_hat"] = mean_of(ks);
    entry["p90_k_hat"] = percentile_of(ks, 0.9);
    per_c.push_back(std::move(entry));
  }
  result.summary["per_criterion"] = std::move(per_c);
  return result;
}

ExperimentResult run_oracle_ratio(const ExperimentConfig& config, int threads) {
  validate_common(config);
  if (config.criterion_grid.empty())
    throw ConfigError("oracle_ratio needs a non-empty criterion_grid");
  const bool has_cp = std::any_of(
      config.criterion_grid.begin(), config.criterion_grid.end(),
      [](const PenaltySpec& s) { return s.family == PenaltyFamily::MallowsCp; });
  if (!has_cp)
    throw ConfigError("oracle_ratio criteria must include mallows_cp");

  const double sigma2 = config.noise.sigma * config.noise.sigma;
  const auto& grid = config.criterion_grid;
  const bool needs_soft_oracle = true;
  const bool needs_hard_oracle = std::any_of(
      grid.begin(), grid.end(),
      [](const PenaltySpec& s) { return s.family != PenaltyFamily::MallowsCp; });

  struct ReplicaOut {
    std::vector<long> k_hat;
    std::vector<double> risk;
    std::vector<double> oracle;
  };
  std::vector<ReplicaOut> out(config.replicas);

  parallel_for(config.replicas, threads, [&](std::size_t r) {
    auto [mu, sample] = generate(config.signal, config.noise,
                                 derive_stream(config.seed, r));
    double soft_oracle = 0.0, hard_oracle = 0.0;
    if (needs_soft_oracle) {
      const auto risks = path_risk_curve(sample, mu, ThresholdKind::Soft);
      soft_oracle = *std::min_element(risks.begin(), risks.end());
    }
    if (needs_hard_oracle) {
      const auto risks = path_risk_curve(sample, mu, ThresholdKind::Hard);
      hard_oracle = *std::min_element(risks.begin(), risks.end());
    }
    ReplicaOut& slot = out[r];
    for (const auto& spec : grid) {
      const auto selection = select_k(sample, sigma2, spec);
      slot.k_hat.push_back(static_cast<long>(selection.k_hat));
      slot.risk.push_back(squared_distance(selection.estimate.values, mu));
      slot.oracle.push_back(spec.family == PenaltyFamily::MallowsCp
                                ? soft_oracle
                                : hard_oracle);
    }
  });

  ExperimentResult result;
  result.name = config.name;
  for (std::size_t r = 0; r < config.replicas; ++r) {
    for (std::size_t ci = 0; ci < grid.size(); ++ci) {
      ReportRow row;
      row.experiment = config.name;
      row.replica = r;
      row.parameters = {{"criterion", family_name(grid[ci])},
                        {"C", format_double(grid[ci].C)},
                        {"Cprime", format_double(grid[ci].Cprime)}};
      row.k_hat = out[r].k_hat[ci];
      row.risk = out[r].risk[ci];
      row.oracle_risk = out[r].oracle[ci];
      result.rows.push_back(std::move(row));
    }
  }

  result.summary = base_summary(config);
  ordered_json per_criterion = ordered_json::array();
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    std::vector<double> risks, oracles;
    for (std::size_t r = 0; r < config.replicas; ++r) {
      risks.push_back(out[r].risk[ci]);
      oracles.push_back(out[r].oracle[ci]);
    }
    const double mean_risk = mean_of(risks);
    const double mean_oracle = mean_of(oracles);
    ordered_json entry;
    entry["criterion"] = family_name(grid[ci]);
    entry["mean_risk"] = mean_risk;
    entry["mean_oracle_risk"] = mean_oracle;
    if (mean_oracle > 0.0)
      entry["risk_ratio"] = mean_risk / mean_oracle;
    else
      entry["risk_ratio"] = nullptr;
    per_criterion.push_back(std::move(entry));
  }
  result.summary["per_criterion"] = std::move(per_criterion);
  return result;
}

ExperimentResult run_variance_validation(const ExperimentConfig& config,
                                         int threads) {
  validate_common(config);
  const double sigma2_true = config.noise.sigma * config.noise.sigma;
  const double f_lo = config.window_frac.first;
  const double f_hi = config.window_frac.second;
  if (!(f_lo > 0.0 && f_lo < f_hi && f_hi <= 1.0))
    throw ConfigError("window_frac must satisfy 0 < lo < hi <= 1");
  if (!(config.alpha > 0.0)) throw ConfigError("alpha must be > 0");

  struct ReplicaOut {
    double sigma2_hat = 0.0;
    long k_dd = -1;
    long k_known = 0;
    double risk = std::numeric_limits<double>::quiet_NaN();
    double oracle_risk = 0.0;
    bool degenerate = false;
  };
  std::vector<ReplicaOut> out(config.replicas);

  parallel_for(config.replicas, threads, [&](std::size_t r) {
    auto [mu, sample] = generate(config.signal, config.noise,
                                 derive_stream(config.seed, r));
    ReplicaOut& slot = out[r];

    const SlopeFit fit = estimate_sigma2(sample, config.alpha, f_lo, f_hi);
    slot.sigma2_hat = fit.sigma2_hat;

    const auto soft_risks = path_risk_curve(sample, mu, ThresholdKind::Soft);
    slot.oracle_risk = *std::min_element(soft_risks.begin(), soft_risks.end());

    const auto known =
        select_k(sample, sigma2_true, PenaltySpec::mallows_cp());
    slot.k_known = static_cast<long>(known.k_hat);

    if (fit.sigma2_hat > 0.0) {
      const auto selection =
          select_k(sample, fit.sigma2_hat, PenaltySpec::mallows_cp());
      slot.k_dd = static_cast<long>(selection.k_hat);
      slot.risk = squared_distance(selection.estimate.values, mu);
    } else {
      slot.degenerate = true;
    }
  });

  ExperimentResult result;
  result.name = config.name;
  for (std::size_t r = 0; r < config.replicas; ++r) {
    const ReplicaOut& slot = out[r];
    ReportRow row;
    row.experiment = config.name;
    row.replica = r;
    row.parameters = {{"sigma2_true", format_double(sigma2_true)},
                      {"k_hat_known", std::to_string(slot.k_known)},
                      {"degenerate", slot.degenerate ? "1" : "0"}};
    row.k_hat = slot.k_dd;
    row.risk = slot.risk;
    row.oracle_risk = slot.oracle_risk;
    row.sigma2_hat = slot.sigma2_hat;
    result.rows.push_back(std::move(row));
  }

  std::vector<double> ratio, k_dd, k_known;
  std::size_t degenerate_count = 0;
  for (const auto& slot : out) {
    ratio.push_back(slot.sigma2_hat / sigma2_true);
    k_known.push_back(static_cast<double>(slot.k_known));
    if (slot.degenerate)
      ++degenerate_count;
    else
      k_dd.push_back(static_cast<double>(slot.k_dd));
  }
  result.summary = base_summary(config);
  result.summary["alpha"] = config.alpha;
  result.summary["window_frac"] = {f_lo, f_hi};
  result.summary["mean_sigma2_ratio"] = mean_of(ratio);
  result.summary["bias_sigma2_ratio"] = mean_of(ratio) - 1.0;
  result.summary["sd_sigma2_ratio"] = sd_of(ratio);
  result.summary["degenerate_count"] = degenerate_count;
  result.summary["median_k_hat_data_driven"] =
      k_dd.empty() ? ordered_json(nullptr) : ordered_json(median_of(k_dd));
  result.summary["median_k_hat_known_sigma"] = median_of(k_known);
  return result;
}

ExperimentResult run_threshold_law(const ExperimentConfig& config, int threads) {
  validate_common(config);
  if (config.signal.kind != SignalKind::Zero)
    throw ConfigError("threshold_law requires a zero signal");
  if (config.sweep.n.empty() || config.sweep.k.empty())
    throw ConfigError("threshold_law needs non-empty sweep.n and sweep.k");

  const double sigma2 = config.noise.sigma * config.noise.sigma;
  ExperimentResult result;
  result.name = config.name;

  std::size_t point = 0;
  for (std::size_t n : config.sweep.n) {
    for (std::size_t k : config.sweep.k) {
      if (k >= n)
        throw ConfigError("threshold_law sweep needs k < n at every grid point");
      result.tail_rows.push_back(threshold_law_check(
          n, k, config.replicas, sigma2, derive_stream(config.seed, point),
          threads));
      ++point;
    }
  }

  result.summary = base_summary(config);
  ordered_json points = ordered_json::array();
  for (const auto& row : result.tail_rows) {
    ordered_json entry;
    entry["n"] = row.n;
    entry["k"] = row.k;
    entry["mc_mean"] = row.mc_mean;
    entry["plug_in"] = row.plug_in;
    entry["log_approx"] = row.log_approx;
    entry["mc_over_plug_in"] = row.mc_mean / row.plug_in;
    entry["mc_over_log_approx"] = row.mc_mean / row.log_approx;
    points.push_back(std::move(entry));
  }
  result.summary["grid"] = std::move(points);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int threads) {
  if (config.name == "phase_transition")
    return run_phase_transition(config, threads);
  if (config.name == "oracle_ratio") return run_oracle_ratio(config, threads);
  if (config.name == "variance_validation")
    return run_variance_validation(config, threads);
  if (config.name == "threshold_law") return run_threshold_law(config, threads);
  throw ConfigError("unknown experiment name '" + config.name + "'");
}

namespace {

void check_keys(const ordered_json& obj,
                std::initializer_list<std::string_view> allowed,
                const std::string& context) {
  if (!obj.is_object())
    throw ConfigError(context + " must be a JSON object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw ConfigError("unknown key '" + item.key() + "' in " + context);
  }
}

const ordered_json& require_key(const ordered_json& obj, const char* key,
                                const std::string& context) {
  if (!obj.contains(key))
    throw ConfigError("missing key '" + std::string(key) + "' in " + context);
  return obj.at(key);
}

std::uint64_t get_u64(const ordered_json& obj, const char* key,
                      const std::string& context) {
  const auto& v = require_key(obj, key, context);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ConfigError(context + "." + key + " must be an integer");
  if (v.is_number_integer() && v.get<std::int64_t>() < 0)
    throw ConfigError(context + "." + key + " must be >= 0");
  return v.get<std::uint64_t>();
}

double get_num(const ordered_json& obj, const char* key,
               const std::string& context) {
  const auto& v = require_key(obj, key, context);
  if (!v.is_number()) throw ConfigError(context + "." + key + " must be a number");
  return v.get<double>();
}

std::string get_str(const ordered_json& obj, const char* key,
                    const std::string& context) {
  const auto& v = require_key(obj, key, context);
  if (!v.is_string()) throw ConfigError(context + "." + key + " must be a string");
  return v.get<std::string>();
}

SignalSpec parse_signal(const ordered_json& j) {
  SignalSpec spec;
  const std::string kind = get_str(j, "kind", "signal");
  if (kind == "zero") {
    check_keys(j, {"kind", "n"}, "signal");
    spec.kind = SignalKind::Zero;
  } else if (kind == "sparse") {
    check_keys(j, {"kind", "n", "s", "amplitude"}, "signal");
    spec.kind = SignalKind::Sparse;
    spec.s = static_cast<std::size_t>(get_u64(j, "s", "signal"));
    spec.amplitude = get_num(j, "amplitude", "signal");
  } else if (kind == "rho_ball") {
    check_keys(j, {"kind", "n", "rho", "M"}, "signal");
    spec.kind = SignalKind::RhoBall;
    spec.rho = get_num(j, "rho", "signal");
    spec.M = get_num(j, "M", "signal");
  } else {
    throw ConfigError("signal.kind must be zero, sparse or rho_ball");
  }
  spec.n = static_cast<std::size_t>(get_u64(j, "n", "signal"));
  return spec;
}

NoiseSpec parse_noise(const ordered_json& j) {
  NoiseSpec spec;
  const std::string kind = get_str(j, "kind", "noise");
  if (kind == "gaussian") {
    check_keys(j, {"kind", "sigma"}, "noise");
    spec.kind = NoiseKind::Gaussian;
  } else if (kind == "student_t") {
    check_keys(j, {"kind", "sigma", "dof"}, "noise");
    spec.kind = NoiseKind::StudentT;
    spec.dof = get_num(j, "dof", "noise");
  } else {
    throw ConfigError("noise.kind must be gaussian or student_t");
  }
  spec.sigma = get_num(j, "sigma", "noise");
  return spec;
}

PenaltySpec parse_penalty(const ordered_json& j, std::size_t index) {
  const std::string context = "criterion_grid[" + std::to_string(index) + "]";
  const std::string family = get_str(j, "family", context);
  if (family == "mallows_cp") {
    check_keys(j, {"family"}, context);
    return PenaltySpec::mallows_cp();
  }
  if (family == "birge_massart") {
    check_keys(j, {"family", "C", "Cprime"}, context);
    return PenaltySpec::birge_massart(get_num(j, "C", context),
                                      get_num(j, "Cprime", context));
  }
  if (family == "fdr") {
    check_keys(j, {"family", "Cprime"}, context);
    return PenaltySpec::fdr(get_num(j, "Cprime", context));
  }
  if (family == "random_soft") {
    check_keys(j, {"family"}, context);
    return PenaltySpec::random_soft();
  }
  if (family == "custom_table") {
    check_keys(j, {"family", "values"}, context);
    const auto& values = require_key(j, "values", context);
    if (!values.is_array()) throw ConfigError(context + ".values must be an array");
    std::vector<double> table;
    for (const auto& v : values) {
      if (!v.is_number())
        throw ConfigError(context + ".values entries must be numbers");
      table.push_back(v.get<double>());
    }
    return PenaltySpec::custom_table(std::move(table));
  }
  throw ConfigError(context + ".family '" + family + "' is not recognized");
}

SweepSpec parse_sweep(const ordered_json& j) {
  check_keys(j, {"n", "C", "k"}, "sweep");
  SweepSpec sweep;
  const auto parse_list = [&](const char* key, auto& dest, auto convert) {
    if (!j.contains(key)) return;
    const auto& arr = j.at(key);
    if (!arr.is_array() || arr.empty())
      throw ConfigError(std::string("sweep.") + key + " must be a non-empty array");
    for (const auto& v : arr) {
      if (!v.is_number())
        throw ConfigError(std::string("sweep.") + key + " entries must be numbers");
      dest.push_back(convert(v));
    }
  };
  parse_list("n", sweep.n, [](const ordered_json& v) {
    return static_cast<std::size_t>(v.get<std::uint64_t>());
  });
  parse_list("C", sweep.C,
             [](const ordered_json& v) { return v.get<double>(); });
  parse_list("k", sweep.k, [](const ordered_json& v) {
    return static_cast<std::size_t>(v.get<std::uint64_t>());
  });
  return sweep;
}

}  // namespace

ExperimentConfig load_experiment_config(const ordered_json& json) {
  check_keys(json,
             {"name", "signal", "noise", "replicas", "seed", "criterion_grid",
              "sweep", "alpha", "window_frac", "output_path"},
             "config");
  ExperimentConfig config;
  config.name = get_str(json, "name", "config");
  config.signal = parse_signal(require_key(json, "signal", "config"));
  config.noise = parse_noise(require_key(json, "noise", "config"));
  config.replicas = static_cast<std::size_t>(get_u64(json, "replicas", "config"));

  const auto& seed = require_key(json, "seed", "config");
  check_keys(seed, {"master_seed", "stream_id"}, "seed");
  config.seed.master_seed = get_u64(seed, "master_seed", "seed");
  config.seed.stream_id =
      seed.contains("stream_id") ? get_u64(seed, "stream_id", "seed") : 0;

  if (json.contains("criterion_grid")) {
    const auto& grid = json.at("criterion_grid");
    if (!grid.is_array() || grid.empty())
      throw ConfigError("criterion_grid must be a non-empty array");
    for (std::size_t i = 0; i < grid.size(); ++i)
      config.criterion_grid.push_back(parse_penalty(grid[i], i));
  }
  if (json.contains("sweep")) {
    config.sweep = parse_sweep(json.at("sweep"));
    if (config.sweep.empty()) throw ConfigError("sweep must not be empty");
  }
  if (json.contains("alpha")) config.alpha = get_num(json, "alpha", "config");
  if (json.contains("window_frac")) {
    const auto& w = json.at("window_frac");
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
      throw ConfigError("window_frac must be an array of two numbers");
    config.window_frac = {w[0].get<double>(), w[1].get<double>()};
  }
  if (json.contains("output_path"))
    config.output_path = get_str(json, "output_path", "config");
  return config;
}

ExperimentConfig load_experiment_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  ordered_json json;
  try {
    json = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return load_experiment_config(json);
}

std::string rows_to_csv(const ExperimentResult& result) {
  if (!result.tail_rows.empty()) {
    std::string out = tail_report_csv_header() + "\n";
    for (const auto& row : result.tail_rows)
      out += tail_report_csv_row(row) + "\n";
    return out;
  }

  bool has_sigma2 = false;
  for (const auto& row : result.rows)
    if (row.sigma2_hat) has_sigma2 = true;

  std::vector<std::string> header = {"experiment", "replica"};
  if (!result.rows.empty())
    for (const auto& [key, value] : result.rows.front().parameters)
      header.push_back(key);
  header.insert(header.end(), {"k_hat", "risk", "oracle_risk"});
  if (has_sigma2) header.push_back("sigma2_hat");

  CsvWriter writer(header);
  for (const auto& row : result.rows) {
    std::vector<std::string> fields = {row.experiment,
                                       std::to_string(row.replica)};
    for (const auto& [key, value] : row.parameters) fields.push_back(value);
    fields.push_back(std::to_string(row.k_hat));
    fields.push_back(std::isnan(row.risk) ? "" : format_double(row.risk));
    fields.push_back(format_double(row.oracle_risk));
    if (has_sigma2)
      fields.push_back(row.sigma2_hat ? format_double(*row.sigma2_hat) : "");
    writer.append_row(fields);
  }
  return writer.str();
}

OutputPaths write_experiment_outputs(const ExperimentResult& result,
                                     const std::string& dir) {
  const std::string base = dir.empty() ? "." : dir;
  std::filesystem::create_directories(base);
  OutputPaths paths;
  paths.rows_csv = base + "/" + result.name + "_rows.csv";
  paths.summary_json = base + "/" + result.name + "_summary.json";
  write_text_file(paths.rows_csv, rows_to_csv(result));
  write_text_file(paths.summary_json, result.summary.dump(2) + "\n");
  return paths;
}

}  // namespace orthosel
