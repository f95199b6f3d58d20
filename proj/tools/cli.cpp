#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mcsense/config.hpp"
#include "mcsense/corr.hpp"
#include "mcsense/experiment.hpp"
#include "mcsense/multicoset.hpp"
#include "mcsense/shift_chain.hpp"
#include "mcsense/subspace.hpp"

namespace mcsense::cli {
namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::optional<int> m;
  std::optional<double> snr;
  int trial = 0;
  std::string record;
  std::string trials_out;
  std::string audit_out;
};

// Writes to --out when given, else to the command's stdout stream.
void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + opt.out);
  f << text;
}

ExperimentConfig load(const Options& opt) {
  ExperimentConfig cfg = parse_config(opt.config);
  if (opt.seed) cfg.base_seed = *opt.seed;
  return cfg;
}

int scenario_m(const Options& opt, const ExperimentConfig& cfg) {
  return opt.m ? *opt.m : *std::max_element(cfg.m_grid.begin(), cfg.m_grid.end());
}

double scenario_snr(const Options& opt, const ExperimentConfig& cfg) {
  return opt.snr ? *opt.snr : cfg.snr_grid_db.back();
}

std::string join(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

ComplexVector read_record_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open record file " + path);
  ComplexVector samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || (lineno == 1 && line.rfind("re", 0) == 0)) continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(ls >> re >> comma >> im) || comma != ',')
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected \"re,im\"");
    samples.emplace_back(re, im);
  }
  return samples;
}

std::string cmd_grid(const Options& opt) {
  const ExperimentConfig cfg = load(opt);
  const GridResult result = run_grid(cfg, opt.threads);
  if (!opt.trials_out.empty()) {
    std::ofstream f(opt.trials_out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open trial log " + opt.trials_out);
    write_trial_csv(f, result);
  }
  if (!opt.audit_out.empty()) {
    std::ofstream f(opt.audit_out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open audit file " + opt.audit_out);
    f << "M,snr_db,pd,pf,pd_per_channel,pf_per_channel\n";
    for (const auto& c : result.cells) {
      f << c.m << ',' << format_g6(c.snr_db) << ',' << format_g6(c.pd) << ',' << format_g6(c.pf) << ','
        << format_g6(c.pd_per_channel) << ',' << format_g6(c.pf_per_channel) << '\n';
    }
  }
  std::ostringstream ss;
  write_grid_csv(ss, cfg, result);
  return ss.str();
}

std::string cmd_sense(const Options& opt) {
  const ExperimentConfig cfg = load(opt);
  std::ostringstream ss;
  if (opt.record.empty()) {
    const ScenarioRun run = run_scenario(cfg, scenario_m(opt, cfg), scenario_snr(opt, cfg), opt.trial);
    ss << "n_hat,b_hat,true_set,pattern\n"
       << run.detection.n_hat << ',' << join(run.detection.b_hat, ';') << ','
       << join(run.true_set, ';') << ',' << join(run.pattern.offsets(), ';') << '\n';
    return ss.str();
  }

  NyquistRecord record;
  record.samples = read_record_csv(opt.record);
  const auto L = static_cast<std::size_t>(cfg.num_channels);
  if (record.samples.empty() || record.samples.size() % L != 0)
    throw std::runtime_error("record length must be a positive multiple of L = " + std::to_string(L));
  record.spec.num_channels = cfg.num_channels;
  record.spec.record_snapshots = static_cast<int>(record.samples.size() / L);
  const CosetPattern pattern = cfg.fixed_pattern();
  const SnapshotMatrix snaps = fractional_shift(sample(record, pattern));
  const DetectionResult det =
      detect(sample_correlation(snaps), pattern, snaps.num_snapshots(), cfg.max_active());
  ss << "n_hat,b_hat,true_set,pattern\n"
     << det.n_hat << ',' << join(det.b_hat, ';') << ",," << join(pattern.offsets(), ';') << '\n';
  return ss.str();
}

std::string cmd_eigens(const Options& opt) {
  const ExperimentConfig cfg = load(opt);
  const ScenarioRun run = run_scenario(cfg, scenario_m(opt, cfg), scenario_snr(opt, cfg), opt.trial);
  std::ostringstream ss;
  ss << "index,eigenvalue_db\n";
  const auto& eig = run.detection.eigenvalues;
  for (std::size_t i = 0; i < eig.size(); ++i) {
    // non-positive eigenvalues only arise from rounding in rank-deficient R
    const double floor = kMdlEigenFloor * std::max(eig.front(), 0.0);
    ss << (i + 1) << ',' << format_g6(10.0 * std::log10(std::max({eig[i], floor, 1e-300}))) << '\n';
  }
  return ss.str();
}

std::string cmd_pseudospectrum(const Options& opt) {
  const ExperimentConfig cfg = load(opt);
  const ScenarioRun run = run_scenario(cfg, scenario_m(opt, cfg), scenario_snr(opt, cfg), opt.trial);
  std::ostringstream ss;
  ss << "channel,p_mu\n";
  const auto& pmu = run.detection.pseudospectrum;
  for (std::size_t k = 0; k < pmu.size(); ++k) ss << k << ',' << format_g6(pmu[k]) << '\n';
  return ss.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sub-Nyquist multicoset wideband spectrum sensing simulator", "mcsense"};
  app.require_subcommand(1, 1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output path (default: stdout)");
    sub->add_option("--seed", opt.seed, "override base_seed");
  };
  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--m", opt.m, "snapshot count M (default: largest in M_grid)")->check(CLI::PositiveNumber);
    sub->add_option("--snr", opt.snr, "SNR in dB (default: last entry of snr_grid_db)");
    sub->add_option("--trial", opt.trial, "trial index selecting the RNG stream")->check(CLI::NonNegativeNumber);
  };

  auto* grid = app.add_subcommand("grid", "Monte Carlo grid over M and SNR");
  add_common(grid);
  grid->add_option("--threads", opt.threads, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  grid->add_option("--trials-out", opt.trials_out, "per-trial CSV log");
  grid->add_option("--audit-out", opt.audit_out, "per-channel Pd/Pf audit CSV");

  auto* sense = app.add_subcommand("sense", "single end-to-end detection");
  add_common(sense);
  add_scenario(sense);
  sense->add_option("--record", opt.record, "Nyquist-rate record CSV (re,im per line) instead of a generated one")
      ->check(CLI::ExistingFile);

  auto* eigens = app.add_subcommand("eigens", "ordered eigenvalues of R_hat in dB");
  add_common(eigens);
  add_scenario(eigens);

  auto* pmu = app.add_subcommand("pseudospectrum", "MUSIC pseudospectrum P_MU(k)");
  add_common(pmu);
  add_scenario(pmu);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    std::string text;
    if (grid->parsed()) text = cmd_grid(opt);
    else if (sense->parsed()) text = cmd_sense(opt);
    else if (eigens->parsed()) text = cmd_eigens(opt);
    else text = cmd_pseudospectrum(opt);
    emit(opt, out, text);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace mcsense::cli
