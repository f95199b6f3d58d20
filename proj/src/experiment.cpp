#include "mcsense/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <ostream>
#include <thread>

#include "mcsense/corr.hpp"
#include "mcsense/rng.hpp"
#include "mcsense/shift_chain.hpp"

namespace mcsense {
namespace {

// stream tags for derive_seed
constexpr std::uint64_t kPatternStream = 0x7061747465726eULL;
constexpr std::uint64_t kSignalStream = 1;
constexpr std::uint64_t kActiveSetStream = 2;
constexpr std::uint64_t kTrialPatternStream = 3;

std::vector<int> random_subset(int n, int k, std::uint64_t seed) {
  return random_pattern(n, k, seed).offsets();
}

int count_in(const std::vector<int>& sorted, const std::vector<int>& values) {
  int hits = 0;
  for (int v : values) hits += std::binary_search(sorted.begin(), sorted.end(), v) ? 1 : 0;
  return hits;
}

std::string join(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int ExperimentConfig::max_active() const {
  return static_cast<int>(std::lround(omega_max * num_channels));
}

void ExperimentConfig::validate() const {
  require(num_channels >= 2, "L must be at least 2");
  require(omega_max > 0.0 && omega_max <= 1.0, "omega_max must lie in (0, 1]");
  require(num_cosets >= 1 && num_cosets <= num_channels, "p must lie in [1, L]");
  require(num_cosets > max_active(),
          "p = " + std::to_string(num_cosets) + " violates p > N_max = " + std::to_string(max_active()));
  require(static_cast<double>(num_cosets) / num_channels >= omega_max,
          "sub-Nyquist factor p/L is below omega_max");
  require(num_active >= 0 && num_active <= max_active(),
          "N = " + std::to_string(num_active) + " must lie in [0, N_max = " +
              std::to_string(max_active()) + "]");
  if (!randomize_active_set) {
    require(static_cast<int>(active_set.size()) == num_active,
            "active_set size does not match num_active");
    for (std::size_t i = 0; i < active_set.size(); ++i) {
      require(active_set[i] >= 0 && active_set[i] < num_channels, "active_set index outside [0, L-1]");
      require(i == 0 || active_set[i - 1] < active_set[i],
              "active_set must be strictly increasing without duplicates");
    }
  }
  require(!snr_grid_db.empty(), "snr_grid_db must be nonempty");
  for (double s : snr_grid_db) require(std::isfinite(s), "snr_grid_db entries must be finite");
  require(!m_grid.empty(), "M_grid must be nonempty");
  for (int m : m_grid) require(m >= 1, "every M in M_grid must be at least 1");
  require(trials >= 1, "trials must be at least 1");
  require(noise_variance >= 0.0 && std::isfinite(noise_variance),
          "noise_variance must be finite and non-negative");
  if (pattern) {
    require(pattern_mode == PatternMode::kFixed, "an explicit pattern requires pattern_mode \"fixed\"");
    require(static_cast<int>(pattern->size()) == num_cosets, "pattern must list exactly p offsets");
    CosetPattern(num_channels, *pattern);
  }
}

CosetPattern ExperimentConfig::fixed_pattern() const {
  if (pattern) return CosetPattern(num_channels, *pattern);
  return random_pattern(num_channels, num_cosets, derive_seed({base_seed, kPatternStream}));
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, int m, double snr_db, int trial_index) {
  return derive_seed({cfg.base_seed, static_cast<std::uint64_t>(m), seed_bits(snr_db),
                      static_cast<std::uint64_t>(trial_index)});
}

ScenarioRun run_scenario(const ExperimentConfig& cfg, int m, double snr_db, int trial_index) {
  const std::uint64_t seed = trial_seed(cfg, m, snr_db, trial_index);
  try {
    CosetPattern pattern = cfg.pattern_mode == PatternMode::kFixed
                               ? cfg.fixed_pattern()
                               : random_pattern(cfg.num_channels, cfg.num_cosets,
                                                derive_seed({seed, kTrialPatternStream}));
    std::vector<int> active = cfg.randomize_active_set
                                  ? random_subset(cfg.num_channels, cfg.num_active,
                                                  derive_seed({seed, kActiveSetStream}))
                                  : cfg.active_set;
    if (cfg.num_active == 0) active.clear();

    MultibandSpec spec;
    spec.num_channels = cfg.num_channels;
    spec.active_set = active;
    spec.omega_max = cfg.omega_max;
    spec.snr_db = snr_db;
    spec.record_snapshots = m;
    spec.noise_variance = cfg.noise_variance;
    spec.snr_convention = cfg.snr_convention;

    const NyquistRecord record = generate(spec, derive_seed({seed, kSignalStream}));
    const SnapshotMatrix snaps = fractional_shift(sample(record, pattern));
    CorrelationEstimate corr = sample_correlation(snaps);
    DetectionResult det = detect(corr, pattern, snaps.num_snapshots(), cfg.max_active());
    return ScenarioRun{seed, std::move(pattern), std::move(active), std::move(corr), std::move(det)};
  } catch (const std::exception& e) {
    throw InvalidArgument("trial (M=" + std::to_string(m) + ", snr_db=" + format_g6(snr_db) +
                          ", index=" + std::to_string(trial_index) + "): " + e.what());
  }
}

TrialOutcome run_trial(const ExperimentConfig& cfg, int m, double snr_db, int trial_index) {
  ScenarioRun run = run_scenario(cfg, m, snr_db, trial_index);
  TrialOutcome out;
  out.trial = trial_index;
  out.seed = run.seed;
  out.m = m;
  out.snr_db = snr_db;
  out.pattern = run.pattern.offsets();
  out.true_set = std::move(run.true_set);
  out.n_hat = run.detection.n_hat;
  out.b_hat = std::move(run.detection.b_hat);
  out.order_correct = out.n_hat == static_cast<int>(out.true_set.size());
  out.hits = count_in(out.true_set, out.b_hat);
  out.false_alarms = static_cast<int>(out.b_hat.size()) - out.hits;
  return out;
}

GridCellMetrics aggregate(std::span<const TrialOutcome> outcomes, int num_channels) {
  require(!outcomes.empty(), "aggregate: empty cell");
  require(num_channels >= 1, "aggregate: L must be positive");
  GridCellMetrics cell;
  cell.m = outcomes.front().m;
  cell.snr_db = outcomes.front().snr_db;
  cell.trials = static_cast<int>(outcomes.size());

  const auto L = static_cast<std::size_t>(num_channels);
  std::vector<int> active_count(L, 0), active_hit(L, 0), vacant_count(L, 0), vacant_hit(L, 0);
  int order_ok = 0, pd_trials = 0, pf_trials = 0;
  double pd_sum = 0.0, pf_sum = 0.0;
  for (const auto& t : outcomes) {
    require(t.m == cell.m && t.snr_db == cell.snr_db, "aggregate: cell mixes different (M, SNR)");
    const int n = static_cast<int>(t.true_set.size());
    order_ok += t.order_correct ? 1 : 0;
    if (n > 0) {
      pd_sum += static_cast<double>(t.hits) / n;
      ++pd_trials;
    }
    if (n < num_channels) {
      pf_sum += static_cast<double>(t.false_alarms) / (num_channels - n);
      ++pf_trials;
    }
    for (int k = 0; k < num_channels; ++k) {
      const bool active = std::binary_search(t.true_set.begin(), t.true_set.end(), k);
      const bool detected = std::binary_search(t.b_hat.begin(), t.b_hat.end(), k);
      auto& count = active ? active_count : vacant_count;
      auto& hit = active ? active_hit : vacant_hit;
      ++count[static_cast<std::size_t>(k)];
      hit[static_cast<std::size_t>(k)] += detected ? 1 : 0;
    }
  }
  // With no active (vacant) channel anywhere in the cell, Pd (Pf) is vacuous: 1 (0).
  cell.pr_order = static_cast<double>(order_ok) / cell.trials;
  cell.pd = pd_trials ? pd_sum / pd_trials : 1.0;
  cell.pf = pf_trials ? pf_sum / pf_trials : 0.0;

  auto per_channel = [&](const std::vector<int>& count, const std::vector<int>& hit, double empty) {
    double sum = 0.0;
    int used = 0;
    for (std::size_t k = 0; k < L; ++k) {
      if (count[k] == 0) continue;
      sum += static_cast<double>(hit[k]) / count[k];
      ++used;
    }
    return used ? sum / used : empty;
  };
  cell.pd_per_channel = per_channel(active_count, active_hit, 1.0);
  cell.pf_per_channel = per_channel(vacant_count, vacant_hit, 0.0);
  return cell;
}

GridResult run_grid(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  struct Cell {
    int m;
    double snr;
  };
  std::vector<Cell> cells;
  for (int m : cfg.m_grid)
    for (double s : cfg.snr_grid_db) cells.push_back({m, s});

  const std::size_t per_cell = static_cast<std::size_t>(cfg.trials);
  const std::size_t total = cells.size() * per_cell;
  std::vector<TrialOutcome> outcomes(total);
  std::vector<std::exception_ptr> errors(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const Cell& c = cells[i / per_cell];
      try {
        outcomes[i] = run_trial(cfg, c.m, c.snr, static_cast<int>(i % per_cell));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::max<std::size_t>(total, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }
  // Report the first failure in task order so the error is reproducible too.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  GridResult result;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    result.cells.push_back(aggregate(
        std::span<const TrialOutcome>(outcomes.data() + c * per_cell, per_cell), cfg.num_channels));
  }
  result.trials = std::move(outcomes);
  return result;
}

void write_grid_csv(std::ostream& out, const ExperimentConfig& cfg, const GridResult& result) {
  const std::string pattern = cfg.pattern_mode == PatternMode::kFixed
                                  ? "\"" + cfg.fixed_pattern().to_string() + "\""
                                  : std::string("per_trial");
  out << "M,snr_db,trials,pr_order,pd,pf,pattern,seed\n";
  for (const auto& c : result.cells) {
    out << c.m << ',' << format_g6(c.snr_db) << ',' << c.trials << ',' << format_g6(c.pr_order) << ','
        << format_g6(c.pd) << ',' << format_g6(c.pf) << ',' << pattern << ',' << cfg.base_seed << '\n';
  }
}

void write_trial_csv(std::ostream& out, const GridResult& result) {
  out << "trial,M,snr_db,n_hat,b_hat,hits,false_alarms\n";
  for (const auto& t : result.trials) {
    out << t.trial << ',' << t.m << ',' << format_g6(t.snr_db) << ',' << t.n_hat << ','
        << join(t.b_hat, ';') << ',' << t.hits << ',' << t.false_alarms << '\n';
  }
}

}  // namespace mcsense
