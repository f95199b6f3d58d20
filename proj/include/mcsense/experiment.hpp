#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcsense/multicoset.hpp"
#include "mcsense/signal_model.hpp"
#include "mcsense/subspace.hpp"

namespace mcsense {

enum class PatternMode { kFixed, kPerTrial };

struct ExperimentConfig {
  int num_channels = 32;  ///< L
  double omega_max = 0.25;
  int num_cosets = 10;  ///< p
  std::vector<int> active_set{8, 16, 17, 18, 29, 30};
  int num_active = 6;  ///< N; equals active_set.size() unless the set is randomized
  bool randomize_active_set = false;
  std::vector<double> snr_grid_db{-2.0, 0.0, 1.0, 3.0};
  std::vector<int> m_grid{11, 21, 31, 41, 51, 61};
  int trials = 1000;
  std::uint64_t base_seed = 1;
  PatternMode pattern_mode = PatternMode::kFixed;
  std::optional<std::vector<int>> pattern;  ///< explicit offsets for the fixed mode
  double noise_variance = 1.0;
  SnrConvention snr_convention = SnrConvention::kTotalNoise;

  int max_active() const;
  void validate() const;

  /// The experiment-wide pattern: explicit offsets if given, else drawn from base_seed.
  CosetPattern fixed_pattern() const;
};

struct TrialOutcome {
  int trial = 0;
  std::uint64_t seed = 0;
  int m = 0;
  double snr_db = 0.0;
  std::vector<int> pattern;
  std::vector<int> true_set;
  int n_hat = 0;
  std::vector<int> b_hat;
  bool order_correct = false;
  int hits = 0;
  int false_alarms = 0;
};

struct GridCellMetrics {
  int m = 0;
  double snr_db = 0.0;
  int trials = 0;
  double pr_order = 0.0;
  double pd = 0.0;  ///< mean of hits / N
  double pf = 0.0;  ///< mean of false_alarms / (L - N)
  // Per-channel forms: conditional detection frequencies averaged over channels.
  double pd_per_channel = 0.0;
  double pf_per_channel = 0.0;
};

/// Everything a single end-to-end run produces, for diagnostics and the CLI dumps.
struct ScenarioRun {
  std::uint64_t seed = 0;
  CosetPattern pattern;
  std::vector<int> true_set;
  CorrelationEstimate correlation;
  DetectionResult detection;
};

std::uint64_t trial_seed(const ExperimentConfig& cfg, int m, double snr_db, int trial_index);

/// generate -> sample -> fractional_shift -> sample_correlation -> detect, for one trial tuple.
ScenarioRun run_scenario(const ExperimentConfig& cfg, int m, double snr_db, int trial_index);

TrialOutcome run_trial(const ExperimentConfig& cfg, int m, double snr_db, int trial_index);

GridCellMetrics aggregate(std::span<const TrialOutcome> outcomes, int num_channels);

struct GridResult {
  std::vector<GridCellMetrics> cells;  ///< M-major, then SNR, in config order
  std::vector<TrialOutcome> trials;    ///< cell order, then trial index
};

/// Runs every (M, SNR) cell. Output does not depend on `threads`.
GridResult run_grid(const ExperimentConfig& cfg, unsigned threads = 1);

/// `M,snr_db,trials,pr_order,pd,pf,pattern,seed`, 6 significant digits.
void write_grid_csv(std::ostream& out, const ExperimentConfig& cfg, const GridResult& result);

/// `trial,M,snr_db,n_hat,b_hat,hits,false_alarms` with b_hat semicolon-joined.
void write_trial_csv(std::ostream& out, const GridResult& result);

std::string format_g6(double v);

}  // namespace mcsense
