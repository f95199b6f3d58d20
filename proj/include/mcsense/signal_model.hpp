#pragma once

#include <cstdint>
#include <vector>

#include "mcsense/types.hpp"

namespace mcsense {

/// How a per-channel SNR in dB maps to signal power.
enum class SnrConvention {
  /// Channel signal power over the total noise variance sigma_w^2. This is the
  /// SNR seen by each snapshot entry after the fractional-shift chain.
  kTotalNoise,
  /// Channel signal power over the noise power inside one channel, sigma_w^2 / L.
  kInBand,
};

/// The wideband scene in normalized units: channel bandwidth B = 1, Nyquist rate L.
struct MultibandSpec {
  int num_channels = 32;                ///< L
  std::vector<int> active_set;          ///< b, strictly increasing
  double omega_max = 0.25;              ///< maximum occupancy N_max / L
  double snr_db = 0.0;                  ///< equal for every active channel
  int record_snapshots = 64;            ///< M_total, samples per coset sequence
  double noise_variance = 1.0;          ///< sigma_w^2; 0 gives a noiseless record
  SnrConvention snr_convention = SnrConvention::kTotalNoise;

  int num_active() const { return static_cast<int>(active_set.size()); }
  int max_active() const;
  int record_length() const { return record_snapshots * num_channels; }

  /// Power of each active channel's signal component, in the same units as noise_variance.
  /// The reference noise level is 1 when the record is noiseless.
  double channel_signal_power() const;

  /// Throws InvalidArgument on any invariant violation.
  void validate() const;
};

/// Nyquist-rate record x[n], n = 0 .. M_total*L - 1.
struct NyquistRecord {
  ComplexVector samples;
  MultibandSpec spec;
  std::uint64_t seed = 0;
};

NyquistRecord generate(const MultibandSpec& spec, std::uint64_t seed);

/// Per-channel average power from the full-record DFT. Channel k owns bins
/// [k*M_total, (k+1)*M_total). The entries sum to the mean power of the record.
std::vector<double> true_band_powers(const NyquistRecord& record);

/// Splits a record into its L channel components, each demodulated to baseband and
/// sampled at the low rate: row k, column m holds the channel-k part of x at n = mL.
/// These are the sources s_k(m) of the snapshot model x_d(m) = A s(m).
CMatrix channel_components(const NyquistRecord& record);

}  // namespace mcsense
