#include "mcsense/signal_model.hpp"

#include <cmath>
#include <string>

#include "mcsense/fft.hpp"
#include "mcsense/rng.hpp"

namespace mcsense {

int MultibandSpec::max_active() const {
  return static_cast<int>(std::lround(omega_max * num_channels));
}

double MultibandSpec::channel_signal_power() const {
  const double ref = noise_variance > 0.0 ? noise_variance : 1.0;
  const double snr = std::pow(10.0, snr_db / 10.0);
  switch (snr_convention) {
    case SnrConvention::kInBand:
      return snr * ref / num_channels;
    case SnrConvention::kTotalNoise:
      break;
  }
  return snr * ref;
}

void MultibandSpec::validate() const {
  require(num_channels >= 2, "MultibandSpec: L must be at least 2");
  require(record_snapshots >= 1, "MultibandSpec: M_total must be at least 1");
  require(omega_max > 0.0 && omega_max <= 1.0, "MultibandSpec: omega_max must lie in (0, 1]");
  require(std::isfinite(snr_db), "MultibandSpec: snr_db must be finite");
  require(noise_variance >= 0.0 && std::isfinite(noise_variance),
          "MultibandSpec: noise_variance must be a finite non-negative number");
  require(num_active() <= max_active(),
          "MultibandSpec: " + std::to_string(num_active()) + " active channels exceeds N_max = " +
              std::to_string(max_active()));
  for (std::size_t i = 0; i < active_set.size(); ++i) {
    const int k = active_set[i];
    require(k >= 0 && k < num_channels,
            "MultibandSpec: active channel " + std::to_string(k) + " outside [0, L-1]");
    require(i == 0 || active_set[i - 1] < k,
            "MultibandSpec: active set must be strictly increasing (no duplicates)");
  }
}

NyquistRecord generate(const MultibandSpec& spec, std::uint64_t seed) {
  spec.validate();
  const auto L = static_cast<std::size_t>(spec.num_channels);
  const auto M = static_cast<std::size_t>(spec.record_snapshots);
  const std::size_t n = M * L;

  Rng rng(seed);
  ComplexVector spectrum(n, Complex{});

  // The brick-wall lowpass keeps 1/L of a white sequence's bins, so the
  // pre-filter variance is L times the target channel power.
  ComplexGaussian source(spec.channel_signal_power() * static_cast<double>(L));
  ComplexVector scratch(n);
  for (int band : spec.active_set) {
    for (auto& v : scratch) v = source(rng);
    fft::forward(scratch);
    // Lowpass to [0, B) then modulate to f_i = b_i * B: a shift of b_i * M_total bins.
    const std::size_t offset = static_cast<std::size_t>(band) * M;
    for (std::size_t q = 0; q < M; ++q) spectrum[offset + q] += scratch[q];
  }
  fft::inverse(spectrum);

  if (spec.noise_variance > 0.0) {
    ComplexGaussian noise(spec.noise_variance);
    for (auto& v : spectrum) v += noise(rng);
  }
  return NyquistRecord{std::move(spectrum), spec, seed};
}

std::vector<double> true_band_powers(const NyquistRecord& record) {
  const auto L = static_cast<std::size_t>(record.spec.num_channels);
  const std::size_t n = record.samples.size();
  require(n > 0 && n % L == 0, "true_band_powers: record length must be a positive multiple of L");
  const std::size_t M = n / L;

  ComplexVector spectrum = record.samples;
  fft::forward(spectrum);
  std::vector<double> powers(L, 0.0);
  const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  for (std::size_t k = 0; k < L; ++k) {
    double acc = 0.0;
    for (std::size_t q = k * M; q < (k + 1) * M; ++q) acc += std::norm(spectrum[q]);
    powers[k] = acc * norm;
  }
  return powers;
}

CMatrix channel_components(const NyquistRecord& record) {
  const auto L = static_cast<std::size_t>(record.spec.num_channels);
  const std::size_t n = record.samples.size();
  require(n > 0 && n % L == 0, "channel_components: record length must be a positive multiple of L");
  const std::size_t M = n / L;

  ComplexVector spectrum = record.samples;
  fft::forward(spectrum);
  CMatrix out(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(M));
  ComplexVector segment(M);
  for (std::size_t k = 0; k < L; ++k) {
    std::copy_n(spectrum.begin() + static_cast<std::ptrdiff_t>(k * M), M, segment.begin());
    fft::inverse(segment);
    for (std::size_t m = 0; m < M; ++m) {
      out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) =
          segment[m] / static_cast<double>(L);
    }
  }
  return out;
}

}  // namespace mcsense
