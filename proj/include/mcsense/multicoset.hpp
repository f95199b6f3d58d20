#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcsense/signal_model.hpp"
#include "mcsense/types.hpp"

namespace mcsense {

/// The p sampling offsets {c_i} out of every L Nyquist-grid samples.
class CosetPattern {
 public:
  /// Offsets must be distinct and lie in [0, L-1]; they are stored sorted.
  CosetPattern(int num_channels, std::vector<int> offsets);

  int num_channels() const { return num_channels_; }
  int num_cosets() const { return static_cast<int>(offsets_.size()); }
  const std::vector<int>& offsets() const { return offsets_; }

  /// Sub-Nyquist factor p / L.
  double alpha() const { return static_cast<double>(num_cosets()) / num_channels_; }

  /// Comma-joined offsets, e.g. "0,3,7".
  std::string to_string() const;

  bool operator==(const CosetPattern&) const = default;

 private:
  int num_channels_;
  std::vector<int> offsets_;
};

/// Uniformly random p-subset of {0..L-1}, reproducible for a fixed seed.
CosetPattern random_pattern(int num_channels, int num_cosets, std::uint64_t seed);

/// p x M_total coset sequences, row i holding x_i(m) = x[mL + c_i].
struct CosetSequences {
  CMatrix data;
  CosetPattern pattern;
};

CosetSequences sample(const NyquistRecord& record, const CosetPattern& pattern);

}  // namespace mcsense
