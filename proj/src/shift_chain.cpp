#include "mcsense/shift_chain.hpp"

#include <cmath>
#include <numbers>

#include "mcsense/fft.hpp"

namespace mcsense {

std::vector<int> ideal_filter_mask(int length, int num_channels) {
  require(num_channels >= 1, "ideal_filter_mask: L must be positive");
  require(length >= num_channels && length % num_channels == 0,
          "ideal_filter_mask: length must be a positive multiple of L");
  std::vector<int> mask(static_cast<std::size_t>(length), 0);
  std::fill_n(mask.begin(), length / num_channels, 1);
  return mask;
}

SnapshotMatrix fractional_shift(const CosetSequences& seqs) {
  const Eigen::Index p = seqs.data.rows();
  const Eigen::Index M = seqs.data.cols();
  require(p > 0 && M > 0, "fractional_shift: empty coset sequences");
  require(p == seqs.pattern.num_cosets(), "fractional_shift: row count does not match the pattern");
  require(seqs.data.allFinite(), "fractional_shift: non-finite input");

  const int L = seqs.pattern.num_channels();
  const Eigen::Index n = M * L;
  const auto mask = ideal_filter_mask(static_cast<int>(n), L);
  const double gain = static_cast<double>(L);

  CMatrix out(p, M);
  ComplexVector buf(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < p; ++i) {
    // zero-insertion upsampling
    std::fill(buf.begin(), buf.end(), Complex{});
    for (Eigen::Index m = 0; m < M; ++m) buf[static_cast<std::size_t>(m * L)] = seqs.data(i, m);

    fft::forward(buf);
    const double c = seqs.pattern.offsets()[static_cast<std::size_t>(i)];
    for (Eigen::Index q = 0; q < n; ++q) {
      auto& v = buf[static_cast<std::size_t>(q)];
      if (!mask[static_cast<std::size_t>(q)]) {
        v = Complex{};
        continue;
      }
      // circular delay by c samples at the upsampled rate
      const double phase = -2.0 * std::numbers::pi * static_cast<double>(q) * c / static_cast<double>(n);
      v *= gain * std::polar(1.0, phase);
    }
    fft::inverse(buf);

    for (Eigen::Index m = 0; m < M; ++m) out(i, m) = buf[static_cast<std::size_t>(m * L)];
  }
  return SnapshotMatrix{std::move(out), seqs.pattern};
}

}  // namespace mcsense
