#include "mcsense/multicoset.hpp"

#include <algorithm>
#include <numeric>

#include "mcsense/rng.hpp"

namespace mcsense {

CosetPattern::CosetPattern(int num_channels, std::vector<int> offsets)
    : num_channels_(num_channels), offsets_(std::move(offsets)) {
  require(num_channels_ >= 1, "CosetPattern: L must be positive");
  require(!offsets_.empty() && static_cast<int>(offsets_.size()) <= num_channels_,
          "CosetPattern: need 1 <= p <= L offsets");
  std::sort(offsets_.begin(), offsets_.end());
  require(std::adjacent_find(offsets_.begin(), offsets_.end()) == offsets_.end(),
          "CosetPattern: offsets must be distinct");
  require(offsets_.front() >= 0 && offsets_.back() < num_channels_,
          "CosetPattern: offsets must lie in [0, L-1]");
}

std::string CosetPattern::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(offsets_[i]);
  }
  return out;
}

CosetPattern random_pattern(int num_channels, int num_cosets, std::uint64_t seed) {
  require(num_channels >= 1, "random_pattern: L must be positive");
  require(num_cosets >= 1 && num_cosets <= num_channels, "random_pattern: need 1 <= p <= L");
  std::vector<int> all(static_cast<std::size_t>(num_channels));
  std::iota(all.begin(), all.end(), 0);
  // partial Fisher-Yates
  Rng rng(seed);
  for (int i = 0; i < num_cosets; ++i) {
    std::uniform_int_distribution<int> pick(i, num_channels - 1);
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick(rng))]);
  }
  all.resize(static_cast<std::size_t>(num_cosets));
  return CosetPattern(num_channels, std::move(all));
}

CosetSequences sample(const NyquistRecord& record, const CosetPattern& pattern) {
  const int L = record.spec.num_channels;
  require(pattern.num_channels() == L, "sample: pattern L does not match the record's L");
  const auto n = static_cast<Eigen::Index>(record.samples.size());
  require(n > 0 && n % L == 0, "sample: record length must be a positive multiple of L");
  const Eigen::Index cols = n / L;

  CMatrix data(pattern.num_cosets(), cols);
  for (int i = 0; i < pattern.num_cosets(); ++i) {
    const int c = pattern.offsets()[static_cast<std::size_t>(i)];
    for (Eigen::Index m = 0; m < cols; ++m) {
      data(i, m) = record.samples[static_cast<std::size_t>(m * L + c)];
    }
  }
  return CosetSequences{std::move(data), pattern};
}

}  // namespace mcsense
