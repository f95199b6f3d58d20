#include <doctest.h>

#include <algorithm>

#include "mcsense/multicoset.hpp"

using namespace mcsense;

namespace {

NyquistRecord make_record(int L, ComplexVector samples) {
  NyquistRecord r;
  r.spec.num_channels = L;
  r.spec.record_snapshots = static_cast<int>(samples.size()) / L;
  r.samples = std::move(samples);
  return r;
}

}  // namespace

TEST_CASE("random_pattern draws a sorted distinct subset") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto pat = random_pattern(32, 10, seed);
    const auto& c = pat.offsets();
    REQUIRE(c.size() == 10u);
    CHECK(std::is_sorted(c.begin(), c.end()));
    CHECK(std::adjacent_find(c.begin(), c.end()) == c.end());
    CHECK(c.front() >= 0);
    CHECK(c.back() <= 31);
  }
  CHECK(random_pattern(32, 10, 7) == random_pattern(32, 10, 7));
  CHECK(random_pattern(4, 4, 123).offsets() == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS_AS(random_pattern(4, 5, 1), InvalidArgument);
  CHECK_THROWS_AS(random_pattern(4, 0, 1), InvalidArgument);
}

TEST_CASE("random_pattern covers every offset over many seeds") {
  std::vector<int> hits(32, 0);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto pat = random_pattern(32, 10, seed);
    for (int c : pat.offsets()) ++hits[static_cast<std::size_t>(c)];
  }
  // each offset is kept with probability 10/32: expected 625 of 2000
  for (int h : hits) CHECK(std::abs(h - 625) < 120);
}

TEST_CASE("CosetPattern validation and formatting") {
  CHECK_THROWS_AS(CosetPattern(8, {1, 1}), InvalidArgument);
  CHECK_THROWS_AS(CosetPattern(8, {8}), InvalidArgument);
  CHECK_THROWS_AS(CosetPattern(8, {}), InvalidArgument);
  const CosetPattern pat(32, {7, 0, 3});
  CHECK(pat.offsets() == std::vector<int>{0, 3, 7});
  CHECK(pat.to_string() == "0,3,7");
  CHECK(pat.alpha() == doctest::Approx(3.0 / 32.0));
}

TEST_CASE("sample indexes x[mL + c_i]") {
  const Complex a{1, 0}, b{2, 0}, c{3, 0}, d{4, 0};
  const auto rec = make_record(2, {a, b, c, d});

  const auto even = sample(rec, CosetPattern(2, {0}));
  REQUIRE(even.data.rows() == 1);
  REQUIRE(even.data.cols() == 2);
  CHECK(even.data(0, 0) == a);
  CHECK(even.data(0, 1) == c);

  const auto odd = sample(rec, CosetPattern(2, {1}));
  CHECK(odd.data(0, 0) == b);
  CHECK(odd.data(0, 1) == d);
}

TEST_CASE("sampling rate matches the sub-Nyquist factor") {
  ComplexVector samples(3200);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = Complex(static_cast<double>(i), -1.0);
  const auto rec = make_record(32, samples);
  const auto pat = random_pattern(32, 10, 42);
  const auto seqs = sample(rec, pat);
  CHECK(seqs.data.rows() == 10);
  CHECK(seqs.data.cols() == 100);
  CHECK(seqs.data.size() == 1000);
  CHECK(pat.alpha() == doctest::Approx(0.3125));
  CHECK(static_cast<double>(seqs.data.size()) / 3200.0 == pat.alpha());

  // lossless restriction: every entry is the original sample, bit for bit
  for (int i = 0; i < 10; ++i)
    for (int m = 0; m < 100; ++m)
      CHECK(seqs.data(i, m) == samples[static_cast<std::size_t>(m * 32 + pat.offsets()[static_cast<std::size_t>(i)])]);
}

TEST_CASE("sample rejects a pattern for a different L") {
  const auto rec = make_record(4, ComplexVector(16));
  CHECK_THROWS_AS(sample(rec, CosetPattern(8, {0, 1})), InvalidArgument);
}
