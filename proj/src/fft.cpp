#include "mcsense/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace mcsense::fft {
namespace {

// The FFTW planner is not thread-safe; plan execution on new arrays is.
fftw_plan plan_for(int len, int sign) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(len, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  ComplexVector scratch(static_cast<std::size_t>(len));
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_1d(len, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  require(plan != nullptr, "fft: planner failed");
  cache.emplace(key, plan);
  return plan;
}

void execute(std::span<Complex> data, int sign) {
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_for(static_cast<int>(data.size()), sign), buf, buf);
}

}  // namespace

void forward(std::span<Complex> data) { execute(data, FFTW_FORWARD); }

void inverse(std::span<Complex> data) {
  execute(data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

}  // namespace mcsense::fft
