#pragma once

#include <span>

#include "mcsense/types.hpp"

namespace mcsense::fft {

// Unnormalized in-place DFT: X[q] = sum_n x[n] exp(-j 2 pi q n / len).
void forward(std::span<Complex> data);

// Inverse DFT including the 1/len factor, so inverse(forward(x)) == x.
void inverse(std::span<Complex> data);

}  // namespace mcsense::fft
