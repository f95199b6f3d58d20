#pragma once

#include <vector>

#include "mcsense/multicoset.hpp"
#include "mcsense/types.hpp"

namespace mcsense {

/// p x M snapshot matrix; column m is the snapshot vector x_d(m).
struct SnapshotMatrix {
  CMatrix data;
  CosetPattern pattern;

  Eigen::Index num_snapshots() const { return data.cols(); }
};

/// Binary DFT mask of the ideal one-sided lowpass passing [0, 1/L) of the band:
/// ones on bins [0, length/L), zeros elsewhere.
std::vector<int> ideal_filter_mask(int length, int num_channels);

/// Upsample by L, ideal lowpass, delay by c_i, downsample by L; applied to each coset row.
///
/// The whole record is processed circularly through the DFT, so the output keeps
/// all M_total columns and carries no filter transient. The interpolation filter
/// has passband gain L, which makes the chain the identity on a coset-0 row whose
/// content lies in channel 0, and gives x_d(m) = A(b) s(m) with unit-modulus A.
/// Output index m is aligned to upsampled index mL.
SnapshotMatrix fractional_shift(const CosetSequences& seqs);

}  // namespace mcsense
