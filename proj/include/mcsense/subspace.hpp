#pragma once

#include <span>
#include <vector>

#include "mcsense/corr.hpp"
#include "mcsense/multicoset.hpp"
#include "mcsense/types.hpp"

namespace mcsense {

/// Eigenvalues are clamped below at this fraction of the largest before MDL logs.
inline constexpr double kMdlEigenFloor = 1e-15;
/// Floor on the MUSIC denominator ||a_k^H E_n||^2.
inline constexpr double kMusicDenominatorFloor = 1e-30;

/// Hermitian eigendecomposition with eigenvalues sorted descending;
/// column j of `eigenvectors` pairs with eigenvalues(j).
struct EigenSplit {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

struct DetectionResult {
  int n_hat = 0;
  std::vector<double> pseudospectrum;  ///< P_MU(k), k = 0..L-1
  std::vector<int> b_hat;              ///< sorted ascending
  std::vector<double> eigenvalues;     ///< descending
};

EigenSplit eigensplit(const CMatrix& r);
EigenSplit eigensplit(const CorrelationEstimate& r);

/// Minimum description length estimate of the number of sources.
///
/// For each candidate order r in [0, max_order] the criterion
///   -M (p - r) log(g(r) / a(r)) + r (2p - r) log(M) / 2
/// is evaluated, where g and a are the geometric and arithmetic means of the
/// p - r smallest eigenvalues. Returns the minimizing r; ties go to the smaller r.
int mdl_order(std::span<const double> eigenvalues, Eigen::Index num_snapshots, int max_order);

/// P_MU(k) = 1 / ||a_k^H E_n||^2 for k = 0..L-1, where E_n holds the p - n_hat
/// eigenvectors of the smallest eigenvalues.
std::vector<double> music_pseudospectrum(const EigenSplit& split, int n_hat,
                                         const CosetPattern& pattern);

/// Indices of the n_hat largest values (ties toward the smaller index), sorted ascending.
std::vector<int> recover_active_set(std::span<const double> pseudospectrum, int n_hat);

DetectionResult detect(const CorrelationEstimate& r, const CosetPattern& pattern,
                       Eigen::Index num_snapshots, int max_active);

}  // namespace mcsense
