#pragma once

#include <vector>

#include "mcsense/multicoset.hpp"
#include "mcsense/shift_chain.hpp"
#include "mcsense/types.hpp"

namespace mcsense {

/// p x p sample correlation matrix and the snapshot count it was built from.
struct CorrelationEstimate {
  CMatrix r_hat;
  Eigen::Index num_snapshots = 0;
};

/// (1/M) sum_m x_d(m) x_d(m)^H, symmetrized.
CorrelationEstimate sample_correlation(const SnapshotMatrix& snaps);
CorrelationEstimate sample_correlation(const CMatrix& snapshots);

/// A(b): entry (i, k) = exp(j 2 pi c_i b_k / L), columns following b ascending.
struct ModulationMatrix {
  CMatrix a;
  CosetPattern pattern;
  std::vector<int> active_set;
};

ModulationMatrix build_modulation_matrix(const CosetPattern& pattern, std::vector<int> active_set);

/// Steering vector a_k for channel k (the k-th column of the full p x L modulation matrix).
CVector steering_vector(const CosetPattern& pattern, int channel);

/// True when A(b) has full column rank and no vacant steering vector a_k lies in
/// its span, i.e. every [A(b), a_k] with k outside b has full column rank. Without
/// this, a vacant channel is indistinguishable from the active ones even with an
/// exact correlation matrix. `tol` bounds the smallest singular value.
bool identifiable(const CosetPattern& pattern, const std::vector<int>& active_set, double tol = 1e-8);

/// R = A diag(P) A^H + sigma2 I for uncorrelated bands.
CMatrix analytic_correlation(const ModulationMatrix& a, const std::vector<double>& powers,
                             double sigma2);

/// R = A P A^H + sigma2 I for a general Hermitian PSD source correlation P, used
/// when comparing against a realized (finite-record) source correlation.
CMatrix analytic_correlation(const ModulationMatrix& a, const CMatrix& source_corr, double sigma2);

}  // namespace mcsense
