#include "mcsense/corr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

namespace mcsense {

CorrelationEstimate sample_correlation(const CMatrix& snapshots) {
  const Eigen::Index M = snapshots.cols();
  require(M >= 1, "sample_correlation: zero snapshots");
  require(snapshots.rows() >= 1, "sample_correlation: empty snapshot vectors");
  CMatrix r = (snapshots * snapshots.adjoint()) / static_cast<double>(M);
  CMatrix sym = (r + r.adjoint()) * 0.5;
  return CorrelationEstimate{std::move(sym), M};
}

CorrelationEstimate sample_correlation(const SnapshotMatrix& snaps) {
  return sample_correlation(snaps.data);
}

CVector steering_vector(const CosetPattern& pattern, int channel) {
  const int L = pattern.num_channels();
  require(channel >= 0 && channel < L, "steering_vector: channel outside [0, L-1]");
  CVector a(pattern.num_cosets());
  for (int i = 0; i < pattern.num_cosets(); ++i) {
    // reduce c*k mod L first so the phase argument stays exact
    const int turns = (pattern.offsets()[static_cast<std::size_t>(i)] * channel) % L;
    a(i) = std::polar(1.0, 2.0 * std::numbers::pi * turns / L);
  }
  return a;
}

ModulationMatrix build_modulation_matrix(const CosetPattern& pattern, std::vector<int> active_set) {
  require(!active_set.empty(), "build_modulation_matrix: active set must be nonempty");
  std::sort(active_set.begin(), active_set.end());
  require(std::adjacent_find(active_set.begin(), active_set.end()) == active_set.end(),
          "build_modulation_matrix: repeated channel index in active set");
  CMatrix a(pattern.num_cosets(), static_cast<Eigen::Index>(active_set.size()));
  for (std::size_t k = 0; k < active_set.size(); ++k) {
    a.col(static_cast<Eigen::Index>(k)) = steering_vector(pattern, active_set[k]);
  }
  return ModulationMatrix{std::move(a), pattern, std::move(active_set)};
}

bool identifiable(const CosetPattern& pattern, const std::vector<int>& active_set, double tol) {
  if (active_set.empty()) return true;
  const CMatrix a = build_modulation_matrix(pattern, active_set).a;
  auto full_rank = [tol](const CMatrix& m) {
    if (m.cols() > m.rows()) return false;
    return Eigen::JacobiSVD<CMatrix>(m).singularValues().minCoeff() > tol;
  };
  if (!full_rank(a)) return false;
  CMatrix aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  for (int k = 0; k < pattern.num_channels(); ++k) {
    if (std::find(active_set.begin(), active_set.end(), k) != active_set.end()) continue;
    aug.col(a.cols()) = steering_vector(pattern, k);
    if (!full_rank(aug)) return false;
  }
  return true;
}

CMatrix analytic_correlation(const ModulationMatrix& a, const CMatrix& source_corr, double sigma2) {
  const Eigen::Index n = a.a.cols();
  require(source_corr.rows() == n && source_corr.cols() == n,
          "analytic_correlation: source correlation must be N x N");
  require(sigma2 >= 0.0, "analytic_correlation: negative noise variance");
  CMatrix r = a.a * source_corr * a.a.adjoint();
  r.diagonal().array() += sigma2;
  return (r + r.adjoint()) * 0.5;
}

CMatrix analytic_correlation(const ModulationMatrix& a, const std::vector<double>& powers,
                             double sigma2) {
  require(static_cast<Eigen::Index>(powers.size()) == a.a.cols(),
          "analytic_correlation: need one power per active channel");
  CMatrix p = CMatrix::Zero(a.a.cols(), a.a.cols());
  for (std::size_t k = 0; k < powers.size(); ++k) {
    require(powers[k] > 0.0, "analytic_correlation: channel powers must be positive");
    p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = powers[k];
  }
  return analytic_correlation(a, p, sigma2);
}

}  // namespace mcsense
