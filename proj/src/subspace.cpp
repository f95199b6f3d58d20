#include "mcsense/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace mcsense {

EigenSplit eigensplit(const CMatrix& r) {
  require(r.rows() == r.cols() && r.rows() > 0, "eigensplit: matrix must be square and nonempty");
  require(r.allFinite(), "eigensplit: non-finite entries");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(r, Eigen::ComputeEigenvectors);
  require(solver.info() == Eigen::Success, "eigensplit: eigensolver did not converge");

  // Eigen returns ascending order.
  const Eigen::Index p = r.rows();
  EigenSplit out{RVector(p), CMatrix(p, p)};
  for (Eigen::Index j = 0; j < p; ++j) {
    out.eigenvalues(j) = solver.eigenvalues()(p - 1 - j);
    out.eigenvectors.col(j) = solver.eigenvectors().col(p - 1 - j);
  }
  return out;
}

EigenSplit eigensplit(const CorrelationEstimate& r) { return eigensplit(r.r_hat); }

int mdl_order(std::span<const double> eigenvalues, Eigen::Index num_snapshots, int max_order) {
  const auto p = static_cast<int>(eigenvalues.size());
  require(p >= 2, "mdl_order: need at least two eigenvalues");
  require(max_order >= 0 && max_order < p, "mdl_order: need 0 <= N_max < p");
  require(num_snapshots >= 2, "mdl_order: need at least two snapshots");
  for (int i = 0; i < p; ++i) {
    require(std::isfinite(eigenvalues[i]), "mdl_order: non-finite eigenvalue");
    require(i == 0 || eigenvalues[i] <= eigenvalues[i - 1], "mdl_order: eigenvalues must be descending");
  }
  if (eigenvalues[0] <= 0.0) return 0;

  const double floor = kMdlEigenFloor * eigenvalues[0];
  std::vector<double> logs(static_cast<std::size_t>(p));
  std::vector<double> clamped(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    clamped[i] = std::max(eigenvalues[i], floor);
    logs[i] = std::log(clamped[i]);
  }

  const double log_m = std::log(static_cast<double>(num_snapshots));
  const auto m = static_cast<double>(num_snapshots);
  int best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (int r = 0; r <= max_order; ++r) {
    const int tail = p - r;
    const double log_geo = std::accumulate(logs.begin() + r, logs.end(), 0.0) / tail;
    const double arith = std::accumulate(clamped.begin() + r, clamped.end(), 0.0) / tail;
    const double score = -m * tail * (log_geo - std::log(arith)) + 0.5 * r * (2.0 * p - r) * log_m;
    if (score < best_score) {
      best_score = score;
      best = r;
    }
  }
  return best;
}

std::vector<double> music_pseudospectrum(const EigenSplit& split, int n_hat,
                                         const CosetPattern& pattern) {
  const Eigen::Index p = split.eigenvectors.rows();
  require(p == pattern.num_cosets(), "music_pseudospectrum: pattern size does not match R");
  require(n_hat >= 0, "music_pseudospectrum: negative order");
  require(n_hat < p, "music_pseudospectrum: N_hat >= p leaves an empty noise subspace");

  const auto noise = split.eigenvectors.rightCols(p - n_hat);
  std::vector<double> out(static_cast<std::size_t>(pattern.num_channels()));
  for (int k = 0; k < pattern.num_channels(); ++k) {
    const CVector a = steering_vector(pattern, k);
    const double denom = (a.adjoint() * noise).squaredNorm();
    out[static_cast<std::size_t>(k)] = 1.0 / std::max(denom, kMusicDenominatorFloor);
  }
  return out;
}

std::vector<int> recover_active_set(std::span<const double> pseudospectrum, int n_hat) {
  require(n_hat >= 0 && n_hat <= static_cast<int>(pseudospectrum.size()),
          "recover_active_set: need 0 <= N_hat <= L");
  std::vector<int> idx(pseudospectrum.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return pseudospectrum[a] > pseudospectrum[b]; });
  idx.resize(static_cast<std::size_t>(n_hat));
  std::sort(idx.begin(), idx.end());
  return idx;
}

DetectionResult detect(const CorrelationEstimate& r, const CosetPattern& pattern,
                       Eigen::Index num_snapshots, int max_active) {
  const EigenSplit split = eigensplit(r);
  std::vector<double> eig(split.eigenvalues.data(),
                          split.eigenvalues.data() + split.eigenvalues.size());
  DetectionResult out;
  out.n_hat = mdl_order(eig, num_snapshots, max_active);
  out.pseudospectrum = music_pseudospectrum(split, out.n_hat, pattern);
  out.b_hat = recover_active_set(out.pseudospectrum, out.n_hat);
  out.eigenvalues = std::move(eig);
  return out;
}

}  // namespace mcsense
