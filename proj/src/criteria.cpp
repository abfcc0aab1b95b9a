#include <algorithm>
#include <string>

#include "jsrec/error.hpp"
#include "jsrec/linalg.hpp"
#include "jsrec/mmv.hpp"
#include "jsrec/recovery.hpp"
#include "recovery_internal.hpp"

namespace jsrec {

namespace detail {

double resolve_tol(const RecoveryOptions& opts, Eigen::Index rows, Eigen::Index cols) {
  return opts.rank_tol.value_or(linalg::default_rank_tol(rows, cols));
}

void check_indices(std::span<const int> idx, int n, const char* who) {
  std::vector<int> sorted(idx.begin(), idx.end());
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          std::string(who) + ": duplicate indices");
  require(sorted.empty() || (sorted.front() >= 0 && sorted.back() < n), std::string(who) + ": index out of range");
}

std::vector<IndexScore> music_scores(const Matrix& A, const Matrix& U) {
  const Vector res = linalg::residual_sq_norms(U, A);
  std::vector<IndexScore> out;
  out.reserve(static_cast<std::size_t>(A.cols()));
  for (Eigen::Index j = 0; j < A.cols(); ++j) out.push_back({static_cast<int>(j), res(j)});
  return out;
}

std::vector<IndexScore> gmusic_scores(const Matrix& A, const Matrix& U, std::span<const int> partial, double tol) {
  const int n = static_cast<int>(A.cols());
  check_indices(partial, n, "generalized_music_stats");

  Matrix W = U;
  if (!partial.empty()) {
    // G = P_Q A_I; range(U) and range(G) are orthogonal and together span [B A_I].
    Matrix G = linalg::select_columns(A, partial);
    for (int pass = 0; pass < 2; ++pass) G -= U * (U.transpose() * G);
    if (linalg::numerical_rank(G, tol) < static_cast<int>(partial.size()))
      throw recovery_error("left-RIP violated: projected partial support is rank deficient");
    W = linalg::hstack(U, linalg::orthonormal_basis(G, tol));
  }

  const Vector res = linalg::residual_sq_norms(W, A);
  std::vector<bool> excluded(static_cast<std::size_t>(n), false);
  for (int i : partial) excluded[static_cast<std::size_t>(i)] = true;
  std::vector<IndexScore> out;
  for (int j = 0; j < n; ++j)
    if (!excluded[static_cast<std::size_t>(j)]) out.push_back({j, res(j)});
  return out;
}

std::vector<IndexScore> fit_scores(const Matrix& A, const Matrix& U, std::span<const int> candidates, double tol) {
  const int n = static_cast<int>(A.cols());
  check_indices(candidates, n, "subspace_fit_stats");
  const Eigen::Index width = U.cols() + static_cast<Eigen::Index>(candidates.size()) - 1;
  if (width > A.rows()) throw precondition_error("augmented basis exceeds ambient dimension");

  std::vector<IndexScore> out;
  out.reserve(candidates.size());
  std::vector<int> others;
  for (int j : candidates) {
    others.clear();
    for (int i : candidates)
      if (i != j) others.push_back(i);
    const Matrix M = linalg::hstack(U, linalg::select_columns(A, others));
    const Matrix W = linalg::orthonormal_basis(M, tol);
    out.push_back({j, linalg::residual_sq_norm(W, A.col(j))});
  }
  return out;
}

}  // namespace detail

using detail::require;

std::vector<int> smallest_by_score(std::vector<IndexScore> scores, int count) {
  require(count >= 0 && count <= static_cast<int>(scores.size()), "smallest_by_score: count out of range");
  std::stable_sort(scores.begin(), scores.end(), [](const IndexScore& a, const IndexScore& b) {
    return a.score < b.score || (a.score == b.score && a.index < b.index);
  });
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(scores[static_cast<std::size_t>(i)].index);
  return out;
}

NoiseSubspaceBasis noise_subspace(const Matrix& B, int r_eff, const RecoveryOptions& opts) {
  const Eigen::Index m = B.rows();
  require(r_eff >= 1 && r_eff < m, "noise_subspace: need 1 <= r_eff < m");
  require(B.cols() == r_eff, "noise_subspace: B must have exactly r_eff columns");
  const double tol = detail::resolve_tol(opts, m, B.cols());
  Eigen::JacobiSVD<Matrix> svd(B, Eigen::ComputeFullU);
  const Vector& s = svd.singularValues();
  if (s(0) <= 0.0 || s(r_eff - 1) <= tol * s(0))
    detail::fail_precondition("noise_subspace: B is rank deficient; canonicalize first");
  return NoiseSubspaceBasis{svd.matrixU().rightCols(m - r_eff)};
}

SupportEstimate music(const Matrix& A, const Matrix& B, int k, const RecoveryOptions& opts) {
  const int m = static_cast<int>(A.rows());
  require(B.rows() == A.rows(), "music: A and B row counts differ");
  require(k >= 1 && k < m, "music: need 1 <= k < m");
  const double tol = detail::resolve_tol(opts, m, B.cols());
  const CanonicalProblem canon = canonicalize(B, tol, k);
  if (canon.r_eff < k) throw recovery_error("MUSIC requires full-rank snapshots; use cs_music");

  auto scores = detail::music_scores(A, canon.basis);
  SupportEstimate est;
  for (const auto& s : scores) est.criterion_values[s.index] = s.score;
  est.support = SupportSet(smallest_by_score(std::move(scores), k));
  return est;
}

std::vector<IndexScore> generalized_music_stats(const Matrix& A, const Matrix& B, const PartialSupport& partial,
                                                const RecoveryOptions& opts) {
  require(B.rows() == A.rows(), "generalized_music_stats: A and B row counts differ");
  const double tol = detail::resolve_tol(opts, A.rows(), B.cols());
  const CanonicalProblem canon = canonicalize(B, tol);
  require(canon.r_eff + static_cast<int>(partial.indices.size()) < A.rows(),
          "generalized_music_stats: r + |partial| must be below m");
  return detail::gmusic_scores(A, canon.basis, partial.indices, tol);
}

std::vector<IndexScore> subspace_fit_stats(const Matrix& A, const Matrix& B, std::span<const int> candidates,
                                           const RecoveryOptions& opts) {
  require(B.rows() == A.rows(), "subspace_fit_stats: A and B row counts differ");
  require(!candidates.empty(), "subspace_fit_stats: empty candidate set");
  const double tol = detail::resolve_tol(opts, A.rows(), B.cols());
  const CanonicalProblem canon = canonicalize(B, tol);
  return detail::fit_scores(A, canon.basis, candidates, tol);
}

}  // namespace jsrec
