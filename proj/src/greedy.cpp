#include <algorithm>
#include <string>

#include "jsrec/error.hpp"
#include "jsrec/linalg.hpp"
#include "jsrec/mmv.hpp"
#include "jsrec/recovery.hpp"
#include "recovery_internal.hpp"

namespace jsrec {

using detail::require;

namespace {

// argmax over unchosen indices; ties resolve to the smallest index.
int argmax_unchosen(const Vector& scores, const std::vector<bool>& chosen) {
  int best = -1;
  for (Eigen::Index j = 0; j < scores.size(); ++j) {
    if (chosen[static_cast<std::size_t>(j)]) continue;
    if (best < 0 || scores(j) > scores(best)) best = static_cast<int>(j);
  }
  return best;
}

void check_greedy_args(const Matrix& A, const Matrix& Y, int steps, const char* who) {
  require(A.rows() == Y.rows(), std::string(who) + ": A and Y row counts differ");
  require(steps >= 0, std::string(who) + ": negative step count");
  require(steps <= A.rows() && steps <= A.cols(), std::string(who) + ": more steps than rows or columns of A");
}

}  // namespace

PartialSupport somp(const Matrix& A, const Matrix& Y, int steps) {
  check_greedy_args(A, Y, steps, "somp");
  const double tol = linalg::default_rank_tol(A.rows(), A.cols());
  PartialSupport out;
  std::vector<bool> chosen(static_cast<std::size_t>(A.cols()), false);
  Matrix W(A.rows(), 0);  // orthonormal basis of span(A_I)
  for (int t = 0; t < steps; ++t) {
    const Matrix R = W.cols() ? Matrix(Y - W * (W.transpose() * Y)) : Y;
    const Vector scores = (A.transpose() * R).rowwise().squaredNorm();
    const int j = argmax_unchosen(scores, chosen);
    chosen[static_cast<std::size_t>(j)] = true;
    out.indices.push_back(j);
    out.scores.push_back(scores(j));
    linalg::append_orthonormal(W, A.col(j), tol);
  }
  return out;
}

PartialSupport subspace_somp(const Matrix& A, const Matrix& Y, int steps, const RecoveryOptions& opts,
                             CollapsePolicy policy) {
  check_greedy_args(A, Y, steps, "subspace_somp");
  PartialSupport out;
  if (steps == 0) return out;

  const double tol = detail::resolve_tol(opts, A.rows(), Y.cols());
  const CanonicalProblem canon = canonicalize(Y, tol);
  const Matrix& U = canon.basis;
  if (policy == CollapsePolicy::raise)
    require(steps <= A.rows() - canon.r_eff, "subspace_somp: steps must not exceed m - r");

  std::vector<bool> chosen(static_cast<std::size_t>(A.cols()), false);
  Matrix W(A.rows(), 0);
  for (int t = 0; t < steps; ++t) {
    Matrix P = U;
    for (int pass = 0; pass < 2 && W.cols() > 0; ++pass) P -= W * (W.transpose() * P);
    // U is orthonormal, so singular values of P lie in [0, 1]; an absolute
    // threshold is scale-free here.
    const Matrix V = linalg::orthonormal_basis_abs(P, tol);
    if (V.cols() < canon.r_eff && policy == CollapsePolicy::raise)
      throw recovery_error("snapshot collapse: projected measurements lost rank at step " + std::to_string(t + 1));
    const Vector scores = V.cols() ? Vector((A.transpose() * V).rowwise().squaredNorm()) : Vector::Zero(A.cols());
    const int j = argmax_unchosen(scores, chosen);
    chosen[static_cast<std::size_t>(j)] = true;
    out.indices.push_back(j);
    out.scores.push_back(scores(j));
    linalg::append_orthonormal(W, A.col(j), tol);
  }
  return out;
}

PartialSupport two_thresholding(const Matrix& A, const Matrix& Y, int count) {
  require(A.rows() == Y.rows(), "two_thresholding: A and Y row counts differ");
  require(count >= 0 && count <= A.cols(), "two_thresholding: count out of range");
  const Vector norms = (A.transpose() * Y).rowwise().norm();
  std::vector<int> order(static_cast<std::size_t>(A.cols()));
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return norms(a) > norms(b); });
  PartialSupport out;
  for (int i = 0; i < count; ++i) {
    const int j = order[static_cast<std::size_t>(i)];
    out.indices.push_back(j);
    out.scores.push_back(norms(j));
  }
  return out;
}

std::string_view step1_name(Step1 s) {
  switch (s) {
    case Step1::somp: return "somp";
    case Step1::subspace_somp: return "ssomp";
    case Step1::two_thresholding: return "thresh2";
  }
  return "somp";
}

Step1 parse_step1(std::string_view tag) {
  if (tag == "somp") return Step1::somp;
  if (tag == "ssomp") return Step1::subspace_somp;
  if (tag == "thresh2") return Step1::two_thresholding;
  detail::fail_precondition("unknown step-1 solver '" + std::string(tag) + "' (expected somp, ssomp, thresh2)");
}

Step1Solver make_step1(Step1 s, const RecoveryOptions& opts) {
  switch (s) {
    case Step1::somp:
      return [](const Matrix& A, const Matrix& Y, int steps) { return somp(A, Y, steps); };
    case Step1::subspace_somp:
      return [opts](const Matrix& A, const Matrix& Y, int steps) {
        return subspace_somp(A, Y, steps, opts, CollapsePolicy::shrink);
      };
    case Step1::two_thresholding:
      return [](const Matrix& A, const Matrix& Y, int steps) { return two_thresholding(A, Y, steps); };
  }
  return {};
}

}  // namespace jsrec
