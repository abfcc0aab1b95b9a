#include "jsrec/linalg.hpp"

#include <algorithm>

namespace jsrec::linalg {

double default_rank_tol(Eigen::Index rows, Eigen::Index cols) {
  return 1e-10 * static_cast<double>(std::max<Eigen::Index>({rows, cols, 1}));
}

int numerical_rank(const Matrix& M, double rel_tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(M);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

Matrix orthonormal_basis(const Matrix& M, double rel_tol) {
  if (M.cols() == 0) return Matrix(M.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  if (s(0) <= 0.0) return Matrix(M.rows(), 0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > rel_tol * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

Matrix orthonormal_basis_abs(const Matrix& M, double abs_tol) {
  if (M.cols() == 0) return Matrix(M.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > abs_tol) ++rank;
  return svd.matrixU().leftCols(rank);
}

bool append_orthonormal(Matrix& W, const Eigen::Ref<const Vector>& a, double rel_tol) {
  const double norm_a = a.norm();
  if (norm_a == 0.0 || W.cols() >= W.rows()) return false;
  Vector v = a;
  for (int pass = 0; pass < 2; ++pass)
    if (W.cols() > 0) v -= W * (W.transpose() * v);
  const double norm_v = v.norm();
  if (norm_v <= rel_tol * norm_a) return false;
  W.conservativeResize(Eigen::NoChange, W.cols() + 1);
  W.col(W.cols() - 1) = v / norm_v;
  return true;
}

Vector residual_sq_norms(const Matrix& W, const Matrix& A) {
  if (W.cols() == 0) return A.colwise().squaredNorm().transpose();
  Matrix R = A - W * (W.transpose() * A);
  return R.colwise().squaredNorm().transpose();
}

double residual_sq_norm(const Matrix& W, const Eigen::Ref<const Vector>& a) {
  if (W.cols() == 0) return a.squaredNorm();
  Vector r = a - W * (W.transpose() * a);
  return r.squaredNorm();
}

Matrix select_columns(const Matrix& A, std::span<const int> idx) {
  Matrix out(A.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = A.col(idx[c]);
  return out;
}

Matrix hstack(const Matrix& L, const Matrix& R) {
  Matrix out(L.rows(), L.cols() + R.cols());
  out.leftCols(L.cols()) = L;
  out.rightCols(R.cols()) = R;
  return out;
}

Matrix projector(const Matrix& W) { return W * W.transpose(); }

}  // namespace jsrec::linalg
