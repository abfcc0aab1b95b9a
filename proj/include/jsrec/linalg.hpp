#pragma once

#include <span>
#include <vector>

#include "jsrec/types.hpp"

// Small dense helpers shared by the recovery criteria. Every projection is
// formed from an orthonormal basis obtained by SVD, never from normal
// equations.
namespace jsrec::linalg {

/// Numerical rank threshold used throughout: 1e-10 * max(rows, cols).
double default_rank_tol(Eigen::Index rows, Eigen::Index cols);

/// Singular values of M that exceed rel_tol * sigma_max.
int numerical_rank(const Matrix& M, double rel_tol);

/// Orthonormal basis of range(M); columns are the left singular vectors
/// whose singular values exceed rel_tol * sigma_max. Returns rows x 0 for
/// a zero matrix.
Matrix orthonormal_basis(const Matrix& M, double rel_tol);

/// As orthonormal_basis, but keeps singular values above an absolute
/// threshold. Used when M is a projection of an orthonormal block.
Matrix orthonormal_basis_abs(const Matrix& M, double abs_tol);

/// Gram-Schmidt step with one reorthogonalization pass. Appends the
/// normalized component of `a` orthogonal to W and returns true, unless that
/// component is below rel_tol * ||a||.
bool append_orthonormal(Matrix& W, const Eigen::Ref<const Vector>& a, double rel_tol);

/// Squared norms of the columns of (I - W W^T) A, for W with orthonormal
/// columns (W may have zero columns).
Vector residual_sq_norms(const Matrix& W, const Matrix& A);

/// Squared norm of (I - W W^T) a.
double residual_sq_norm(const Matrix& W, const Eigen::Ref<const Vector>& a);

/// Columns of A listed in `idx`, in that order.
Matrix select_columns(const Matrix& A, std::span<const int> idx);

/// [L R] side by side.
Matrix hstack(const Matrix& L, const Matrix& R);

/// Orthogonal projector W W^T for an orthonormal W.
Matrix projector(const Matrix& W);

}  // namespace jsrec::linalg
