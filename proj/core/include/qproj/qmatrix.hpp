#ifndef QPROJ_QMATRIX_HPP
#define QPROJ_QMATRIX_HPP

#include <complex>
#include <initializer_list>
#include <vector>

#include "qproj/quaternion.hpp"

namespace qproj {

/// Square matrix over the quaternions acting from the left on column vectors
/// of the right H-module H^n. Dense, row-major; sized for desk-scale work
/// (dim <= 16 or so), not for large linear algebra.
class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}
  QMatrix(int dim, std::initializer_list<Quaternion> entries);

  static QMatrix identity(int dim);
  /// Diagonal matrix from the given entries.
  static QMatrix diagonal(const std::vector<Quaternion>& d);
  /// Jordan block J(lambda, m): lambda on the diagonal, 1 on the superdiagonal.
  static QMatrix jordan_block(const Quaternion& lambda, int m);
  /// Z(r, n): all zero except a single 1 at row r, column n (1-based).
  static QMatrix single_entry(int dim, int row, int col);
  static QMatrix block_diag(const std::vector<QMatrix>& blocks);

  int dim() const { return dim_; }
  Quaternion& at(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
  const Quaternion& at(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

  QMatrix conj_transpose() const;
  double frobenius_norm() const;

  friend QMatrix operator+(const QMatrix& x, const QMatrix& y);
  friend QMatrix operator-(const QMatrix& x, const QMatrix& y);
  friend QMatrix operator*(const QMatrix& x, const QMatrix& y);
  friend QMatrix operator*(const QMatrix& x, double r);
  friend QMatrix operator*(double r, const QMatrix& x);

  std::vector<Quaternion> apply(const std::vector<Quaternion>& x) const;

 private:
  int dim_ = 0;
  std::vector<Quaternion> a_;
};

/// Dense row-major complex matrix, the codomain of the adjoint embedding.
struct ComplexMatrix {
  int n = 0;
  std::vector<std::complex<double>> a;

  explicit ComplexMatrix(int size = 0) : n(size), a(static_cast<size_t>(size) * size) {}
  std::complex<double>& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
  const std::complex<double>& at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
};

/// Complex adjoint embedding. Writing A = A1 + A2 j entrywise, returns the
/// 2 dim x 2 dim complex matrix [[A1, A2], [-conj(A2), conj(A1)]]. The map is
/// multiplicative: phi(AB) = phi(A) phi(B).
ComplexMatrix phi_embed(const QMatrix& A);

/// Quaternionic determinant det(phi_embed(A)). Real and non-negative up to
/// roundoff; the imaginary part of the complex determinant is discarded after
/// an internal sanity check.
double det_h(const QMatrix& A);

/// Right eigenvalue classes of A. The spectrum of phi_embed(A) occurs in
/// conjugate pairs; one representative with im >= 0 is kept per pair and
/// equal representatives are merged, so multiplicities sum to dim.
/// Throws PairingFailure if the spectrum does not pair up within tolerance.
std::vector<std::pair<ComplexRep, int>> right_eigenvalues(const QMatrix& A,
                                                          double merge_tol = 1e-8);

struct QSvd {
  QMatrix u;
  std::vector<double> sigma;  // descending
  QMatrix v;
};

/// Quaternionic singular value decomposition A = U diag(sigma) V with U, V
/// quaternionic-unitary. Singular values come from phi_embed(A), where they
/// occur doubled; DoublingFailure signals a spectrum that does not pair.
QSvd qsvd(const QMatrix& A);

/// A^m by square-and-multiply; m < 0 inverts first (Singular if det_h <= eps).
QMatrix mat_pow(const QMatrix& A, long m);

/// Inverse through the adjoint embedding. Throws Singular.
QMatrix inverse(const QMatrix& A, double eps = kEps);

bool approx_equal(const QMatrix& x, const QMatrix& y, double tol);

}  // namespace qproj

#endif
