// Internal helpers shared by the translation units that work through the
// complex adjoint embedding. Not installed.
#ifndef QPROJ_SRC_EMBED_DETAIL_HPP
#define QPROJ_SRC_EMBED_DETAIL_HPP

#include <Eigen/Dense>

#include "qproj/qmatrix.hpp"

namespace qproj::detail {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMat to_eigen(const ComplexMatrix& m) {
  CMat out(m.n, m.n);
  for (int r = 0; r < m.n; ++r)
    for (int c = 0; c < m.n; ++c) out(r, c) = m.at(r, c);
  return out;
}

inline CMat phi_eigen(const QMatrix& A) { return to_eigen(phi_embed(A)); }

// Coordinate identification: x = w1 - j w2  <->  w = (w1; w2) stacked.
// phi(A) w then represents A x, and scalar multiplication by a complex
// lambda on w represents right multiplication x lambda.
inline std::vector<Quaternion> pull_back(const CVec& w) {
  const int n = static_cast<int>(w.size()) / 2;
  std::vector<Quaternion> x(n);
  for (int t = 0; t < n; ++t) {
    x[t] = Quaternion::from_parts(w(t), -std::conj(w(n + t)));
  }
  return x;
}

// Right multiplication by j in stacked coordinates (antilinear, squares to -1).
inline CVec j_image(const CVec& w) {
  const int n = static_cast<int>(w.size()) / 2;
  CVec out(2 * n);
  for (int t = 0; t < n; ++t) {
    out(t) = std::conj(w(n + t));
    out(n + t) = -std::conj(w(t));
  }
  return out;
}

}  // namespace qproj::detail

#endif
