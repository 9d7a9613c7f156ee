#include "qproj/qmatrix.hpp"

#include <algorithm>
#include <cmath>

#include "embed_detail.hpp"

namespace qproj {

using detail::CMat;
using detail::CVec;
using detail::to_eigen;

QMatrix::QMatrix(int dim, std::initializer_list<Quaternion> entries) : QMatrix(dim) {
  if (static_cast<int>(entries.size()) != dim * dim) {
    throw Error(Errc::DimensionMismatch, "entry count does not match dim^2");
  }
  std::copy(entries.begin(), entries.end(), a_.begin());
}

QMatrix QMatrix::identity(int dim) {
  QMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

QMatrix QMatrix::diagonal(const std::vector<Quaternion>& d) {
  QMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m.at(i, i) = d[i];
  return m;
}

QMatrix QMatrix::jordan_block(const Quaternion& lambda, int m) {
  QMatrix j(m);
  for (int i = 0; i < m; ++i) {
    j.at(i, i) = lambda;
    if (i + 1 < m) j.at(i, i + 1) = 1.0;
  }
  return j;
}

QMatrix QMatrix::single_entry(int dim, int row, int col) {
  QMatrix z(dim);
  z.at(row - 1, col - 1) = 1.0;
  return z;
}

QMatrix QMatrix::block_diag(const std::vector<QMatrix>& blocks) {
  int dim = 0;
  for (const auto& b : blocks) dim += b.dim();
  QMatrix m(dim);
  int off = 0;
  for (const auto& b : blocks) {
    for (int r = 0; r < b.dim(); ++r)
      for (int c = 0; c < b.dim(); ++c) m.at(off + r, off + c) = b.at(r, c);
    off += b.dim();
  }
  return m;
}

QMatrix QMatrix::conj_transpose() const {
  QMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m.at(c, r) = at(r, c).conj();
  return m;
}

double QMatrix::frobenius_norm() const {
  double s = 0;
  for (const auto& q : a_) s += q.norm_sq();
  return std::sqrt(s);
}

QMatrix operator+(const QMatrix& x, const QMatrix& y) {
  QMatrix m(x.dim_);
  for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = x.a_[i] + y.a_[i];
  return m;
}

QMatrix operator-(const QMatrix& x, const QMatrix& y) {
  QMatrix m(x.dim_);
  for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = x.a_[i] - y.a_[i];
  return m;
}

QMatrix operator*(const QMatrix& x, const QMatrix& y) {
  if (x.dim_ != y.dim_) throw Error(Errc::DimensionMismatch, "matrix product dims differ");
  QMatrix m(x.dim_);
  for (int r = 0; r < x.dim_; ++r) {
    for (int k = 0; k < x.dim_; ++k) {
      const Quaternion& xv = x.at(r, k);
      if (xv.norm_sq() == 0.0) continue;
      for (int c = 0; c < x.dim_; ++c) m.at(r, c) += xv * y.at(k, c);
    }
  }
  return m;
}

QMatrix operator*(const QMatrix& x, double r) {
  QMatrix m(x.dim_);
  for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = x.a_[i] * r;
  return m;
}

QMatrix operator*(double r, const QMatrix& x) { return x * r; }

std::vector<Quaternion> QMatrix::apply(const std::vector<Quaternion>& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw Error(Errc::DimensionMismatch, "vector length does not match dim");
  std::vector<Quaternion> y(dim_);
  for (int r = 0; r < dim_; ++r) {
    Quaternion acc;
    for (int c = 0; c < dim_; ++c) acc += at(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

bool approx_equal(const QMatrix& x, const QMatrix& y, double tol) {
  if (x.dim() != y.dim()) return false;
  return (x - y).frobenius_norm() <= tol;
}

ComplexMatrix phi_embed(const QMatrix& A) {
  const int n = A.dim();
  ComplexMatrix m(2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const std::complex<double> a1 = A.at(r, c).c1();
      const std::complex<double> a2 = A.at(r, c).c2();
      m.at(r, c) = a1;
      m.at(r, n + c) = a2;
      m.at(n + r, c) = -std::conj(a2);
      m.at(n + r, n + c) = std::conj(a1);
    }
  }
  return m;
}

double det_h(const QMatrix& A) {
  const CMat m = to_eigen(phi_embed(A));
  const std::complex<double> d = Eigen::PartialPivLU<CMat>(m).determinant();
  // The determinant of an embedded matrix is real; a large imaginary part
  // means the input was not a valid embedding image.
  const double scale = std::max(1.0, std::abs(d));
  if (std::abs(d.imag()) > 1e-8 * scale) {
    throw Error(Errc::PairingFailure, "determinant has non-negligible imaginary part");
  }
  return d.real();
}

std::vector<std::pair<ComplexRep, int>> right_eigenvalues(const QMatrix& A, double merge_tol) {
  const CMat m = to_eigen(phi_embed(A));
  Eigen::ComplexEigenSolver<CMat> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw Error(Errc::PairingFailure, "eigenvalue iteration failed");
  }
  std::vector<std::complex<double>> ev(es.eigenvalues().data(),
                                       es.eigenvalues().data() + es.eigenvalues().size());

  const double scale = std::max(1.0, m.norm());
  const double pair_tol = std::max(1e-7 * scale, 10 * merge_tol);

  // Greedily pair each eigenvalue with its conjugate partner.
  std::vector<bool> used(ev.size(), false);
  std::vector<ComplexRep> reps;
  for (size_t i = 0; i < ev.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const std::complex<double> want = std::conj(ev[i]);
    int best = -1;
    double best_d = pair_tol;
    for (size_t j = i + 1; j < ev.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(ev[j] - want);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) {
      throw Error(Errc::PairingFailure, "spectrum does not pair into conjugate classes");
    }
    used[best] = true;
    const std::complex<double> mean =
        (std::imag(ev[i]) >= 0) ? (ev[i] + std::conj(ev[best])) * 0.5
                                : (std::conj(ev[i]) + ev[best]) * 0.5;
    reps.emplace_back(mean);
  }

  std::sort(reps.begin(), reps.end(), [](const ComplexRep& x, const ComplexRep& y) {
    if (x.re != y.re) return x.re < y.re;
    return x.im < y.im;
  });
  std::vector<std::pair<ComplexRep, int>> out;
  for (const auto& r : reps) {
    if (!out.empty() && std::abs(out.back().first.re - r.re) <= merge_tol &&
        std::abs(out.back().first.im - r.im) <= merge_tol) {
      ++out.back().second;
    } else {
      out.emplace_back(r, 1);
    }
  }
  return out;
}

namespace {

using detail::j_image;
using detail::pull_back;

Quaternion h_dot(const std::vector<Quaternion>& x, const std::vector<Quaternion>& y) {
  Quaternion acc;
  for (size_t t = 0; t < x.size(); ++t) acc += x[t].conj() * y[t];
  return acc;
}

double h_norm(const std::vector<Quaternion>& x) {
  double s = 0;
  for (const auto& q : x) s += q.norm_sq();
  return std::sqrt(s);
}

}  // namespace

QSvd qsvd(const QMatrix& A) {
  const int n = A.dim();
  const CMat m = to_eigen(phi_embed(A));
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();

  const double scale = std::max(sv.size() ? sv(0) : 0.0, 1e-300);
  // Group near-equal singular values; each group must have even size. The
  // split test uses the adjacent relative gap plus an absolute noise floor:
  // true pairs compute equal to roughly eps * sigma_1, while graded spectra
  // (binomial powers of unipotent blocks) carry genuinely distinct values
  // many orders below sigma_1 that must stay separate.
  std::vector<std::pair<int, int>> groups;  // [begin, end)
  {
    int begin = 0;
    for (int i = 1; i <= sv.size(); ++i) {
      bool split = i == sv.size();
      if (!split) {
        const double gap = sv(i - 1) - sv(i);
        split = gap > std::max(1e-8 * sv(i - 1), 5e-12 * scale);
      }
      if (split) {
        groups.emplace_back(begin, i);
        begin = i;
      }
    }
  }
  for (const auto& [b, e] : groups) {
    if ((e - b) % 2 != 0) {
      throw Error(Errc::DoublingFailure, "singular values do not occur in equal pairs");
    }
  }

  QSvd out;
  out.sigma.reserve(n);
  std::vector<std::vector<Quaternion>> vcols;  // right singular vectors over H
  vcols.reserve(n);

  for (const auto& [b, e] : groups) {
    // The right-singular subspace of a group is invariant under right
    // j-multiplication, so it carries (e - b)/2 quaternionic directions.
    const int take = (e - b) / 2;
    std::vector<CVec> basis;
    for (int i = b; i < e; ++i) basis.push_back(svd.matrixV().col(i));
    std::vector<CVec> used;
    auto project_out = [&](CVec w) {
      for (const auto& u : used) w -= u * u.dot(w);
      return w;
    };
    for (int t = 0; t < take; ++t) {
      // Pick the candidate with the largest residual off the used span.
      CVec best;
      double best_norm = -1;
      for (const auto& cand : basis) {
        CVec r = project_out(cand);
        const double rn = r.norm();
        if (rn > best_norm) {
          best_norm = rn;
          best = r;
        }
      }
      if (best_norm <= 1e-10) {
        throw Error(Errc::DoublingFailure, "degenerate right-singular subspace");
      }
      best /= best.norm();
      used.push_back(best);
      CVec jb = j_image(best);
      jb = project_out(jb);
      if (jb.norm() > 1e-10) used.push_back(jb / jb.norm());
      vcols.push_back(pull_back(best));
      out.sigma.push_back(sv(b));
    }
  }

  // U columns: images of the right-singular directions; fill the null range
  // by completing to a unitary basis. A slot whose image norm disagrees with
  // its singular value sits below the resolvable range and is treated as
  // null rather than poisoning U.
  std::vector<std::vector<Quaternion>> ucols(n);
  std::vector<int> null_slots;
  for (int i = 0; i < n; ++i) {
    const auto av = A.apply(vcols[i]);
    const double avn = h_norm(av);
    if (out.sigma[i] > 1e-12 * scale && avn > 0.5 * out.sigma[i] && avn < 2.0 * out.sigma[i]) {
      std::vector<Quaternion> u(av);
      for (auto& q : u) q = q * (1.0 / avn);
      ucols[i] = std::move(u);
    } else {
      null_slots.push_back(i);
    }
  }
  if (!null_slots.empty()) {
    std::vector<std::vector<Quaternion>> have;
    for (int i = 0; i < n; ++i)
      if (ucols[i].size()) have.push_back(ucols[i]);
    for (int axis = 0; axis < n && !null_slots.empty(); ++axis) {
      std::vector<Quaternion> cand(n);
      cand[axis] = 1.0;
      for (const auto& u : have) {
        const Quaternion c = h_dot(u, cand);
        for (int t = 0; t < n; ++t) cand[t] -= u[t] * c;
      }
      const double nn = h_norm(cand);
      if (nn > 1e-6) {
        for (auto& q : cand) q = q * (1.0 / nn);
        ucols[null_slots.front()] = cand;
        null_slots.erase(null_slots.begin());
        have.push_back(std::move(cand));
      }
    }
    if (!null_slots.empty()) {
      throw Error(Errc::DoublingFailure, "could not complete unitary factor");
    }
  }

  out.u = QMatrix(n);
  QMatrix vstar(n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      out.u.at(r, c) = ucols[c][r];
      vstar.at(r, c) = vcols[c][r];
    }
  }
  out.v = vstar.conj_transpose();
  return out;
}

QMatrix inverse(const QMatrix& A, double eps) {
  if (det_h(A) <= eps) throw Error(Errc::Singular, "det_h at or below epsilon");
  const int n = A.dim();
  const CMat m = to_eigen(phi_embed(A));
  const CMat mi = m.inverse();
  QMatrix out(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out.at(r, c) = Quaternion::from_parts(mi(r, c), mi(r, n + c));
  return out;
}

QMatrix mat_pow(const QMatrix& A, long m) {
  QMatrix base = A;
  if (m < 0) {
    base = inverse(A);
    m = -m;
  }
  QMatrix acc = QMatrix::identity(A.dim());
  while (m > 0) {
    if (m & 1) acc = acc * base;
    base = base * base;
    m >>= 1;
  }
  return acc;
}

}  // namespace qproj
