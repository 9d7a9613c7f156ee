#include "qproj/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "embed_detail.hpp"

namespace qproj {

namespace {

using detail::CMat;
using detail::CVec;

struct Cluster {
  std::complex<double> center;
  int mult = 0;  // quaternionic algebraic multiplicity
  bool real = false;
};

struct Chain {
  std::complex<double> lambda;
  std::vector<std::vector<Quaternion>> vectors;  // x_1 (eigenvector) .. x_s (top)
};

// Orthonormal working set with append-if-new semantics.
class OrthoSet {
 public:
  void add(CVec v) {
    project_out(v);
    const double n = v.norm();
    if (n > 1e-10) basis_.push_back(v / n);
  }

  void project_out(CVec& v) const {
    for (const auto& u : basis_) v -= u * u.dot(v);
  }

  const std::vector<CVec>& basis() const { return basis_; }

 private:
  std::vector<CVec> basis_;
};

std::vector<Cluster> group_spectrum(const std::vector<std::complex<double>>& reps,
                                    double radius) {
  const size_t n = reps.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), size_t{0});
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (std::abs(reps[i] - reps[j]) <= radius) parent[find(i)] = find(j);
    }
  }
  std::vector<Cluster> out;
  std::vector<std::complex<double>> sums(n, 0.0);
  std::vector<int> counts(n, 0);
  for (size_t i = 0; i < n; ++i) {
    const size_t r = find(i);
    sums[r] += reps[i];
    counts[r] += 1;
  }
  for (size_t r = 0; r < n; ++r) {
    if (counts[r] == 0) continue;
    if (counts[r] % 2 != 0) {
      throw Error(Errc::ChainDefect, "conjugate pairing broke during clustering");
    }
    Cluster c;
    c.mult = counts[r] / 2;
    std::complex<double> mean = sums[r] / static_cast<double>(counts[r]);
    c.real = mean.imag() <= radius;
    c.center = c.real ? std::complex<double>(mean.real(), 0.0) : mean;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return out;
}

// One attempt at the full numeric analysis with a fixed clustering radius.
JordanData analyze_attempt(const QMatrix& A, const CMat& M, double group_radius) {
  const int N = A.dim();
  const int twoN = 2 * N;

  Eigen::ComplexEigenSolver<CMat> es(M, false);
  if (es.info() != Eigen::Success) throw Error(Errc::ChainDefect, "eigenvalue iteration failed");

  std::vector<std::complex<double>> reps;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    if (z.imag() < 0) z = std::conj(z);
    reps.push_back(z);
  }

  const std::vector<Cluster> clusters = group_spectrum(reps, group_radius);
  const double a_scale = std::max(1.0, M.norm());
  std::vector<Chain> chains;

  for (const auto& cl : clusters) {
    const std::complex<double> lam = cl.center;
    const int m = cl.mult;
    const int m_phi = cl.real ? 2 * m : m;

    CMat B = M - lam * CMat::Identity(twoN, twoN);

    // Deflate to the cluster's generalized eigenspace: the m_phi right-singular
    // directions of B^m with the smallest singular values.
    CMat Bk = CMat::Identity(twoN, twoN);
    for (int k = 0; k < m; ++k) Bk = Bk * B;
    Eigen::JacobiSVD<CMat> svd(Bk, Eigen::ComputeFullV);
    CMat Q(twoN, m_phi);
    for (int t = 0; t < m_phi; ++t) Q.col(t) = svd.matrixV().col(twoN - 1 - t);

    CMat BT = Q.adjoint() * B * Q;  // restricted nilpotent part

    // Weyr sequence d_k = dim ker(BT^k), computed inside the deflated space.
    std::vector<int> d(m + 2, 0);
    const double bt_scale = std::max(1.0, BT.norm());
    CMat BTk = CMat::Identity(m_phi, m_phi);
    std::vector<std::vector<CVec>> kernels(m + 1);
    for (int k = 1; k <= m; ++k) {
      BTk = BTk * BT;
      Eigen::JacobiSVD<CMat> ks(BTk, Eigen::ComputeFullV);
      const double tau = m_phi * 1e-9 * std::pow(bt_scale, k);
      int nullity = 0;
      for (int t = 0; t < m_phi; ++t) {
        if (ks.singularValues()(t) <= tau) ++nullity;
      }
      nullity = std::clamp(nullity, d[k - 1], m_phi);
      d[k] = nullity;
      for (int t = 0; t < nullity; ++t) {
        kernels[k].push_back(Q * ks.matrixV().col(m_phi - 1 - t));
      }
      if (d[k] == m_phi) break;
    }
    // Max block size = first power whose kernel exhausts the deflated space.
    int smax = 0;
    for (int k = 1; k <= m; ++k) {
      if (d[k] == m_phi) {
        smax = k;
        break;
      }
    }
    if (smax == 0) throw Error(Errc::ChainDefect, "generalized eigenspace dimension deficit");
    for (int k = smax; k <= m + 1; ++k) d[k] = m_phi;

    std::vector<int> blocks_of_size(m + 1, 0);
    for (int k = 1; k <= m; ++k) {
      const int b_phi = 2 * d[k] - d[k - 1] - d[std::min(k + 1, m + 1)];
      if (b_phi < 0) throw Error(Errc::ChainDefect, "non-monotone Weyr sequence");
      if (cl.real) {
        if (b_phi % 2 != 0) throw Error(Errc::ChainDefect, "unpaired block at a real eigenvalue");
        blocks_of_size[k] = b_phi / 2;
      } else {
        blocks_of_size[k] = b_phi;
      }
    }

    // Chains from the longest blocks down. The used-set keeps every chain
    // vector (plus its j-image at real eigenvalues) so later picks stay
    // independent over H, not merely over C.
    OrthoSet used;
    for (int s = smax; s >= 1; --s) {
      for (int count = 0; count < blocks_of_size[s]; ++count) {
        OrthoSet avoid;
        if (s >= 2) {
          for (const auto& v : kernels[s - 1]) avoid.add(v);
        }
        for (const auto& u : used.basis()) avoid.add(u);

        CVec top;
        double best = -1;
        for (const auto& cand : kernels[s]) {
          CVec r = cand;
          avoid.project_out(r);
          if (r.norm() > best) {
            best = r.norm();
            top = cand;
          }
        }
        if (best < 1e-6) throw Error(Errc::ChainDefect, "chain top not found in kernel filtration");

        std::vector<CVec> cvecs(s);
        cvecs[s - 1] = top;
        for (int t = s - 2; t >= 0; --t) cvecs[t] = B * cvecs[t + 1];
        if (cvecs[0].norm() <= 1e-8 * a_scale) {
          throw Error(Errc::ChainDefect, "chain collapsed before reaching an eigenvector");
        }
        for (const auto& v : cvecs) {
          used.add(v);
          if (cl.real) used.add(detail::j_image(v));
        }

        Chain ch;
        ch.lambda = lam;
        ch.vectors.reserve(s);
        for (const auto& v : cvecs) ch.vectors.push_back(detail::pull_back(v));
        // One real scale per chain keeps the chain relation intact.
        double n0 = 0;
        for (const auto& q : ch.vectors.front()) n0 += q.norm_sq();
        n0 = std::sqrt(n0);
        if (n0 <= 1e-12) throw Error(Errc::ChainDefect, "zero eigenvector after pull-back");
        for (auto& vec : ch.vectors) {
          for (auto& q : vec) q = q * (1.0 / n0);
        }
        chains.push_back(std::move(ch));
      }
    }
  }

  std::vector<JordanBlock> blocks;
  blocks.reserve(chains.size());
  for (const auto& ch : chains) {
    JordanBlock b;
    b.eigenvalue = ComplexRep(ch.lambda);
    b.size = static_cast<int>(ch.vectors.size());
    blocks.push_back(b);
  }
  std::vector<int> perm;
  sort_blocks_canonical(blocks, &perm);

  QMatrix X(N);
  int col = 0;
  for (int bi : perm) {
    for (const auto& vec : chains[bi].vectors) {
      for (int r = 0; r < N; ++r) X.at(r, col) = vec[r];
      ++col;
    }
  }

  JordanData jd;
  jd.blocks = std::move(blocks);
  jd.conjugator = inverse(X, 1e-300);
  const QMatrix J = jd.jordan_matrix();
  jd.residual = (jd.conjugator * A * X - J).frobenius_norm();
  return jd;
}

}  // namespace

AngleDecl AngleDecl::make_rational(long long p, long long q) {
  if (q <= 0) throw Error(Errc::ParseError, "angle denominator must be positive");
  const long long g = std::gcd(p < 0 ? -p : p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  p %= q;
  if (p < 0) p += q;
  AngleDecl d;
  d.rational = true;
  d.p = p;
  d.q = q;
  d.value = static_cast<double>(p) / static_cast<double>(q);
  return d;
}

AngleDecl AngleDecl::make_irrational(double turns) {
  AngleDecl d;
  d.rational = false;
  d.value = turns - std::floor(turns);
  return d;
}

int JordanData::dim() const {
  int n = 0;
  for (const auto& b : blocks) n += b.size;
  return n;
}

bool JordanData::semisimple() const {
  return std::all_of(blocks.begin(), blocks.end(),
                     [](const JordanBlock& b) { return b.size == 1; });
}

QMatrix JordanData::jordan_matrix() const {
  std::vector<QMatrix> parts;
  parts.reserve(blocks.size());
  for (const auto& b : blocks) {
    parts.push_back(QMatrix::jordan_block(Quaternion::from_complex(b.eigenvalue.value()), b.size));
  }
  return QMatrix::block_diag(parts);
}

int JordanData::block_offset(int b) const {
  int off = 0;
  for (int i = 0; i < b; ++i) off += blocks[i].size;
  return off;
}

void sort_blocks_canonical(std::vector<JordanBlock>& blocks, std::vector<int>* perm) {
  std::vector<int> idx(blocks.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto key_less = [&](int x, int y) {
    const auto& a = blocks[x];
    const auto& b = blocks[y];
    const double ma = a.eigenvalue.modulus();
    const double mb = b.eigenvalue.modulus();
    if (std::abs(ma - mb) > 1e-12) return ma > mb;
    if (a.size != b.size) return a.size > b.size;
    const double ta = a.eigenvalue.angle_turns();
    const double tb = b.eigenvalue.angle_turns();
    if (std::abs(ta - tb) > 1e-14) return ta < tb;
    return x < y;
  };
  std::stable_sort(idx.begin(), idx.end(), key_less);
  std::vector<JordanBlock> sorted;
  sorted.reserve(blocks.size());
  for (int i : idx) sorted.push_back(blocks[i]);
  blocks = std::move(sorted);
  if (perm) *perm = idx;
}

JordanData jordan_analyze_numeric(const QMatrix& A, double cluster_tol) {
  if (A.dim() > 8) {
    throw Error(Errc::ChainDefect,
                "numeric Jordan analysis supports dim <= 8; declare blocks instead");
  }
  if (A.dim() < 1) throw Error(Errc::DimensionMismatch, "empty matrix");
  const CMat M = detail::phi_eigen(A);
  const double res_ok = 1e-6 * std::max(1.0, A.frobenius_norm());

  double radius = cluster_tol;
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt < 4; ++attempt) {
    try {
      JordanData jd = analyze_attempt(A, M, radius);
      if (jd.residual <= res_ok) return jd;
      last_error = "residual " + std::to_string(jd.residual) + " above tolerance";
    } catch (const Error& e) {
      if (e.code() != Errc::ChainDefect) throw;
      last_error = e.what();
    }
    radius *= 10.0;
  }
  throw Error(Errc::ClusterOverlap,
              "eigenvalue clusters unresolved at tol " + std::to_string(cluster_tol) + " (" +
                  last_error + ")");
}

JordanData jordan_analyze_exact(const QMatrix& A, std::vector<JordanBlock> declared,
                                const std::optional<QMatrix>& conjugator) {
  int total = 0;
  for (const auto& b : declared) total += b.size;
  if (total != A.dim()) {
    throw Error(Errc::DimensionMismatch, "declared block sizes do not sum to dim");
  }

  std::vector<int> perm;
  std::vector<JordanBlock> blocks = declared;
  sort_blocks_canonical(blocks, &perm);

  std::vector<int> decl_offset(declared.size(), 0);
  for (size_t i = 1; i < declared.size(); ++i) {
    decl_offset[i] = decl_offset[i - 1] + declared[i - 1].size;
  }
  QMatrix P(A.dim());
  int row = 0;
  for (int bi : perm) {
    for (int t = 0; t < declared[bi].size; ++t) {
      P.at(row, decl_offset[bi] + t) = 1.0;
      ++row;
    }
  }

  JordanData jd;
  jd.blocks = std::move(blocks);
  jd.conjugator = conjugator ? P * (*conjugator) : P;
  const QMatrix J = jd.jordan_matrix();
  const QMatrix s_inv = inverse(jd.conjugator, 1e-300);
  jd.residual = (jd.conjugator * A * s_inv - J).frobenius_norm();
  return jd;
}

}  // namespace qproj
