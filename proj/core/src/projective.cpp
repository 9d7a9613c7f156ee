#include "qproj/projective.hpp"

#include <algorithm>
#include <cmath>

namespace qproj {

namespace {

double vec_norm(const std::vector<Quaternion>& x) {
  double s = 0;
  for (const auto& q : x) s += q.norm_sq();
  return std::sqrt(s);
}

Quaternion dot(const std::vector<Quaternion>& x, const std::vector<Quaternion>& y) {
  Quaternion acc;
  for (size_t t = 0; t < x.size(); ++t) acc += x[t].conj() * y[t];
  return acc;
}

}  // namespace

ProjPoint::ProjPoint(std::vector<Quaternion> coords) : x_(std::move(coords)) {
  const double n = vec_norm(x_);
  if (n <= kEps) throw Error(Errc::ZeroDivisor, "projective point needs a nonzero vector");
  int first = -1;
  for (size_t i = 0; i < x_.size(); ++i) {
    if (x_[i].norm() > kEps * n) {
      first = static_cast<int>(i);
      break;
    }
  }
  if (first < 0) throw Error(Errc::ZeroDivisor, "projective point needs a nonzero coordinate");
  // Right scaling alpha = x_f^{-1} |x_f| / n makes x_f real positive and |x| = 1.
  const Quaternion alpha = quat_inverse(x_[first]) * (x_[first].norm() / n);
  for (auto& q : x_) q = q * alpha;
  // Fold -0 components for stable printing.
  for (auto& q : x_) {
    if (q.a0 == 0.0) q.a0 = 0.0;
    if (q.a1 == 0.0) q.a1 = 0.0;
    if (q.a2 == 0.0) q.a2 = 0.0;
    if (q.a3 == 0.0) q.a3 = 0.0;
  }
}

ProjPoint ProjPoint::axis(int dim, int index1) {
  std::vector<Quaternion> x(dim);
  x[index1 - 1] = 1.0;
  return ProjPoint(std::move(x));
}

Quaternion herm_dot(const ProjPoint& x, const ProjPoint& y) { return dot(x.coords(), y.coords()); }

double fs_distance(const ProjPoint& p, const ProjPoint& q) {
  if (p.dim() != q.dim()) throw Error(Errc::DimensionMismatch, "point dims differ");
  // Equal to sqrt(1 - |<p,q>|^2) on unit representatives, but computed as the
  // norm of the residual q - p <p,q>, which keeps full precision near 0.
  const Quaternion c = dot(p.coords(), q.coords());
  double s = 0;
  for (int t = 0; t < p.dim(); ++t) s += (q[t] - p[t] * c).norm_sq();
  return std::min(1.0, std::sqrt(s));
}

const char* flavor_name(SubspaceFlavor f) {
  switch (f) {
    case SubspaceFlavor::QuaternionicSpan: return "QuaternionicSpan";
    case SubspaceFlavor::ComplexSlice: return "ComplexSlice";
    case SubspaceFlavor::PointSet: return "PointSet";
  }
  return "Unknown";
}

ProjSubspace subspace_span(const std::vector<ProjPoint>& vectors, SubspaceFlavor flavor) {
  if (vectors.empty()) throw Error(Errc::EmptySpan, "cannot span an empty set");
  const int n = vectors.front().dim();
  std::vector<std::vector<Quaternion>> basis;
  for (const auto& v : vectors) {
    std::vector<Quaternion> w = v.coords();
    // Right-module projection: subtract u <u, w> for each orthonormal u.
    for (const auto& u : basis) {
      const Quaternion c = dot(u, w);
      for (int t = 0; t < n; ++t) w[t] -= u[t] * c;
    }
    const double nn = vec_norm(w);
    if (nn > 1e-9) {
      for (auto& q : w) q = q * (1.0 / nn);
      basis.push_back(std::move(w));
    }
  }
  if (basis.empty()) throw Error(Errc::EmptySpan, "all vectors dependent to zero");
  ProjSubspace s;
  s.flavor = flavor;
  s.generators.reserve(basis.size());
  for (auto& b : basis) s.generators.emplace_back(std::move(b));
  return s;
}

ProjSubspace axis_subspace(int dim, std::vector<int> axes, SubspaceFlavor flavor) {
  std::vector<ProjPoint> gens;
  gens.reserve(axes.size());
  for (int a : axes) gens.push_back(ProjPoint::axis(dim, a));
  ProjSubspace s = subspace_span(gens, flavor);
  s.axes = std::move(axes);
  return s;
}

ProjSubspace point_set(std::vector<ProjPoint> points) {
  ProjSubspace s;
  s.flavor = SubspaceFlavor::PointSet;
  s.generators = std::move(points);
  return s;
}

double distance_to_subspace(const ProjPoint& p, const ProjSubspace& w) {
  switch (w.flavor) {
    case SubspaceFlavor::ComplexSlice:
      throw Error(Errc::FlavorUnsupported, "no metric on complex slices");
    case SubspaceFlavor::PointSet: {
      double best = 1.0;
      for (const auto& q : w.generators) best = std::min(best, fs_distance(p, q));
      return best;
    }
    case SubspaceFlavor::QuaternionicSpan: {
      // Norm of the residual after projecting onto the orthonormal span;
      // equals sqrt(1 - |proj|^2) but stays accurate near membership.
      std::vector<Quaternion> r = p.coords();
      for (const auto& u : w.generators) {
        const Quaternion c = herm_dot(u, p);
        for (int t = 0; t < p.dim(); ++t) r[t] -= u[t] * c;
      }
      double s = 0;
      for (const auto& q : r) s += q.norm_sq();
      return std::min(1.0, std::sqrt(s));
    }
  }
  return 1.0;
}

double subspace_defect(const ProjSubspace& a, const ProjSubspace& b) {
  if (a.generators.size() != b.generators.size() || a.flavor != b.flavor) return 1.0;
  double worst = 0;
  for (const auto& g : a.generators) worst = std::max(worst, distance_to_subspace(g, b));
  for (const auto& g : b.generators) worst = std::max(worst, distance_to_subspace(g, a));
  return worst;
}

bool subspaces_equal(const ProjSubspace& a, const ProjSubspace& b, double tol) {
  return subspace_defect(a, b) <= tol;
}

ProjPoint apply_unchecked(const QMatrix& g, const ProjPoint& x) {
  return ProjPoint(g.apply(x.coords()));
}

ProjPoint apply_transform(const QMatrix& g, const ProjPoint& x) {
  if (det_h(g) <= kEps) throw Error(Errc::Singular, "transform must be invertible");
  return apply_unchecked(g, x);
}

ProjSubspace apply_transform(const QMatrix& g, const ProjSubspace& w) {
  if (det_h(g) <= kEps) throw Error(Errc::Singular, "transform must be invertible");
  ProjSubspace out;
  out.flavor = w.flavor;
  if (w.flavor == SubspaceFlavor::PointSet) {
    out.generators.reserve(w.generators.size());
    for (const auto& p : w.generators) out.generators.push_back(apply_unchecked(g, p));
    return out;
  }
  std::vector<ProjPoint> images;
  images.reserve(w.generators.size());
  for (const auto& p : w.generators) images.push_back(apply_unchecked(g, p));
  ProjSubspace spanned = subspace_span(images, w.flavor);
  return spanned;
}

bool hyperplane_contains(const Hyperplane& h, const ProjPoint& x, double eps) {
  return herm_dot(h.normal, x).norm() <= eps;
}

Hyperplane dual_hyperplane_apply(const QMatrix& g, const Hyperplane& h) {
  const QMatrix gi = inverse(g);  // throws Singular
  const QMatrix gistar = gi.conj_transpose();
  return Hyperplane{apply_unchecked(gistar, h.normal)};
}

bool hyperplanes_equal(const Hyperplane& a, const Hyperplane& b, double eps) {
  return fs_distance(a.normal, b.normal) <= eps;
}

bool complex_slice_membership(const ProjPoint& p, const std::vector<int>& support, double eps) {
  const int n = p.dim();
  std::vector<bool> in_support(n, false);
  for (int a : support) {
    if (a < 1 || a > n) throw Error(Errc::DimensionMismatch, "support index out of range");
    in_support[a - 1] = true;
  }
  std::vector<int> nz;
  for (int i = 0; i < n; ++i) {
    if (p[i].norm() > eps) {
      if (!in_support[i]) return false;
      nz.push_back(i);
    }
  }
  if (nz.empty()) return false;
  // Ratios against the first nonzero entry; membership iff they pairwise
  // commute, i.e. their imaginary 3-vectors are parallel.
  std::vector<Quaternion> ratios;
  const Quaternion inv0 = quat_inverse(p[nz[0]]);
  for (size_t t = 1; t < nz.size(); ++t) ratios.push_back(p[nz[t]] * inv0);
  for (size_t a = 0; a < ratios.size(); ++a) {
    for (size_t b = a + 1; b < ratios.size(); ++b) {
      const Quaternion comm = ratios[a] * ratios[b] - ratios[b] * ratios[a];
      const double scale = std::max(1.0, ratios[a].norm() * ratios[b].norm());
      if (comm.norm() > eps * scale) return false;
    }
  }
  return true;
}

}  // namespace qproj
