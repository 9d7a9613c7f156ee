#ifndef QPROJ_PROJECTIVE_HPP
#define QPROJ_PROJECTIVE_HPP

#include <vector>

#include "qproj/qmatrix.hpp"

namespace qproj {

/// Point of quaternionic projective space: homogeneous coordinates modulo
/// right scalar multiplication. The stored representative is canonical:
/// Euclidean norm 1 with the first nonzero coordinate real and positive.
class ProjPoint {
 public:
  ProjPoint() = default;
  /// Canonicalizes the given homogeneous vector. Throws ZeroDivisor on ~0.
  explicit ProjPoint(std::vector<Quaternion> coords);

  static ProjPoint axis(int dim, int index1);  // e_i, 1-based

  int dim() const { return static_cast<int>(x_.size()); }
  const std::vector<Quaternion>& coords() const { return x_; }
  const Quaternion& operator[](int i) const { return x_[i]; }

 private:
  std::vector<Quaternion> x_;
};

/// Chordal Fubini–Study distance sqrt(1 - |<p,q>|^2) on unit representatives.
/// Invariant under right scaling and quaternionic-unitary maps; in [0, 1].
double fs_distance(const ProjPoint& p, const ProjPoint& q);

enum class SubspaceFlavor { QuaternionicSpan, ComplexSlice, PointSet };

const char* flavor_name(SubspaceFlavor f);

/// Projective subspace kept as pairwise-orthonormal generators, or a finite
/// point set (PointSet flavor), or a coordinate complex slice (ComplexSlice,
/// representational only: metric queries are rejected).
struct ProjSubspace {
  std::vector<ProjPoint> generators;
  SubspaceFlavor flavor = SubspaceFlavor::QuaternionicSpan;
  /// For components produced in Jordan coordinates: the 1-based axis indices
  /// this subspace was built from, when it is axis-aligned. Empty otherwise.
  std::vector<int> axes;

  int dim() const { return static_cast<int>(generators.size()) - 1; }
};

/// Right-module Gram–Schmidt span of the given points. Dependent vectors are
/// dropped; spanning nothing throws EmptySpan.
ProjSubspace subspace_span(const std::vector<ProjPoint>& vectors,
                           SubspaceFlavor flavor = SubspaceFlavor::QuaternionicSpan);

/// Axis-aligned span L{e_i : i in axes} (1-based indices).
ProjSubspace axis_subspace(int dim, std::vector<int> axes,
                           SubspaceFlavor flavor = SubspaceFlavor::QuaternionicSpan);

ProjSubspace point_set(std::vector<ProjPoint> points);

/// sqrt(1 - |proj|^2) against a QuaternionicSpan, or the minimum point
/// distance for a PointSet. ComplexSlice is rejected (FlavorUnsupported).
double distance_to_subspace(const ProjPoint& p, const ProjSubspace& w);

/// True when the two subspaces have equal dimension and each generator of one
/// lies in the span of the other, both ways, within tol.
bool subspaces_equal(const ProjSubspace& a, const ProjSubspace& b, double tol);

/// Symmetric span defect: the largest generator-to-span distance in either
/// direction (infinite-dimension mismatch reports 1).
double subspace_defect(const ProjSubspace& a, const ProjSubspace& b);

ProjPoint apply_transform(const QMatrix& g, const ProjPoint& x);
ProjSubspace apply_transform(const QMatrix& g, const ProjSubspace& w);
/// As above without the invertibility check (hot loops, g known invertible).
ProjPoint apply_unchecked(const QMatrix& g, const ProjPoint& x);

struct Hyperplane {
  ProjPoint normal;  // the alpha of l(alpha): { x : sum conj(alpha_i) x_i = 0 }
};

bool hyperplane_contains(const Hyperplane& h, const ProjPoint& x, double eps = kEps);

/// Image hyperplane under g: the normal maps by the conjugate-transpose of
/// g^{-1}, so that g carries l(alpha) onto the result pointwise.
Hyperplane dual_hyperplane_apply(const QMatrix& g, const Hyperplane& h);

bool hyperplanes_equal(const Hyperplane& a, const Hyperplane& b, double eps = kEps);

/// True when p is supported on the given coordinates (1-based) and the
/// nonzero entries generate a commutative subfield, i.e. p = lambda z for a
/// complex vector z supported there.
bool complex_slice_membership(const ProjPoint& p, const std::vector<int>& support,
                              double eps = kEps);

/// Hermitian pairing sum conj(x_i) y_i of the stored representatives.
Quaternion herm_dot(const ProjPoint& x, const ProjPoint& y);

}  // namespace qproj

#endif
