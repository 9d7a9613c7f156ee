#ifndef QPROJ_LIMIT_SET_HPP
#define QPROJ_LIMIT_SET_HPP

#include <map>
#include <string>
#include <vector>

#include "qproj/classify.hpp"
#include "qproj/projective.hpp"

namespace qproj {

enum class LimitKind { Empty, Whole, Union };

const char* limit_kind_name(LimitKind k);

/// A Kulkarni limit set in closed form: nothing, everything, or a union of
/// flavored subspaces. `levels` maps "L0"/"L1"/"L2"/"Lambda" to component
/// indices where the catalog states them; Lambda-level components are always
/// QuaternionicSpan or PointSet, complex slices appear only in L0.
struct LimitSet {
  LimitKind kind = LimitKind::Empty;
  int dim = 0;  // ambient homogeneous dimension n+1
  std::vector<ProjSubspace> components;
  std::map<std::string, std::vector<int>> levels;

  const std::vector<int>* level(const std::string& name) const;
  std::vector<const ProjSubspace*> lambda_components() const;
};

/// The catalog's closed-form limit set for a matched row, in the row's own
/// Jordan coordinates. Throws OutOfCatalogRow for unmatched elements.
LimitSet kulkarni_sets_canonical(const ElementClass& row);

/// Pull-back through a conjugator: if J = S A S^{-1}, the limit set of <A>
/// is S^{-1} applied to the limit set of <J> componentwise.
LimitSet conjugate_limit_set(const LimitSet& ls, const QMatrix& s);

/// Limit set of <g> in the original coordinates: canonical sets pulled back
/// through the row conjugator.
LimitSet limit_set_of(const ElementClass& row);

/// Membership test: distance of p to the Lambda-level union. Whole gives
/// (true, 0); Empty gives (false, 1).
std::pair<bool, double> limit_set_membership(const ProjPoint& p, const LimitSet& ls, double tol);

/// Worst-case matching defect between the Lambda components of two limit
/// sets (1.0 on structural mismatch). Used by the equivariance checks.
double limit_set_defect(const LimitSet& a, const LimitSet& b);

}  // namespace qproj

#endif
