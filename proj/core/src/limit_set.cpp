#include "qproj/limit_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qproj {

const char* limit_kind_name(LimitKind k) {
  switch (k) {
    case LimitKind::Empty: return "Empty";
    case LimitKind::Whole: return "Whole";
    case LimitKind::Union: return "Union";
  }
  return "Unknown";
}

const std::vector<int>* LimitSet::level(const std::string& name) const {
  auto it = levels.find(name);
  return it == levels.end() ? nullptr : &it->second;
}

std::vector<const ProjSubspace*> LimitSet::lambda_components() const {
  std::vector<const ProjSubspace*> out;
  if (const auto* idx = level("Lambda")) {
    for (int i : *idx) out.push_back(&components[i]);
  }
  return out;
}

namespace {

std::vector<int> range_axes(int from, int to) {  // inclusive, may be empty
  std::vector<int> out;
  for (int i = from; i <= to; ++i) out.push_back(i);
  return out;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

ProjSubspace axis_points(int dim, const std::vector<int>& axes) {
  std::vector<ProjPoint> pts;
  pts.reserve(axes.size());
  for (int a : axes) pts.push_back(ProjPoint::axis(dim, a));
  ProjSubspace s = point_set(std::move(pts));
  s.axes = axes;
  return s;
}

}  // namespace

LimitSet kulkarni_sets_canonical(const ElementClass& row) {
  const int dim = row.dim;
  LimitSet ls;
  ls.dim = dim;

  switch (row.tag) {
    case ClassTag::EllipticRational: {
      ls.kind = LimitKind::Empty;
      break;
    }
    case ClassTag::EllipticSimpleIrrational: {
      ls.kind = LimitKind::Whole;
      ls.components.push_back(axis_subspace(dim, range_axes(1, dim), SubspaceFlavor::ComplexSlice));
      ls.levels["L0"] = {0};
      break;
    }
    case ClassTag::EllipticCompound: {
      ls.kind = LimitKind::Whole;
      std::vector<int> l0;
      if (!row.rational_axes.empty()) {
        ls.components.push_back(axis_subspace(dim, row.rational_axes));
        l0.push_back(static_cast<int>(ls.components.size()) - 1);
      }
      for (const auto& cluster : row.screw_clusters) {
        ls.components.push_back(axis_subspace(dim, cluster, SubspaceFlavor::ComplexSlice));
        l0.push_back(static_cast<int>(ls.components.size()) - 1);
      }
      if (!row.isolated_axes.empty()) {
        ls.components.push_back(axis_points(dim, row.isolated_axes));
        l0.push_back(static_cast<int>(ls.components.size()) - 1);
      }
      ls.levels["L0"] = l0;
      break;
    }
    case ClassTag::Parabolic1: {
      ls.kind = LimitKind::Union;
      ls.components.push_back(axis_subspace(dim, range_axes(1, dim - 1)));
      ls.components.push_back(axis_points(dim, {1}));
      ls.levels["Lambda"] = {0};
      ls.levels["L0"] = {1};
      ls.levels["L1"] = {1};
      ls.levels["L2"] = {0};
      break;
    }
    case ClassTag::Parabolic2: {
      ls.kind = LimitKind::Union;
      ls.components.push_back(axis_subspace(dim, range_axes(1, row.k + row.l - 1)));
      ls.levels["Lambda"] = {0};
      break;
    }
    case ClassTag::Parabolic3: {
      const int l = row.l;
      ls.kind = LimitKind::Union;
      ls.components.push_back(
          axis_subspace(dim, concat(range_axes(1, l - 1), range_axes(l + 1, 2 * l - 1))));
      ls.levels["Lambda"] = {0};
      break;
    }
    case ClassTag::Parabolic4: {
      const int k = row.k;
      const int l = row.l;
      ls.kind = LimitKind::Union;
      ls.components.push_back(
          axis_subspace(dim, concat(range_axes(1, k - 1), range_axes(k + 1, k + l - 1))));
      ls.levels["Lambda"] = {0};
      break;
    }
    case ClassTag::Loxodromic1: {
      ls.kind = LimitKind::Union;
      ls.components.push_back(axis_subspace(dim, range_axes(1, dim - 1)));
      ls.components.push_back(axis_subspace(dim, range_axes(2, dim)));
      ls.components.push_back(axis_points(dim, range_axes(1, dim)));
      ls.levels["Lambda"] = {0, 1};
      ls.levels["L0"] = {2};
      ls.levels["L1"] = {2};
      ls.levels["L2"] = {0, 1};
      break;
    }
    case ClassTag::Loxodromic2: {
      ls.kind = LimitKind::Union;
      ls.components.push_back(axis_subspace(dim, range_axes(1, dim - 1)));
      ls.components.push_back(axis_subspace(dim, range_axes(row.m + 1, dim)));
      ls.levels["Lambda"] = {0, 1};
      break;
    }
    case ClassTag::Loxoparabolic: {
      const int k = row.k;
      const int l = row.l;
      ls.kind = LimitKind::Union;
      ls.components.push_back(
          axis_subspace(dim, concat(range_axes(1, k - 1), range_axes(k + 1, k + l))));
      ls.components.push_back(axis_subspace(dim, range_axes(1, k + l - 1)));
      ls.components.push_back(axis_points(dim, {1, k + 1}));
      ls.levels["Lambda"] = {0, 1};
      ls.levels["L0"] = {2};
      ls.levels["L1"] = {2};
      ls.levels["L2"] = {0, 1};
      break;
    }
    case ClassTag::OutOfCatalog:
      throw Error(Errc::OutOfCatalogRow, "no closed form for an out-of-catalog element");
  }
  return ls;
}

namespace {

// Re-derive the axes annotation when every generator landed back on a
// coordinate axis (pull-backs through permutations keep axis alignment).
void refresh_axes(ProjSubspace& s) {
  s.axes.clear();
  std::vector<int> axes;
  for (const auto& g : s.generators) {
    int axis = -1;
    for (int i = 0; i < g.dim(); ++i) {
      const Quaternion& q = g[i];
      if (std::abs(q.a0 - 1.0) <= 1e-12 && std::abs(q.a1) <= 1e-12 && std::abs(q.a2) <= 1e-12 &&
          std::abs(q.a3) <= 1e-12) {
        if (axis >= 0) return;  // more than one live coordinate
        axis = i;
      } else if (q.norm() > 1e-12) {
        return;
      }
    }
    if (axis < 0) return;
    axes.push_back(axis + 1);
  }
  s.axes = std::move(axes);
}

}  // namespace

LimitSet conjugate_limit_set(const LimitSet& ls, const QMatrix& s) {
  const QMatrix s_inv = inverse(s);  // throws Singular
  LimitSet out;
  out.kind = ls.kind;
  out.dim = ls.dim;
  out.levels = ls.levels;
  out.components.reserve(ls.components.size());
  for (const auto& comp : ls.components) {
    ProjSubspace mapped = apply_transform(s_inv, comp);
    refresh_axes(mapped);
    out.components.push_back(std::move(mapped));
  }
  return out;
}

LimitSet limit_set_of(const ElementClass& row) {
  return conjugate_limit_set(kulkarni_sets_canonical(row), row.row_conjugator);
}

std::pair<bool, double> limit_set_membership(const ProjPoint& p, const LimitSet& ls, double tol) {
  if (ls.kind == LimitKind::Whole) return {true, 0.0};
  if (ls.kind == LimitKind::Empty) return {false, 1.0};
  double best = 1.0;
  for (const ProjSubspace* comp : ls.lambda_components()) {
    best = std::min(best, distance_to_subspace(p, *comp));
  }
  return {best <= tol, best};
}

double limit_set_defect(const LimitSet& a, const LimitSet& b) {
  if (a.kind != b.kind) return 1.0;
  if (a.kind != LimitKind::Union) return 0.0;
  auto ac = a.lambda_components();
  auto bc = b.lambda_components();
  if (ac.size() != bc.size()) return 1.0;
  // Best bijective matching; component counts are tiny (<= 3 in the catalog).
  std::vector<int> perm(bc.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = 1.0;
  do {
    double worst = 0.0;
    for (size_t i = 0; i < ac.size(); ++i) {
      worst = std::max(worst, subspace_defect(*ac[i], *bc[perm[i]]));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace qproj
