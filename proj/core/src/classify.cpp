#include "qproj/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace qproj {

const char* class_tag_name(ClassTag t) {
  switch (t) {
    case ClassTag::EllipticRational: return "EllipticRational";
    case ClassTag::EllipticSimpleIrrational: return "EllipticSimpleIrrational";
    case ClassTag::EllipticCompound: return "EllipticCompound";
    case ClassTag::Parabolic1: return "Parabolic1";
    case ClassTag::Parabolic2: return "Parabolic2";
    case ClassTag::Parabolic3: return "Parabolic3";
    case ClassTag::Parabolic4: return "Parabolic4";
    case ClassTag::Loxodromic1: return "Loxodromic1";
    case ClassTag::Loxodromic2: return "Loxodromic2";
    case ClassTag::Loxoparabolic: return "Loxoparabolic";
    case ClassTag::OutOfCatalog: return "OutOfCatalog";
  }
  return "Unknown";
}

const char* coarse_class_name(CoarseClass c) {
  switch (c) {
    case CoarseClass::Elliptic: return "Elliptic";
    case CoarseClass::Parabolic: return "Parabolic";
    case CoarseClass::Loxodromic: return "Loxodromic";
    case CoarseClass::Loxoparabolic: return "Loxoparabolic";
  }
  return "Unknown";
}

int ElementClass::row_block_offset(int t) const {
  int off = 0;
  for (int i = 0; i < t; ++i) off += row_blocks[i].size;
  return off;
}

namespace {

std::optional<std::pair<long long, long long>> rational_approx(double x, long long max_den,
                                                               double tol) {
  x -= std::floor(x);
  // Continued-fraction convergents h_k/q_k; the first one within tol wins.
  long long h0 = 0, q0 = 1, h1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    const double af = std::floor(v);
    if (af > 9.2e18) break;
    const long long a = static_cast<long long>(af);
    const long long h2 = a * h1 + h0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_den || q2 <= 0) break;
    h0 = h1;
    q0 = q1;
    h1 = h2;
    q1 = q2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(q1)) <= tol) {
      long long p = h1 % q1;
      if (p < 0) p += q1;
      return std::make_pair(p, q1);
    }
    const double frac = v - af;
    if (frac < 1e-18) break;
    v = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

AngleVerdict detect_rational_angle(const ComplexRep& lambda, long long max_den, double tol,
                                   double unit_eps) {
  if (std::abs(lambda.modulus() - 1.0) > unit_eps) {
    throw Error(Errc::NotUnitModulus, "rational angle detection needs a unit-modulus class");
  }
  AngleVerdict v;
  v.angle = lambda.angle_turns();
  v.rational = rational_approx(v.angle, max_den, tol);
  return v;
}

namespace {

AngleVerdict verdict_for(const JordanBlock& b, const ClassifyOptions& opts) {
  if (b.angle) {
    AngleVerdict v;
    v.declared = true;
    v.angle = b.angle->value;
    if (b.angle->rational) v.rational = std::make_pair(b.angle->p, b.angle->q);
    return v;
  }
  AngleVerdict v = detect_rational_angle(b.eigenvalue, opts.max_den, opts.tol, 1e-6);
  return v;
}

// True when the angular difference of two verdicts is rational. Two rational
// angles always qualify; a declared rational minus a declared irrational
// never does; anything else falls back to numeric detection.
bool difference_rational(const AngleVerdict& a, const AngleVerdict& b,
                         const ClassifyOptions& opts) {
  const bool ar = a.rational.has_value();
  const bool br = b.rational.has_value();
  if (ar && br) return true;
  if (a.declared && b.declared && ar != br) return false;
  // Declared angles are exact doubles, so a genuine screw relation shows up
  // at machine precision; the looser detection tolerance would relate almost
  // any two reals through some large-denominator convergent.
  const double tol = (a.declared && b.declared) ? std::min(opts.tol, 1e-13) : opts.tol;
  return rational_approx(a.angle - b.angle, opts.max_den, tol).has_value();
}

struct RowAssembly {
  ElementClass cls;
  bool matched = false;
};

QMatrix block_permutation(const std::vector<JordanBlock>& canonical,
                          const std::vector<int>& row_perm) {
  int dim = 0;
  for (const auto& b : canonical) dim += b.size;
  std::vector<int> canon_offset(canonical.size(), 0);
  for (size_t i = 1; i < canonical.size(); ++i) {
    canon_offset[i] = canon_offset[i - 1] + canonical[i - 1].size;
  }
  QMatrix P(dim);
  int row = 0;
  for (int bi : row_perm) {
    for (int t = 0; t < canonical[bi].size; ++t) {
      P.at(row, canon_offset[bi] + t) = 1.0;
      ++row;
    }
  }
  return P;
}

void finish_row(ElementClass& cls, const JordanData& jd_norm) {
  cls.row_blocks.clear();
  for (int bi : cls.row_perm) cls.row_blocks.push_back(jd_norm.blocks[bi]);
  const QMatrix P = block_permutation(jd_norm.blocks, cls.row_perm);
  cls.row_conjugator = P * jd_norm.conjugator;
}

}  // namespace

ElementClass catalog_match(const JordanData& jd, CoarseClass coarse, const ClassifyOptions& opts) {
  const auto& blocks = jd.blocks;
  const int nb = static_cast<int>(blocks.size());
  const double unit_tol = std::max(opts.tol, 1e-9);
  const double eig1_tol = std::max(opts.tol, 1e-8);

  ElementClass cls;
  cls.coarse = coarse;
  cls.dim = jd.dim();
  cls.tag = ClassTag::OutOfCatalog;

  auto identity_perm = [&] {
    std::vector<int> p(nb);
    std::iota(p.begin(), p.end(), 0);
    return p;
  };

  switch (coarse) {
    case CoarseClass::Elliptic: {
      std::vector<AngleVerdict> verdicts;
      verdicts.reserve(nb);
      for (const auto& b : blocks) verdicts.push_back(verdict_for(b, opts));
      cls.rationality_inferred =
          std::any_of(verdicts.begin(), verdicts.end(), [](const AngleVerdict& v) { return !v.declared; });

      const bool all_rational = std::all_of(verdicts.begin(), verdicts.end(),
                                            [](const AngleVerdict& v) { return v.rational.has_value(); });
      const bool none_rational = std::none_of(verdicts.begin(), verdicts.end(),
                                              [](const AngleVerdict& v) { return v.rational.has_value(); });
      bool all_equal = true;
      for (int i = 1; i < nb; ++i) {
        if (std::abs(verdicts[i].angle - verdicts[0].angle) > std::max(opts.tol, 1e-9)) {
          all_equal = false;
        }
      }

      if (all_rational) {
        cls.tag = ClassTag::EllipticRational;
        cls.row_perm = identity_perm();
        for (int t = 0; t < nb; ++t) cls.rational_axes.push_back(t + 1);
      } else if (none_rational && all_equal) {
        cls.tag = ClassTag::EllipticSimpleIrrational;
        cls.row_perm = identity_perm();
      } else {
        cls.tag = ClassTag::EllipticCompound;
        // Row layout: rational axes first, then irrational screw clusters
        // (pairwise rational differences), then isolated irrational axes.
        std::vector<int> rats, irrs;
        for (int i = 0; i < nb; ++i) {
          (verdicts[i].rational ? rats : irrs).push_back(i);
        }
        auto angle_less = [&](int x, int y) {
          if (verdicts[x].angle != verdicts[y].angle) return verdicts[x].angle < verdicts[y].angle;
          return x < y;
        };
        std::sort(rats.begin(), rats.end(), angle_less);
        // Union-find on the irrational axes by difference rationality.
        std::vector<int> parent(nb);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
          while (parent[x] != x) x = parent[x] = parent[parent[x]];
          return x;
        };
        for (size_t a = 0; a < irrs.size(); ++a) {
          for (size_t b = a + 1; b < irrs.size(); ++b) {
            if (difference_rational(verdicts[irrs[a]], verdicts[irrs[b]], opts)) {
              parent[find(irrs[a])] = find(irrs[b]);
            }
          }
        }
        std::vector<std::vector<int>> groups;
        for (int root : irrs) {
          if (find(root) != root) continue;
          std::vector<int> g;
          for (int i : irrs) {
            if (find(i) == root) g.push_back(i);
          }
          std::sort(g.begin(), g.end(), angle_less);
          groups.push_back(std::move(g));
        }
        // Screw clusters come before isolated axes, matching the catalog's
        // displayed union (slices first, then isolated points).
        std::stable_sort(groups.begin(), groups.end(), [&](const auto& ga, const auto& gb) {
          if ((ga.size() >= 2) != (gb.size() >= 2)) return ga.size() >= 2;
          return angle_less(ga.front(), gb.front());
        });

        cls.row_perm = rats;
        for (size_t i = 0; i < rats.size(); ++i) {
          cls.rational_axes.push_back(static_cast<int>(i) + 1);
        }
        int coord = static_cast<int>(rats.size());
        for (const auto& g : groups) {
          if (g.size() >= 2) {
            std::vector<int> axes;
            for (int i : g) {
              cls.row_perm.push_back(i);
              axes.push_back(++coord);
            }
            cls.screw_clusters.push_back(std::move(axes));
          } else {
            cls.row_perm.push_back(g.front());
            cls.isolated_axes.push_back(++coord);
          }
        }
      }
      // Reorder the verdicts into row layout.
      for (int bi : cls.row_perm) cls.angles.push_back(verdicts[bi]);
      break;
    }

    case CoarseClass::Parabolic: {
      std::vector<int> trivial, nontrivial;
      for (int i = 0; i < nb; ++i) (blocks[i].size == 1 ? trivial : nontrivial).push_back(i);

      auto block_is_one = [&](int i) {
        const auto& e = blocks[i].eigenvalue;
        return std::abs(e.re - 1.0) <= eig1_tol && e.im <= eig1_tol;
      };
      auto accepts = [&](int i) { return block_is_one(i) || opts.assume_extension; };

      if (nb == 1) {
        cls.tag = ClassTag::Parabolic1;
        cls.row_perm = identity_perm();
      } else if (nontrivial.size() == 1 && !trivial.empty() && accepts(nontrivial[0])) {
        cls.tag = ClassTag::Parabolic2;
        cls.k = static_cast<int>(trivial.size());
        cls.l = blocks[nontrivial[0]].size;
        cls.row_perm = trivial;  // diagonal part first, canonical order kept
        cls.row_perm.push_back(nontrivial[0]);
      } else if (nontrivial.size() == 2 && trivial.empty() &&
                 std::abs(blocks[nontrivial[0]].eigenvalue.re - blocks[nontrivial[1]].eigenvalue.re) <=
                     unit_tol &&
                 std::abs(blocks[nontrivial[0]].eigenvalue.im - blocks[nontrivial[1]].eigenvalue.im) <=
                     unit_tol &&
                 accepts(nontrivial[0]) && accepts(nontrivial[1])) {
        if (blocks[nontrivial[0]].size == blocks[nontrivial[1]].size) {
          cls.tag = ClassTag::Parabolic3;
          cls.l = blocks[nontrivial[0]].size;
        } else {
          cls.tag = ClassTag::Parabolic4;
          cls.k = std::max(blocks[nontrivial[0]].size, blocks[nontrivial[1]].size);
          cls.l = std::min(blocks[nontrivial[0]].size, blocks[nontrivial[1]].size);
        }
        // Canonical order already has the larger block first.
        cls.row_perm = nontrivial;
      } else {
        cls.diagnostics.push_back("Parabolic1: needs a single Jordan block");
        if (nontrivial.size() == 1 && !trivial.empty()) {
          cls.diagnostics.push_back(
              "Parabolic2: the Jordan block eigenvalue must be 1 (pass assume-extension to relax)");
        } else {
          cls.diagnostics.push_back(
              "Parabolic2: needs one Jordan block plus a diagonal part");
        }
        cls.diagnostics.push_back(
            "Parabolic3/4: need exactly two Jordan blocks with equal eigenvalue 1");
      }
      if (cls.tag != ClassTag::OutOfCatalog) {
        for (int bi : cls.row_perm) cls.angles.push_back(verdict_for(blocks[bi], opts));
        cls.rationality_inferred = std::any_of(cls.angles.begin(), cls.angles.end(),
                                               [](const AngleVerdict& v) { return !v.declared; });
      }
      break;
    }

    case CoarseClass::Loxodromic: {
      // Ascending moduli (the catalog's convention): reverse canonical order.
      std::vector<int> asc(nb);
      std::iota(asc.begin(), asc.end(), 0);
      std::reverse(asc.begin(), asc.end());
      const double mod_tol = std::max(opts.tol, 1e-9);
      // Group equal moduli along the ascending order.
      std::vector<std::vector<int>> groups;
      for (int idx : asc) {
        const double m = blocks[idx].eigenvalue.modulus();
        if (!groups.empty() &&
            std::abs(blocks[groups.back().back()].eigenvalue.modulus() - m) <= mod_tol) {
          groups.back().push_back(idx);
        } else {
          groups.push_back({idx});
        }
      }
      const bool all_single = std::all_of(groups.begin(), groups.end(),
                                          [](const auto& g) { return g.size() == 1; });
      const bool cluster_then_single =
          groups.size() >= 2 && groups.front().size() >= 2 &&
          std::all_of(groups.begin() + 1, groups.end(), [](const auto& g) { return g.size() == 1; });
      if (all_single && nb >= 2) {
        cls.tag = ClassTag::Loxodromic1;
        cls.row_perm = asc;
      } else if (cluster_then_single) {
        cls.tag = ClassTag::Loxodromic2;
        cls.m = static_cast<int>(groups.front().size());
        cls.p = nb - cls.m;
        cls.row_perm.clear();
        for (const auto& g : groups) {
          for (int i : g) cls.row_perm.push_back(i);
        }
      } else {
        cls.diagnostics.push_back("Loxodromic1: needs strictly increasing moduli");
        cls.diagnostics.push_back(
            "Loxodromic2: needs one equal-modulus cluster at the smallest modulus, then strictly "
            "increasing distinct moduli");
      }
      break;
    }

    case CoarseClass::Loxoparabolic: {
      if (nb == 2 && std::abs(blocks[0].eigenvalue.modulus() - blocks[1].eigenvalue.modulus()) >
                         std::max(opts.tol, 1e-9)) {
        cls.tag = ClassTag::Loxoparabolic;
        // Smaller modulus first; canonical order is descending, so reverse.
        cls.row_perm = {1, 0};
        cls.k = blocks[1].size;
        cls.l = blocks[0].size;
      } else {
        cls.diagnostics.push_back(
            "Loxoparabolic: needs exactly two Jordan blocks with distinct moduli");
      }
      break;
    }
  }

  if (cls.tag != ClassTag::OutOfCatalog) {
    finish_row(cls, jd);
  }
  return cls;
}

namespace {

std::pair<ElementClass, JordanData> classify_common(JordanData jd, const ClassifyOptions& opts) {
  // Real positive scaling is projectively trivial; normalize so the geometric
  // mean of the eigenvalue moduli is 1, which sends det_h to 1.
  double log_sum = 0;
  int dim = 0;
  for (const auto& b : jd.blocks) {
    const double m = b.eigenvalue.modulus();
    if (m <= kEps) throw Error(Errc::Singular, "zero eigenvalue class");
    log_sum += b.size * std::log(m);
    dim += b.size;
  }
  double rho = std::exp(-log_sum / dim);

  JordanData jd_norm = jd;
  for (auto& b : jd_norm.blocks) {
    b.eigenvalue = ComplexRep(b.eigenvalue.re * rho, b.eigenvalue.im * rho);
  }

  const double unit_tol = std::max(opts.tol, 1e-9);
  const bool all_unit =
      std::all_of(jd_norm.blocks.begin(), jd_norm.blocks.end(), [&](const JordanBlock& b) {
        return std::abs(b.eigenvalue.modulus() - 1.0) <= unit_tol;
      });
  const bool semisimple = jd_norm.semisimple();

  CoarseClass coarse;
  if (all_unit) {
    coarse = semisimple ? CoarseClass::Elliptic : CoarseClass::Parabolic;
  } else {
    coarse = semisimple ? CoarseClass::Loxodromic : CoarseClass::Loxoparabolic;
  }

  if (coarse == CoarseClass::Loxoparabolic && jd_norm.blocks.size() == 2) {
    // The catalog states this row on a GL lift with |lambda_1||lambda_2| = 1.
    const double prod =
        jd_norm.blocks[0].eigenvalue.modulus() * jd_norm.blocks[1].eigenvalue.modulus();
    const double rho2 = 1.0 / std::sqrt(prod);
    for (auto& b : jd_norm.blocks) {
      b.eigenvalue = ComplexRep(b.eigenvalue.re * rho2, b.eigenvalue.im * rho2);
    }
    rho *= rho2;
  }

  ElementClass cls = catalog_match(jd_norm, coarse, opts);
  cls.normalization = rho;
  return {std::move(cls), std::move(jd)};
}

}  // namespace

std::pair<ElementClass, JordanData> classify_element(const QMatrix& g,
                                                     const ClassifyOptions& opts) {
  if (det_h(g) <= kEps) throw Error(Errc::Singular, "classification needs det_h > 0");
  JordanData jd = jordan_analyze_numeric(g, opts.cluster_tol);
  return classify_common(std::move(jd), opts);
}

std::pair<ElementClass, JordanData> classify_element_exact(const QMatrix& g,
                                                           std::vector<JordanBlock> declared,
                                                           const std::optional<QMatrix>& conjugator,
                                                           const ClassifyOptions& opts) {
  if (det_h(g) <= kEps) throw Error(Errc::Singular, "classification needs det_h > 0");
  JordanData jd = jordan_analyze_exact(g, std::move(declared), conjugator);
  return classify_common(std::move(jd), opts);
}

}  // namespace qproj
