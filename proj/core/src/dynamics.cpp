#include "qproj/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

namespace qproj {

namespace {

// Deterministic sub-stream seeding.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t tag) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(tag)));
}

Quaternion random_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng), n(rng), n(rng)};
}

ProjPoint random_point(std::mt19937_64& rng, int dim) {
  while (true) {
    std::vector<Quaternion> x(dim);
    double nn = 0;
    for (auto& q : x) {
      q = random_quaternion(rng);
      nn += q.norm_sq();
    }
    if (nn > 1e-6) return ProjPoint(std::move(x));
  }
}

// Incremental greedy first-fit clustering of projective points.
class Clusterer {
 public:
  explicit Clusterer(double eps) : eps_(eps) {}

  void add(const ProjPoint& p) {
    for (auto& c : refs_) {
      if (fs_distance(c.ref, p) <= eps_) {
        const Quaternion u = herm_dot(p, c.ref);
        const Quaternion align = u.norm() > 1e-12 ? u * (1.0 / u.norm()) : Quaternion(1.0);
        for (int t = 0; t < p.dim(); ++t) c.sum[t] += p[t] * align;
        c.count += 1;
        return;
      }
    }
    Entry e;
    e.ref = p;
    e.sum = p.coords();
    e.count = 1;
    refs_.push_back(std::move(e));
  }

  std::vector<ProjPoint> centroids() const {
    std::vector<ProjPoint> out;
    out.reserve(refs_.size());
    for (const auto& c : refs_) out.emplace_back(c.sum);
    return out;
  }

  size_t size() const { return refs_.size(); }

 private:
  struct Entry {
    ProjPoint ref;
    std::vector<Quaternion> sum;
    int count = 0;
  };
  double eps_;
  std::vector<Entry> refs_;
};

QMatrix direction_matrix(const QMatrix& g, int direction) {
  if (direction >= 0) return g;
  return inverse(g);  // throws Singular
}

}  // namespace

OrbitRecord iterate_orbit(const QMatrix& g, const ProjPoint& seed, int steps, int direction) {
  if (steps < 1) throw Error(Errc::DimensionMismatch, "orbit needs at least one step");
  const QMatrix h = direction_matrix(g, direction);
  OrbitRecord rec;
  rec.points.reserve(steps + 1);
  rec.powers.reserve(steps + 1);
  rec.points.push_back(seed);
  rec.powers.push_back(0);
  ProjPoint x = seed;
  const long dir = direction >= 0 ? 1 : -1;
  for (int t = 1; t <= steps; ++t) {
    x = ProjPoint(h.apply(x.coords()));
    rec.points.push_back(x);
    rec.powers.push_back(dir * t);
  }
  return rec;
}

std::vector<ProjPoint> accumulation_points(const OrbitRecord& orbit, double eps,
                                           double tail_fraction) {
  if (orbit.points.empty()) return {};
  if (tail_fraction <= 0 || tail_fraction > 1) {
    throw Error(Errc::DimensionMismatch, "tail fraction must lie in (0, 1]");
  }
  const size_t n = orbit.points.size();
  const size_t take = std::max<size_t>(1, static_cast<size_t>(std::ceil(tail_fraction * n)));
  Clusterer cl(eps);
  for (size_t i = n - take; i < n; ++i) cl.add(orbit.points[i]);
  return cl.centroids();
}

PseudoLimit pseudo_projective_limit(const QMatrix& g, int max_doublings, int direction,
                                    double conv_tol, double rank_eps) {
  QMatrix b = direction_matrix(g, direction);
  {
    const QSvd s = qsvd(b);
    if (s.sigma.front() <= 0) throw Error(Errc::Singular, "zero matrix has no projective action");
    b = b * (1.0 / s.sigma.front());
  }

  PseudoLimit out;
  out.power = 1;
  int consecutive = 0;
  double last_diff = 1.0;
  for (int t = 0; t < max_doublings; ++t) {
    QMatrix next = b * b;
    const QSvd s = qsvd(next);
    next = next * (1.0 / s.sigma.front());
    last_diff = (next - b).frobenius_norm();
    b = next;
    out.power *= 2;
    if (last_diff < conv_tol) {
      if (++consecutive >= 3) break;
    } else {
      consecutive = 0;
    }
  }
  out.limit = b;
  out.defect = last_diff;
  out.converged = consecutive >= 3;

  const QSvd s = qsvd(out.limit);
  const int n = out.limit.dim();
  const double cut = rank_eps * s.sigma.front();
  std::vector<ProjPoint> kernel_gens, image_gens;
  const QMatrix vstar = s.v.conj_transpose();
  for (int i = 0; i < n; ++i) {
    std::vector<Quaternion> ucol(n), vcol(n);
    for (int r = 0; r < n; ++r) {
      ucol[r] = s.u.at(r, i);
      vcol[r] = vstar.at(r, i);
    }
    if (s.sigma[i] <= cut) {
      kernel_gens.emplace_back(std::move(vcol));
    } else {
      image_gens.emplace_back(std::move(ucol));
    }
  }
  if (!kernel_gens.empty()) out.kernel = subspace_span(kernel_gens);
  if (!image_gens.empty()) out.image = subspace_span(image_gens);
  return out;
}

std::vector<ProjPoint> compact_pushforward_limit(const QMatrix& g,
                                                 const std::vector<ProjPoint>& sample,
                                                 long max_power, int direction,
                                                 double cluster_eps) {
  if (max_power < 1) throw Error(Errc::DimensionMismatch, "max power must be positive");
  const QMatrix h = direction_matrix(g, direction);
  const long window = std::max<long>(1, max_power / 10);
  Clusterer cl(cluster_eps);
  for (const auto& p : sample) {
    ProjPoint x = p;
    for (long m = 1; m <= max_power; ++m) {
      x = ProjPoint(h.apply(x.coords()));
      if (m > max_power - window) cl.add(x);
    }
  }
  return cl.centroids();
}

std::vector<ProjPoint> compact_pushforward_limit(
    const QMatrix& g, const std::function<std::vector<ProjPoint>(long)>& sample_at,
    const std::vector<long>& powers, int direction, double cluster_eps) {
  const QMatrix h = direction_matrix(g, direction);
  Clusterer cl(cluster_eps);
  for (long m : powers) {
    if (m < 1) throw Error(Errc::DimensionMismatch, "powers must be positive");
    for (const auto& p : sample_at(m)) {
      ProjPoint x = p;
      for (long t = 0; t < m; ++t) x = ProjPoint(h.apply(x.coords()));
      cl.add(x);
    }
  }
  return cl.centroids();
}

namespace {

double binom(long m, int t) {
  double r = 1;
  for (int u = 0; u < t; ++u) r = r * static_cast<double>(m - u) / (u + 1);
  return r;
}

}  // namespace

std::vector<SingularGrowthRow> jordan_block_singular_growth(int n, long m_from, long m_to,
                                                            long m_step) {
  if (n < 1) throw Error(Errc::DimensionMismatch, "block parameter n must be >= 1");
  if (m_step < 1 || m_from < 1 || m_to < m_from) {
    throw Error(Errc::DimensionMismatch, "bad power range");
  }
  std::vector<SingularGrowthRow> rows;
  for (long m = m_from; m <= m_to; m += m_step) {
    const double top = binom(m, n);
    if (!std::isfinite(top) || top > 1e300) {
      throw Error(Errc::Overflow, "binomial coefficient exceeds double range");
    }
    // Exact binomial form of J(1, n+1)^m.
    QMatrix p(n + 1);
    for (int r = 0; r <= n; ++r) {
      for (int c = r; c <= n; ++c) p.at(r, c) = binom(m, c - r);
    }
    const QSvd s = qsvd(p);
    SingularGrowthRow row;
    row.m = m;
    row.sigma1 = s.sigma[0];
    row.sigma2 = s.sigma.size() > 1 ? s.sigma[1] : 0.0;
    row.sigma1_over_binom = row.sigma1 / top;
    row.sigma2_over_m = row.sigma2 / static_cast<double>(m);
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// verify_limit_set
// ---------------------------------------------------------------------------

namespace {

double row_default_eps_contain(const ElementClass& row) {
  switch (row.coarse) {
    case CoarseClass::Loxodromic:
    case CoarseClass::Loxoparabolic: return 1e-6;
    default: return 1e-2;
  }
}

// Random point of a component: right combinations of the generators for
// spans, one of the points for point sets.
ProjPoint sample_component(const ProjSubspace& comp, std::mt19937_64& rng) {
  if (comp.flavor == SubspaceFlavor::PointSet) {
    return comp.generators[rng() % comp.generators.size()];
  }
  const int dim = comp.generators.front().dim();
  while (true) {
    std::vector<Quaternion> acc(dim);
    for (const auto& gen : comp.generators) {
      const Quaternion c = random_quaternion(rng);
      for (int t = 0; t < dim; ++t) acc[t] += gen[t] * c;
    }
    double nn = 0;
    for (const auto& q : acc) nn += q.norm_sq();
    if (nn > 1e-6) return ProjPoint(std::move(acc));
  }
}

double min_distance_to_cloud(const ProjPoint& target, const std::vector<ProjPoint>& cloud) {
  double best = 1.0;
  for (const auto& p : cloud) best = std::min(best, fs_distance(p, target));
  return best;
}

// Closed-form witness sequences from the loxodromic limit-set arguments, in
// row coordinates: points w with g^(dir k)(w) converging to the target while
// w itself stays away from the point levels. Magnitudes are assembled in log
// scale so large powers of the moduli cannot overflow.
ProjPoint loxodromic_witness(const ElementClass& row, const ProjPoint& target_row, int component,
                             long k) {
  const int dim = row.dim;
  std::vector<std::complex<double>> lam(dim);
  {
    int coord = 0;
    for (const auto& b : row.row_blocks) {
      for (int t = 0; t < b.size; ++t) lam[coord++] = b.eigenvalue.value();
    }
  }
  const bool forward = component == 1;  // component 1 = upper axes, reached forward
  std::vector<std::complex<double>> w(dim, 0.0);

  // Indices of the target's support in row coordinates and the balancing
  // coordinate carrying the sum.
  int lo, hi, bal;
  if (row.tag == ClassTag::Loxodromic1) {
    if (forward) {
      lo = 1, hi = dim - 1, bal = 0;
    } else {
      lo = 0, hi = dim - 2, bal = dim - 1;
    }
  } else {  // Loxodromic2
    if (forward) {
      lo = row.m, hi = dim - 1, bal = row.m - 1;
    } else {
      lo = 0, hi = dim - 2, bal = dim - 1;
    }
  }

  // w_i = lambda_i^{-dir k} x_i on the support, w_bal = sum of those.
  double max_log = -1e300;
  std::vector<double> logmag(dim, -1e300);
  std::vector<std::complex<double>> phase(dim, 0.0);
  const double dir = forward ? -1.0 : 1.0;  // forward uses lambda^{-k}
  for (int i = lo; i <= hi; ++i) {
    const Quaternion xi = target_row[i];
    if (xi.norm() < 1e-14) continue;
    const double lmag = std::abs(lam[i]);
    const double larg = std::arg(lam[i]);
    logmag[i] = dir * k * std::log(lmag) + std::log(xi.norm());
    // Keep the quaternionic direction of x_i, rotated by the complex phase.
    phase[i] = std::polar(1.0, dir * k * larg);
    max_log = std::max(max_log, logmag[i]);
  }
  if (max_log < -1e299) return target_row;  // degenerate target
  std::vector<Quaternion> coords(dim);
  Quaternion balance;
  for (int i = lo; i <= hi; ++i) {
    if (logmag[i] < -1e299) continue;
    const double scale = std::exp(logmag[i] - max_log);
    const Quaternion dirq = target_row[i] * (1.0 / target_row[i].norm());
    const Quaternion val = Quaternion::from_complex(phase[i] * scale) * dirq;
    coords[i] = val;
    balance += val;
  }
  coords[bal] = balance;
  return ProjPoint(std::move(coords));
}

// Signed binomial entries of J(1, size)^m, valid for either sign of m.
QMatrix unipotent_power_binomial(int size, long m) {
  QMatrix p(size);
  for (int r = 0; r < size; ++r) {
    for (int c = r; c < size; ++c) {
      const int t = c - r;
      double coef = 1;
      for (int u = 0; u < t; ++u) coef = coef * static_cast<double>(m - u) / (u + 1);
      p.at(r, c) = coef;
    }
  }
  return p;
}

// SVD frame of the exact power J_row^m in row coordinates, assembled block
// by block: the singular triples of lambda^m J(1,s)^m are those of the
// well-scaled binomial power, with the modulus growth kept as a log scale.
// Cross-block ratios therefore never leave double range.
struct GradedFrame {
  bool usable = false;
  int d = 0;  // generators of the component this frame serves
  std::vector<std::vector<Quaternion>> ucols;  // slot-ordered, descending sigma
  std::vector<double> log_sigma;
};

// Largest power keeping every block's internal singular range resolvable:
// a block of size s spans roughly C(m, s-1)^2 between its extreme singular
// values, and everything above the balance slot must stay clear of the
// grouping noise floor.
long graded_frame_power(const std::vector<JordanBlock>& blocks) {
  long m = 2000;
  for (const auto& b : blocks) {
    if (b.size < 2) continue;
    long lo = 4, hi = m;
    while (lo < hi) {  // largest mm with C(mm, size-1) <= 8e6
      const long mid = (lo + hi + 1) / 2;
      double coef = 1;
      for (int u = 0; u < b.size - 1; ++u) coef *= static_cast<double>(mid - u) / (u + 1);
      if (coef <= 8e6) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    m = std::min(m, lo);
  }
  return m;
}

GradedFrame graded_row_frame(const ElementClass& row, long m, const ProjSubspace& comp_row) {
  GradedFrame fr;
  fr.d = static_cast<int>(comp_row.generators.size());
  const int dim = row.dim;
  if (fr.d >= dim) return fr;

  struct Slot {
    double log_sigma;
    std::vector<Quaternion> ucol;
  };
  std::vector<Slot> slots;
  int offset = 0;
  for (const auto& b : row.row_blocks) {
    const QSvd svd = qsvd(unipotent_power_binomial(b.size, m));
    const double base = m * std::log(b.eigenvalue.modulus());
    for (int i = 0; i < b.size; ++i) {
      Slot s;
      s.log_sigma = base + std::log(std::max(svd.sigma[i], 1e-300));
      s.ucol.assign(dim, Quaternion());
      for (int r = 0; r < b.size; ++r) s.ucol[offset + r] = svd.u.at(r, i);
      slots.push_back(std::move(s));
    }
    offset += b.size;
  }
  std::stable_sort(slots.begin(), slots.end(),
                   [](const Slot& a, const Slot& b) { return a.log_sigma > b.log_sigma; });
  // An ambiguous split at the component boundary makes the frame unreliable.
  if (slots[fr.d - 1].log_sigma - slots[fr.d].log_sigma < 1e-6) return fr;

  for (auto& s : slots) {
    fr.ucols.push_back(std::move(s.ucol));
    fr.log_sigma.push_back(s.log_sigma);
  }
  std::vector<ProjPoint> uspan_gens;
  for (int i = 0; i < fr.d; ++i) uspan_gens.emplace_back(fr.ucols[i]);
  // The component must agree with span of the top-d left directions; a
  // sloppy match only makes the measured witness distance larger.
  fr.usable = subspace_defect(subspace_span(uspan_gens), comp_row) <= 0.05;
  return fr;
}

// Image of the frame lift of a target: the weights 1/sigma_t cancel against
// the power's singular values slot by slot, so the image is evaluated in
// closed form with only the (vanishing) balance term carrying a sigma ratio.
std::optional<ProjPoint> graded_attained(const GradedFrame& fr, const ProjPoint& target_row) {
  const int dim = target_row.dim();
  std::vector<Quaternion> xi(fr.d);
  double xmax = 0;
  for (int t = 0; t < fr.d; ++t) {
    Quaternion acc;
    for (int r = 0; r < dim; ++r) acc += fr.ucols[t][r].conj() * target_row[r];
    xi[t] = acc;
    xmax = std::max(xmax, acc.norm());
  }
  if (xmax <= 1e-14) return std::nullopt;
  std::vector<Quaternion> y(dim);
  Quaternion balance;
  for (int t = 0; t < fr.d; ++t) {
    for (int r = 0; r < dim; ++r) y[r] += fr.ucols[t][r] * xi[t];
    const double ratio = std::exp(fr.log_sigma[fr.d] - fr.log_sigma[t]);
    balance += xi[t] * ratio;
  }
  for (int r = 0; r < dim; ++r) y[r] += fr.ucols[fr.d][r] * balance;
  return ProjPoint(std::move(y));
}

}  // namespace

VerificationReport verify_limit_set(const QMatrix& g, const ElementClass& row,
                                    const LimitSet& predicted, const VerifyParams& params) {
  VerificationReport rep;
  rep.seed = params.seed;
  rep.row = class_tag_name(row.tag);
  rep.dim = row.dim;
  rep.eps_contain = params.eps_contain > 0 ? params.eps_contain : row_default_eps_contain(row);

  const QMatrix gi = inverse(g);

  // (a) Containment: accumulation points of random orbits and random compact
  // samples, both directions, against the Lambda union.
  std::vector<ProjPoint> cloud;
  if (predicted.kind == LimitKind::Union) {
    rep.containment_applicable = true;
    // The tail is subsampled to a bounded number of cluster insertions per
    // orbit; slowly crawling (parabolic-rate) orbits would otherwise spend
    // quadratic work on clusters a hair apart.
    auto run_orbit = [&](const ProjPoint& seed, const QMatrix& h, Clusterer& cl) {
      ProjPoint x = seed;
      const int tail_start = static_cast<int>(params.iters * (1.0 - params.tail_fraction));
      const int stride = std::max(1, (params.iters - tail_start) / 512);
      for (int t = 1; t <= params.iters; ++t) {
        x = ProjPoint(h.apply(x.coords()));
        if (t > tail_start && (t - tail_start) % stride == 0) cl.add(x);
      }
    };
    std::vector<ProjPoint> seeds;
    {
      auto rng = stream(params.seed, 0x5eed);
      for (int i = 0; i < params.num_seeds; ++i) seeds.push_back(random_point(rng, row.dim));
      for (int i = 0; i < params.num_compact; ++i) {
        const ProjPoint center = random_point(rng, row.dim);
        for (int t = 0; t < params.compact_points; ++t) {
          std::vector<Quaternion> x = center.coords();
          for (auto& q : x) q += 0.05 * random_quaternion(rng);
          seeds.emplace_back(std::move(x));
        }
      }
    }
    for (const auto& seed : seeds) {
      for (const QMatrix* h : {&g, &gi}) {
        Clusterer cl(params.accum_eps);
        run_orbit(seed, *h, cl);
        for (const auto& c : cl.centroids()) cloud.push_back(c);
      }
    }
    rep.accumulation_count = static_cast<int>(cloud.size());
    int inside = 0;
    for (const auto& p : cloud) {
      const auto [member, dist] = limit_set_membership(p, predicted, rep.eps_contain);
      rep.max_membership_distance = std::max(rep.max_membership_distance, dist);
      if (member) ++inside;
    }
    rep.containment = cloud.empty() ? 0.0 : static_cast<double>(inside) / cloud.size();
  } else if (predicted.kind == LimitKind::Whole) {
    rep.containment_applicable = true;
    rep.containment = 1.0;  // membership is trivial on the whole space
  }

  // (b) Coverage of each Lambda component by witnesses.
  const auto* lambda_idx = predicted.level("Lambda");
  if (predicted.kind == LimitKind::Union && lambda_idx) {
    const QMatrix s_row_inv = inverse(row.row_conjugator);
    // Canonical components share the indexing with the predicted set and
    // stay axis-aligned in row coordinates, where the witness frames live.
    const LimitSet canonical = kulkarni_sets_canonical(row);
    const long m_row = graded_frame_power(row.row_blocks);

    for (int ci : *lambda_idx) {
      const ProjSubspace& comp = predicted.components[ci];
      const ProjSubspace& comp_row = canonical.components[ci];
      CoverageEntry entry;
      entry.component = ci;
      entry.method = "orbit";

      auto rng = stream(params.seed, 0xc0e ^ static_cast<std::uint64_t>(ci));
      std::vector<ProjPoint> targets;
      if (comp.flavor == SubspaceFlavor::PointSet || comp.generators.size() == 1) {
        targets = comp.generators;
      } else {
        for (int t = 0; t < params.coverage_samples; ++t) {
          targets.push_back(sample_component(comp, rng));
        }
      }

      const bool loxodromic_row =
          row.tag == ClassTag::Loxodromic1 || row.tag == ClassTag::Loxodromic2;
      // Witness machinery: the loxodromic rows use the closed-form moving
      // sequences; the parabolic and loxoparabolic rows lift targets through
      // the SVD frames of the exact binomial-form power in row coordinates.
      GradedFrame fr_fwd, fr_bwd;
      if (!loxodromic_row) {
        fr_fwd = graded_row_frame(row, m_row, comp_row);
        fr_bwd = graded_row_frame(row, -m_row, comp_row);
        if (fr_fwd.usable || fr_bwd.usable) entry.method = "frame";
      } else {
        entry.method = "construction";
      }

      // Which loxodromic component is this? Component index 0 is the lower
      // hyperplane (backward dynamics), 1 the upper (forward dynamics).
      const int lox_component = ci == (*lambda_idx)[0] ? 0 : 1;
      const long k_cover = std::min<long>(std::max(60, row.dim * 20), params.iters);

      double worst = 0;
      for (const auto& target : targets) {
        double best = min_distance_to_cloud(target, cloud);
        const ProjPoint target_row = apply_unchecked(row.row_conjugator, target);
        if (loxodromic_row) {
          // Build the witness in row coordinates, run the honest dynamics.
          const ProjPoint w_row = loxodromic_witness(row, target_row, lox_component, k_cover);
          ProjPoint x = apply_unchecked(s_row_inv, w_row);
          const QMatrix& h = lox_component == 1 ? g : gi;
          for (long t = 0; t < k_cover; ++t) x = ProjPoint(h.apply(x.coords()));
          best = std::min(best, fs_distance(x, target));
        } else {
          for (const GradedFrame* fr : {&fr_fwd, &fr_bwd}) {
            if (!fr->usable) continue;
            if (const auto attained_row = graded_attained(*fr, target_row)) {
              const ProjPoint attained = apply_unchecked(s_row_inv, *attained_row);
              best = std::min(best, fs_distance(attained, target));
            }
          }
        }
        worst = std::max(worst, best);
      }
      entry.distance = worst;
      rep.coverage.push_back(entry);
    }
  }

  // (c) Elliptic witnesses: exact finite order for the rational row, a
  // density-lemma recurrence otherwise.
  if (row.coarse == CoarseClass::Elliptic) {
    rep.elliptic_checked = true;
    auto rng = stream(params.seed, 0xe111);
    std::vector<ProjPoint> probes;
    for (int i = 0; i < 3; ++i) probes.push_back(random_point(rng, row.dim));

    long order_bound = 0;
    if (row.tag == ClassTag::EllipticRational) {
      long lcm = 1;
      bool ok = true;
      for (const auto& v : row.angles) {
        if (!v.rational) {
          ok = false;
          break;
        }
        const long long q = v.rational->second;
        const long long gg = std::gcd(static_cast<long long>(lcm), q);
        if (lcm / gg > 100000000 / q) {
          ok = false;  // order bound overflows any reasonable scan
          break;
        }
        lcm = lcm / gg * q;
      }
      if (ok) order_bound = 2 * lcm;
    }

    const long scan = order_bound > 0 ? std::min(order_bound, params.recur_max_m)
                                      : params.recur_max_m;
    std::vector<ProjPoint> xs = probes;
    for (long m = 1; m <= scan; ++m) {
      double disp = 0;
      for (size_t i = 0; i < xs.size(); ++i) {
        xs[i] = ProjPoint(g.apply(xs[i].coords()));
        disp = std::max(disp, fs_distance(xs[i], probes[i]));
      }
      if (order_bound > 0 && rep.projective_order == 0 && disp <= 1e-8) {
        rep.projective_order = m;
        rep.orbit_finite = true;
      }
      if (rep.recurrence_m == 0 && disp <= params.eps_recur) {
        rep.recurrence_m = m;
        rep.recurrence_displacement = disp;
      }
      if (rep.projective_order != 0 && rep.recurrence_m != 0) break;
      if (order_bound == 0 && rep.recurrence_m != 0) break;
    }

    // Orbit point-set size of a generic seed must equal the order exactly.
    if (rep.orbit_finite) {
      const ProjPoint seed = random_point(rng, row.dim);
      Clusterer cl(1e-8);
      ProjPoint x = seed;
      cl.add(x);
      for (long m = 1; m < rep.projective_order; ++m) {
        x = ProjPoint(g.apply(x.coords()));
        cl.add(x);
      }
      rep.orbit_distinct_points = static_cast<long>(cl.size());
    }
  }

  // Pseudo-projective limit of the forward powers.
  {
    const PseudoLimit pl =
        pseudo_projective_limit(g, params.max_doublings, +1, params.conv_tol);
    rep.pseudo_converged = pl.converged;
    rep.pseudo_defect = pl.defect;
    rep.pseudo_power = pl.power;
    if (predicted.kind == LimitKind::Union && pl.converged && !pl.image.generators.empty()) {
      double worst = 0;
      for (const auto& gen : pl.image.generators) {
        worst = std::max(worst, limit_set_membership(gen, predicted, rep.eps_contain).second);
      }
      rep.image_in_lambda = worst;
    }
  }

  return rep;
}

}  // namespace qproj
