#ifndef QPROJ_DYNAMICS_HPP
#define QPROJ_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qproj/limit_set.hpp"

namespace qproj {

/// Orbit of a seed under repeated application with per-step renormalization;
/// powers[t] is the signed exponent of the t-th entry (powers[0] = 0).
struct OrbitRecord {
  std::vector<ProjPoint> points;
  std::vector<long> powers;
};

OrbitRecord iterate_orbit(const QMatrix& g, const ProjPoint& seed, int steps, int direction);

/// Greedy first-fit clustering at radius eps over the orbit tail (the last
/// tail_fraction of the record); returns canonical cluster centroids.
std::vector<ProjPoint> accumulation_points(const OrbitRecord& orbit, double eps,
                                           double tail_fraction);

/// Limit of g^m normalized by its top singular value, tracked along the
/// power-of-two subsequence (renormalized squaring between checkpoints).
struct PseudoLimit {
  QMatrix limit;        // top singular value 1 when converged
  ProjSubspace kernel;  // right-singular directions with sigma/sigma1 <= rank_eps
  ProjSubspace image;   // left-singular directions with sigma/sigma1 > rank_eps
  bool converged = false;
  double defect = 0.0;  // difference of the last two checkpoints
  long power = 0;       // exponent of the final checkpoint
};

PseudoLimit pseudo_projective_limit(const QMatrix& g, int max_doublings, int direction,
                                    double conv_tol = 1e-8, double rank_eps = 1e-6);

/// Accumulation points of {g^(dir*m)(x)} for x in the sample and m near
/// max_power (a trailing window), clustered at cluster_eps.
std::vector<ProjPoint> compact_pushforward_limit(const QMatrix& g,
                                                 const std::vector<ProjPoint>& sample,
                                                 long max_power, int direction,
                                                 double cluster_eps);

/// Moving-target variant: the sampled compact set may depend on the power m.
std::vector<ProjPoint> compact_pushforward_limit(
    const QMatrix& g, const std::function<std::vector<ProjPoint>(long)>& sample_at,
    const std::vector<long>& powers, int direction, double cluster_eps);

struct SingularGrowthRow {
  long m = 0;
  double sigma1 = 0;
  double sigma2 = 0;
  double sigma1_over_binom = 0;  // sigma1 / C(m, n)
  double sigma2_over_m = 0;
};

/// Singular values of J(1, n+1)^m over a power range, computed from the
/// exact binomial form of the power. Throws Overflow when C(m, n) leaves the
/// representable range.
std::vector<SingularGrowthRow> jordan_block_singular_growth(int n, long m_from, long m_to,
                                                            long m_step = 1);

struct VerifyParams {
  std::uint64_t seed = 0;
  int iters = 10000;        // orbit length per task
  int num_seeds = 50;       // random orbit seeds
  int num_compact = 20;     // random compact samples
  int compact_points = 5;   // points per compact sample
  double eps_contain = -1;  // <= 0 picks the row default (1e-6 loxo, 1e-2 parabolic)
  double eps_recur = 1e-2;
  long recur_max_m = 100000;
  int coverage_samples = 50;
  double accum_eps = 1e-6;
  double tail_fraction = 0.5;
  // Power-of-two checkpoints up to 2^max_doublings; unipotent rows need
  // m ~ 2^38 before three successive checkpoint gaps drop below conv_tol.
  int max_doublings = 42;
  double conv_tol = 1e-8;
};

struct CoverageEntry {
  int component = 0;
  double distance = 1.0;  // worst-case min distance from the witness cloud
  std::string method;     // "orbit", "construction", "frame"
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::string row;
  int dim = 0;
  double eps_contain = 0;

  bool containment_applicable = false;
  double containment = 0.0;
  int accumulation_count = 0;
  double max_membership_distance = 0.0;

  std::vector<CoverageEntry> coverage;

  bool elliptic_checked = false;
  bool orbit_finite = false;
  long projective_order = 0;
  long orbit_distinct_points = 0;
  long recurrence_m = 0;
  double recurrence_displacement = 1.0;

  bool pseudo_converged = false;
  double pseudo_defect = 0.0;
  long pseudo_power = 0;
  double image_in_lambda = -1.0;  // max distance of image generators to Lambda
};

/// Numerical witness run for a classified element against its predicted
/// limit set (in original coordinates). Deterministic given params.seed.
VerificationReport verify_limit_set(const QMatrix& g, const ElementClass& row,
                                    const LimitSet& predicted, const VerifyParams& params);

}  // namespace qproj

#endif
