#ifndef QPROJ_CLASSIFY_HPP
#define QPROJ_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "qproj/jordan.hpp"

namespace qproj {

enum class ClassTag {
  EllipticRational,
  EllipticSimpleIrrational,
  EllipticCompound,
  Parabolic1,
  Parabolic2,
  Parabolic3,
  Parabolic4,
  Loxodromic1,
  Loxodromic2,
  Loxoparabolic,
  OutOfCatalog,
};

const char* class_tag_name(ClassTag t);

enum class CoarseClass { Elliptic, Parabolic, Loxodromic, Loxoparabolic };

const char* coarse_class_name(CoarseClass c);

/// Rotation angle in turns together with the detected (or declared) fraction.
struct AngleVerdict {
  double angle = 0.0;  // in [0, 1)
  std::optional<std::pair<long long, long long>> rational;
  bool declared = false;  // verdict came from the input, not from detection
};

/// Detects a rational angle by continued-fraction convergents of arg(lambda)
/// with denominator <= max_den and error <= tol. Requires |lambda| = 1 within
/// unit_eps (NotUnitModulus otherwise).
AngleVerdict detect_rational_angle(const ComplexRep& lambda, long long max_den, double tol,
                                   double unit_eps = 1e-6);

struct ClassifyOptions {
  bool numeric_mode = false;    // true: jordan_analyze_numeric on the matrix
  double tol = 1e-9;            // unit-modulus and rationality tolerance
  long long max_den = 1000000;  // continued-fraction denominator bound
  double cluster_tol = 1e-6;    // numeric-mode eigenvalue separation
  bool assume_extension = false;  // accept unit block eigenvalues != 1 in rows 2-4
};

/// The catalog verdict: a row tag plus the row's shape data and the
/// rearrangement of the canonical Jordan data into that row's coordinates.
struct ElementClass {
  ClassTag tag = ClassTag::OutOfCatalog;
  CoarseClass coarse = CoarseClass::Elliptic;
  int dim = 0;

  /// Blocks in the row's own coordinate layout (the catalog's conventions,
  /// e.g. ascending moduli for the loxodromic rows).
  std::vector<JordanBlock> row_blocks;
  /// row_blocks[t] == canonical blocks[row_perm[t]].
  std::vector<int> row_perm;
  /// S_row with S_row g S_row^{-1} = row-layout Jordan matrix.
  QMatrix row_conjugator;

  /// Positive real scalar the input was multiplied by before matching.
  double normalization = 1.0;
  /// Angle verdicts per row block (unit-modulus classes only).
  std::vector<AngleVerdict> angles;
  bool rationality_inferred = false;

  // Row shape parameters, when the tag has them.
  int k = 0;
  int l = 0;
  int m = 0;
  int p = 0;

  // Elliptic grouping in row coordinates (1-based axis indices): rational
  // axes, irrational clusters with pairwise-rational differences (size >= 2),
  // and isolated irrational axes.
  std::vector<int> rational_axes;
  std::vector<std::vector<int>> screw_clusters;
  std::vector<int> isolated_axes;

  /// For OutOfCatalog: why each nearby row failed to match.
  std::vector<std::string> diagnostics;

  int row_block_offset(int t) const;
};

/// Full classification: Jordan analysis, projective real-scalar
/// normalization, coarse class per the eigenvalue moduli and semisimplicity,
/// then catalog refinement.
std::pair<ElementClass, JordanData> classify_element(const QMatrix& g, const ClassifyOptions& opts);

/// As above but starting from declared blocks (exact mode).
std::pair<ElementClass, JordanData> classify_element_exact(const QMatrix& g,
                                                           std::vector<JordanBlock> declared,
                                                           const std::optional<QMatrix>& conjugator,
                                                           const ClassifyOptions& opts);

/// Catalog refinement of an analyzed element. `jd` must be canonical.
ElementClass catalog_match(const JordanData& jd, CoarseClass coarse, const ClassifyOptions& opts);

}  // namespace qproj

#endif
