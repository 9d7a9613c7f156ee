#ifndef QPROJ_JORDAN_HPP
#define QPROJ_JORDAN_HPP

#include <optional>
#include <vector>

#include "qproj/qmatrix.hpp"

namespace qproj {

/// Exact angle information attached to a declared block eigenvalue.
/// Rational angles are exact fractions p/q of a full turn; irrational ones
/// carry their numeric value and a promise that no fraction represents them.
struct AngleDecl {
  bool rational = false;
  long long p = 0;
  long long q = 1;
  double value = 0.0;  // angle in turns, equals p/q when rational

  static AngleDecl make_rational(long long p, long long q);
  static AngleDecl make_irrational(double turns);
};

struct JordanBlock {
  ComplexRep eigenvalue;
  int size = 1;
  std::optional<AngleDecl> angle;  // declared angle, if the input carried one
};

/// Jordan structure of a matrix: blocks sorted canonically (descending
/// modulus, then descending size, then ascending argument), a conjugator S
/// with S A S^{-1} = J, and the Frobenius defect of that identity.
struct JordanData {
  std::vector<JordanBlock> blocks;
  QMatrix conjugator;
  double residual = 0.0;

  int dim() const;
  bool semisimple() const;
  /// The block-diagonal Jordan matrix assembled from `blocks`.
  QMatrix jordan_matrix() const;
  /// Offset of the first coordinate of block b in Jordan coordinates.
  int block_offset(int b) const;
};

void sort_blocks_canonical(std::vector<JordanBlock>& blocks, std::vector<int>* perm = nullptr);

/// Numeric Jordan analysis through the complex adjoint embedding: eigenvalue
/// clustering, generalized-eigenvector chains per cluster, and pull-back of
/// the chain vectors to H^n. Supported for dim <= 8 with cluster separation
/// greater than cluster_tol; beyond that callers must declare blocks.
/// Throws ClusterOverlap or ChainDefect on numerical breakdown.
JordanData jordan_analyze_numeric(const QMatrix& A, double cluster_tol = 1e-6);

/// Exact-blocks analysis: the caller declares the block structure (and
/// optionally the conjugator C with C A C^{-1} = declared Jordan matrix).
/// Blocks are re-sorted canonically with the permutation folded into the
/// conjugator; the residual is measured against A.
JordanData jordan_analyze_exact(const QMatrix& A, std::vector<JordanBlock> declared,
                                const std::optional<QMatrix>& conjugator);

}  // namespace qproj

#endif
