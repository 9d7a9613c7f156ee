#include <doctest.h>

#include <cmath>

#include "qproj/jordan.hpp"
#include "test_support.hpp"

using namespace qproj;

namespace {

double recovery_defect(const QMatrix& a, const JordanData& jd) {
  const QMatrix s_inv = inverse(jd.conjugator, 1e-300);
  return (jd.conjugator * a * s_inv - jd.jordan_matrix()).frobenius_norm();
}

}  // namespace

TEST_CASE("already in jordan form") {
  const QMatrix a = QMatrix::jordan_block(1.0, 3);
  const JordanData jd = jordan_analyze_numeric(a);
  REQUIRE(jd.blocks.size() == 1);
  CHECK(jd.blocks[0].size == 3);
  CHECK(jd.blocks[0].eigenvalue.re == doctest::Approx(1.0));
  CHECK(jd.blocks[0].eigenvalue.im == doctest::Approx(0.0));
  CHECK(jd.residual <= 1e-8);
}

TEST_CASE("D(i,-i) gives two size-1 blocks in the class of i") {
  const QMatrix a = QMatrix::diagonal({Quaternion::i(), -Quaternion::i()});
  const JordanData jd = jordan_analyze_numeric(a);
  REQUIRE(jd.blocks.size() == 2);
  for (const auto& b : jd.blocks) {
    CHECK(b.size == 1);
    CHECK(b.eigenvalue.re == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(b.eigenvalue.im == doctest::Approx(1.0));
  }
  CHECK(jd.semisimple());
  CHECK(recovery_defect(a, jd) <= 1e-8);
}

TEST_CASE("hand-conjugated block is recovered") {
  const QMatrix p(2, {1.0, 1.0, 0.0, 1.0});
  const QMatrix a = p * QMatrix::jordan_block(2.0, 2) * inverse(p);
  const JordanData jd = jordan_analyze_numeric(a);
  REQUIRE(jd.blocks.size() == 1);
  CHECK(jd.blocks[0].size == 2);
  CHECK(jd.blocks[0].eigenvalue.re == doctest::Approx(2.0));
  CHECK(jd.residual <= 1e-8);
  CHECK(recovery_defect(a, jd) <= 1e-7);
}

TEST_CASE("canonical block order: modulus desc, size desc, arg asc") {
  std::vector<JordanBlock> blocks;
  auto mk = [](double re, double im, int size) {
    JordanBlock b;
    b.eigenvalue = ComplexRep(re, im);
    b.size = size;
    return b;
  };
  blocks.push_back(mk(0, 1, 1));     // |.|=1, arg 1/4
  blocks.push_back(mk(2, 0, 1));     // |.|=2
  blocks.push_back(mk(1, 0, 3));     // |.|=1, size 3
  blocks.push_back(mk(1, 0, 1));     // |.|=1, arg 0
  sort_blocks_canonical(blocks);
  CHECK(blocks[0].eigenvalue.re == doctest::Approx(2));
  CHECK(blocks[1].size == 3);
  CHECK(blocks[2].eigenvalue.re == doctest::Approx(1));
  CHECK(blocks[3].eigenvalue.im == doctest::Approx(1));
}

TEST_CASE("numeric recovery of conjugated structures") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<QMatrix> parts;
    std::vector<std::pair<double, int>> expect;  // (modulus, size) multiset
    const int kind = rep % 3;
    if (kind == 0) {
      parts.push_back(QMatrix::jordan_block(1.0, 3));
      expect = {{1.0, 3}};
    } else if (kind == 1) {
      parts.push_back(QMatrix::jordan_block(Quaternion::i(), 2));
      parts.push_back(QMatrix(1, {Quaternion(2.0)}));
      expect = {{2.0, 1}, {1.0, 2}};  // canonical order: modulus descending
    } else {
      parts.push_back(QMatrix::jordan_block(0.5, 2));
      parts.push_back(QMatrix::jordan_block(2.0, 2));
      expect = {{2.0, 2}, {0.5, 2}};
    }
    const QMatrix j = QMatrix::block_diag(parts);
    const QMatrix s = qtest::random_invertible(rng, j.dim(), 3.0);
    const QMatrix a = s * j * inverse(s);
    const JordanData jd = jordan_analyze_numeric(a);
    REQUIRE(jd.blocks.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) {
      CHECK(jd.blocks[i].eigenvalue.modulus() == doctest::Approx(expect[i].first).epsilon(1e-6));
      CHECK(jd.blocks[i].size == expect[i].second);
    }
    CHECK(recovery_defect(a, jd) <= 1e-6 * std::max(1.0, a.frobenius_norm()));
  }
}

TEST_CASE("numeric mode refuses large dimensions") {
  CHECK_THROWS_AS(jordan_analyze_numeric(QMatrix::identity(9)), Error);
}

TEST_CASE("exact mode sorts declared blocks and folds the permutation") {
  std::vector<JordanBlock> decl(2);
  decl[0].eigenvalue = ComplexRep(0.5, 0);
  decl[0].size = 1;
  decl[1].eigenvalue = ComplexRep(2, 0);
  decl[1].size = 1;
  const QMatrix a = QMatrix::diagonal({Quaternion(0.5), Quaternion(2.0)});
  const JordanData jd = jordan_analyze_exact(a, decl, std::nullopt);
  REQUIRE(jd.blocks.size() == 2);
  CHECK(jd.blocks[0].eigenvalue.re == doctest::Approx(2));  // canonical: modulus desc
  CHECK(jd.residual <= 1e-12);
  // S A S^{-1} = J with S the permutation.
  const QMatrix j = jd.jordan_matrix();
  CHECK((jd.conjugator * a * inverse(jd.conjugator) - j).frobenius_norm() <= 1e-12);
}

TEST_CASE("exact mode with a declared conjugator") {
  const QMatrix c(2, {1.0, Quaternion::j(), 0.0, 1.0});
  std::vector<JordanBlock> decl(1);
  decl[0].eigenvalue = ComplexRep(1, 0);
  decl[0].size = 2;
  // A = C^{-1} J C so that C A C^{-1} = J.
  const QMatrix j = QMatrix::jordan_block(1.0, 2);
  const QMatrix a = inverse(c) * j * c;
  const JordanData jd = jordan_analyze_exact(a, decl, c);
  CHECK(jd.residual <= 1e-10);
}

TEST_CASE("exact mode validates block size sum") {
  std::vector<JordanBlock> decl(1);
  decl[0].eigenvalue = ComplexRep(1, 0);
  decl[0].size = 2;
  CHECK_THROWS_AS(jordan_analyze_exact(QMatrix::identity(3), decl, std::nullopt), Error);
}
