#include <doctest.h>

#include <cmath>

#include "qproj/classify.hpp"
#include "test_support.hpp"

using namespace qproj;

namespace {

ComplexRep e2pi(double turns) {
  return ComplexRep(std::cos(2 * M_PI * turns), std::sin(2 * M_PI * turns));
}

JordanBlock declared_rational(long long p, long long q, int size = 1) {
  JordanBlock b;
  b.angle = AngleDecl::make_rational(p, q);
  b.eigenvalue = e2pi(b.angle->value);
  b.size = size;
  return b;
}

JordanBlock declared_irrational(double turns, int size = 1) {
  JordanBlock b;
  b.angle = AngleDecl::make_irrational(turns);
  b.eigenvalue = e2pi(b.angle->value);
  b.size = size;
  return b;
}

JordanBlock plain_block(ComplexRep eig, int size) {
  JordanBlock b;
  b.eigenvalue = eig;
  b.size = size;
  return b;
}

const double kGolden = 0.6180339887498949;

ElementClass classify_blocks(std::vector<JordanBlock> blocks, ClassifyOptions opts = {}) {
  std::vector<QMatrix> parts;
  for (const auto& b : blocks) {
    parts.push_back(QMatrix::jordan_block(Quaternion::from_complex(b.eigenvalue.value()), b.size));
  }
  const QMatrix g = QMatrix::block_diag(parts);
  return classify_element_exact(g, std::move(blocks), std::nullopt, opts).first;
}

}  // namespace

TEST_CASE("detect_rational_angle basics") {
  const AngleVerdict v1 = detect_rational_angle(ComplexRep(1, 0), 1000000, 1e-9);
  REQUIRE(v1.rational);
  CHECK(v1.rational->first == 0);
  CHECK(v1.rational->second == 1);

  const AngleVerdict v2 = detect_rational_angle(e2pi(1.0 / 3.0), 1000000, 1e-9);
  REQUIRE(v2.rational);
  CHECK(v2.rational->first == 1);
  CHECK(v2.rational->second == 3);

  CHECK_THROWS_AS(detect_rational_angle(ComplexRep(2, 0), 100, 1e-9), Error);
}

TEST_CASE("detect_rational_angle on the angle 1/pi") {
  // Continued-fraction facts for 1/pi = 0.31830988...: the convergent
  // 99532/312689 misses 1e-12 (err ~2.95e-12) but 265381/833719 lands inside
  // (err ~8.83e-13), so detection at maxDen 10^6 and tol 1e-12 finds it.
  const ComplexRep lam = e2pi(1.0 / M_PI);
  const AngleVerdict hit = detect_rational_angle(lam, 1000000, 1e-12);
  REQUIRE(hit.rational);
  CHECK(hit.rational->first == 265381);
  CHECK(hit.rational->second == 833719);

  // Below that error there is no convergent with denominator <= 10^6.
  const AngleVerdict miss = detect_rational_angle(lam, 1000000, 5e-13);
  CHECK(!miss.rational);
  // Nor at small denominators for tight tolerances.
  const AngleVerdict miss2 = detect_rational_angle(lam, 100000, 1e-12);
  CHECK(!miss2.rational);
}

TEST_CASE("elliptic subtypes") {
  // D(i, -i): both classes i = e2pi(1/4), numeric route.
  const QMatrix d = QMatrix::diagonal({Quaternion::i(), -Quaternion::i()});
  const auto [cls, jd] = classify_element(d, {});
  CHECK(cls.tag == ClassTag::EllipticRational);
  CHECK(cls.coarse == CoarseClass::Elliptic);
  CHECK(cls.rationality_inferred);

  const ElementClass simple = classify_blocks(
      {declared_irrational(kGolden), declared_irrational(kGolden), declared_irrational(kGolden)});
  CHECK(simple.tag == ClassTag::EllipticSimpleIrrational);
  CHECK(!simple.rationality_inferred);

  const ElementClass compound =
      classify_blocks({declared_rational(1, 3), declared_irrational(kGolden)});
  CHECK(compound.tag == ClassTag::EllipticCompound);
}

TEST_CASE("compound elliptic grouping") {
  // Angles: rational 1/3; screw pair golden and golden+2/7; isolated sqrt2-1.
  const double other = 0.41421356237309515;
  const ElementClass cls = classify_blocks(
      {declared_irrational(kGolden), declared_rational(1, 3),
       declared_irrational(kGolden + 2.0 / 7.0), declared_irrational(other)});
  REQUIRE(cls.tag == ClassTag::EllipticCompound);
  REQUIRE(cls.rational_axes.size() == 1);
  CHECK(cls.rational_axes[0] == 1);
  REQUIRE(cls.screw_clusters.size() == 1);
  CHECK(cls.screw_clusters[0] == std::vector<int>{2, 3});
  REQUIRE(cls.isolated_axes.size() == 1);
  CHECK(cls.isolated_axes[0] == 4);
}

TEST_CASE("parabolic rows") {
  const auto [p1, jd1] = classify_element(QMatrix::jordan_block(1.0, 3), {});
  CHECK(p1.tag == ClassTag::Parabolic1);

  // Unit eigenvalue != 1 is still Parabolic1 (single block row).
  const ElementClass p1i = classify_blocks({plain_block(ComplexRep(0, 1), 4)});
  CHECK(p1i.tag == ClassTag::Parabolic1);

  const ElementClass p2 =
      classify_blocks({declared_rational(1, 4), plain_block(ComplexRep(1, 0), 2)});
  CHECK(p2.tag == ClassTag::Parabolic2);
  CHECK(p2.k == 1);
  CHECK(p2.l == 2);
  // Row layout: diagonal first.
  CHECK(p2.row_blocks[0].size == 1);
  CHECK(p2.row_blocks[1].size == 2);

  const ElementClass p3 =
      classify_blocks({plain_block(ComplexRep(1, 0), 2), plain_block(ComplexRep(1, 0), 2)});
  CHECK(p3.tag == ClassTag::Parabolic3);
  CHECK(p3.l == 2);

  const ElementClass p4 =
      classify_blocks({plain_block(ComplexRep(1, 0), 3), plain_block(ComplexRep(1, 0), 2)});
  CHECK(p4.tag == ClassTag::Parabolic4);
  CHECK(p4.k == 3);
  CHECK(p4.l == 2);

  // Declared in the other order: canonicalized to k > l.
  const ElementClass p4r =
      classify_blocks({plain_block(ComplexRep(1, 0), 2), plain_block(ComplexRep(1, 0), 4)});
  CHECK(p4r.tag == ClassTag::Parabolic4);
  CHECK(p4r.k == 4);
  CHECK(p4r.l == 2);

  // J(1,k) + trivial eigenvalue-1 block goes to the diagonal row, not Para4.
  const ElementClass p2b =
      classify_blocks({plain_block(ComplexRep(1, 0), 3), plain_block(ComplexRep(1, 0), 1)});
  CHECK(p2b.tag == ClassTag::Parabolic2);
  CHECK(p2b.k == 1);
  CHECK(p2b.l == 3);
}

TEST_CASE("parabolic rows 2-4 demand eigenvalue 1 unless extended") {
  const ElementClass out =
      classify_blocks({plain_block(e2pi(0.25), 2), plain_block(e2pi(0.25), 2)});
  CHECK(out.tag == ClassTag::OutOfCatalog);
  CHECK(!out.diagnostics.empty());

  ClassifyOptions ext;
  ext.assume_extension = true;
  const ElementClass in =
      classify_blocks({plain_block(e2pi(0.25), 2), plain_block(e2pi(0.25), 2)}, ext);
  CHECK(in.tag == ClassTag::Parabolic3);
}

TEST_CASE("loxodromic rows") {
  const auto [l1, jd1] = classify_element(QMatrix::diagonal({Quaternion(2.0), Quaternion(0.5)}), {});
  CHECK(l1.tag == ClassTag::Loxodromic1);
  // Row layout ascending: moduli 1/2 then 2.
  CHECK(l1.row_blocks[0].eigenvalue.modulus() < l1.row_blocks[1].eigenvalue.modulus());

  const ElementClass l2 = classify_blocks({plain_block(ComplexRep(1, 0), 1),
                                           plain_block(ComplexRep(0, 1), 1),
                                           plain_block(ComplexRep(2, 0), 1)});
  CHECK(l2.tag == ClassTag::Loxodromic2);
  CHECK(l2.m == 2);
  CHECK(l2.p == 1);

  // Equal-modulus cluster at the top: no catalog row.
  const ElementClass out = classify_blocks({plain_block(ComplexRep(1, 0), 1),
                                            plain_block(ComplexRep(2, 0), 1),
                                            plain_block(ComplexRep(0, 2), 1)});
  CHECK(out.tag == ClassTag::OutOfCatalog);
}

TEST_CASE("loxoparabolic row and its normalization") {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<JordanBlock> blocks = {plain_block(ComplexRep(s, 0), 2),
                                     plain_block(ComplexRep(std::sqrt(2.0), 0), 1)};
  const ElementClass lp = classify_blocks(blocks);
  CHECK(lp.tag == ClassTag::Loxoparabolic);
  CHECK(lp.k == 2);
  CHECK(lp.l == 1);
  // Row order: smaller modulus first, |l1||l2| = 1 after normalization.
  CHECK(lp.row_blocks[0].eigenvalue.modulus() == doctest::Approx(s));
  CHECK(lp.row_blocks[0].eigenvalue.modulus() * lp.row_blocks[1].eigenvalue.modulus() ==
        doctest::Approx(1.0));

  // Three blocks with a nontrivial one: out of catalog.
  const ElementClass out =
      classify_blocks({plain_block(ComplexRep(1, 0), 2), plain_block(ComplexRep(2, 0), 1),
                       plain_block(ComplexRep(0.25, 0), 1)});
  CHECK(out.tag == ClassTag::OutOfCatalog);
}

TEST_CASE("classification ignores positive real scaling") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t) {
    const double r = std::exp(std::uniform_real_distribution<double>(-1.5, 1.5)(rng));
    const QMatrix g = QMatrix::diagonal({Quaternion(0.5), Quaternion(1.0), Quaternion(2.0)});
    const auto [a, jda] = classify_element(g, {});
    const auto [b, jdb] = classify_element(r * g, {});
    CHECK(a.tag == b.tag);
    REQUIRE(a.row_blocks.size() == b.row_blocks.size());
    for (size_t i = 0; i < a.row_blocks.size(); ++i) {
      CHECK(a.row_blocks[i].eigenvalue.modulus() ==
            doctest::Approx(b.row_blocks[i].eigenvalue.modulus()).epsilon(1e-8));
    }
  }
}

TEST_CASE("classification is conjugation invariant") {
  std::mt19937_64 rng(53);
  std::vector<std::vector<JordanBlock>> shapes = {
      {plain_block(ComplexRep(1, 0), 3)},
      {plain_block(ComplexRep(0.5, 0), 1), plain_block(ComplexRep(1, 0), 1),
       plain_block(ComplexRep(2, 0), 1)},
      {plain_block(ComplexRep(1.0 / std::sqrt(2.0), 0), 2),
       plain_block(ComplexRep(std::sqrt(2.0), 0), 1)},
  };
  for (const auto& shape : shapes) {
    std::vector<QMatrix> parts;
    for (const auto& b : shape) {
      parts.push_back(QMatrix::jordan_block(Quaternion::from_complex(b.eigenvalue.value()), b.size));
    }
    const QMatrix j = QMatrix::block_diag(parts);
    const ElementClass base = classify_element(j, {}).first;
    for (int t = 0; t < 5; ++t) {
      const QMatrix s = qtest::random_invertible(rng, j.dim(), 3.0);
      const QMatrix g = s * j * inverse(s);
      const ElementClass cls = classify_element(g, {}).first;
      CHECK(cls.tag == base.tag);
      REQUIRE(cls.row_blocks.size() == base.row_blocks.size());
      for (size_t i = 0; i < cls.row_blocks.size(); ++i) {
        CHECK(cls.row_blocks[i].size == base.row_blocks[i].size);
        CHECK(cls.row_blocks[i].eigenvalue.modulus() ==
              doctest::Approx(base.row_blocks[i].eigenvalue.modulus()).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("row conjugator maps the element to its row form") {
  std::mt19937_64 rng(59);
  const QMatrix j = QMatrix::diagonal({Quaternion(0.5), Quaternion(1.0), Quaternion(2.0)});
  const QMatrix s = qtest::random_invertible(rng, 3, 3.0);
  const QMatrix g = s * j * inverse(s);
  const auto [cls, jd] = classify_element(g, {});
  REQUIRE(cls.tag == ClassTag::Loxodromic1);
  // S_row g S_row^{-1} should equal the ascending diagonal up to the
  // normalization scale.
  const QMatrix lhs = cls.row_conjugator * g * inverse(cls.row_conjugator);
  std::vector<Quaternion> diag;
  for (const auto& b : cls.row_blocks) {
    diag.push_back(Quaternion::from_complex(b.eigenvalue.value()) * (1.0 / cls.normalization));
  }
  CHECK((lhs - QMatrix::diagonal(diag)).frobenius_norm() <= 1e-6 * g.frobenius_norm());
}
