#include <doctest.h>

#include <cmath>

#include "qproj/projective.hpp"
#include "test_support.hpp"

using namespace qproj;

namespace {

ProjPoint pt(std::vector<Quaternion> x) { return ProjPoint(std::move(x)); }

}  // namespace

TEST_CASE("canonical representative") {
  const ProjPoint p = pt({Quaternion::j(), Quaternion(0, 0, 0, 2)});
  // First nonzero coordinate becomes real positive, norm 1.
  CHECK(p[0].a0 > 0);
  CHECK(p[0].a1 == doctest::Approx(0));
  double n = 0;
  for (int i = 0; i < p.dim(); ++i) n += p[i].norm_sq();
  CHECK(n == doctest::Approx(1.0));
  CHECK_THROWS_AS(pt({Quaternion(), Quaternion()}), Error);
}

TEST_CASE("fs_distance examples") {
  const ProjPoint e1 = ProjPoint::axis(2, 1), e2 = ProjPoint::axis(2, 2);
  CHECK(fs_distance(e1, e2) == doctest::Approx(1.0));

  std::mt19937_64 rng(5);
  const ProjPoint p = qtest::random_point(rng, 3);
  const Quaternion u = qtest::random_unit_quaternion(rng);
  std::vector<Quaternion> scaled = p.coords();
  for (auto& q : scaled) q = q * u;
  CHECK(fs_distance(p, pt(std::move(scaled))) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(fs_distance(pt({1.0, 1.0}), pt({1.0, 0.0})) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("fs_distance metric axioms") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 1000; ++t) {
    const ProjPoint a = qtest::random_point(rng, 3);
    const ProjPoint b = qtest::random_point(rng, 3);
    const ProjPoint c = qtest::random_point(rng, 3);
    const double ab = fs_distance(a, b), ba = fs_distance(b, a);
    const double bc = fs_distance(b, c), ac = fs_distance(a, c);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    CHECK(ab >= 0);
    CHECK(ab <= 1.0 + 1e-12);
    CHECK(ac <= ab + bc + 1e-10);
    CHECK(fs_distance(a, a) <= 1e-7);
  }
}

TEST_CASE("fs_distance is unitary invariant") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 500; ++t) {
    const int dim = 2 + static_cast<int>(rng() % 3);
    const ProjPoint p = qtest::random_point(rng, dim);
    const ProjPoint q = qtest::random_point(rng, dim);
    const QMatrix u = qtest::random_unitary(rng, dim);
    CHECK(std::abs(fs_distance(apply_unchecked(u, p), apply_unchecked(u, q)) -
                   fs_distance(p, q)) <= 1e-10);
  }
}

TEST_CASE("subspace_span examples") {
  // e1 * j spans the same line as e1.
  std::vector<Quaternion> e1j = {Quaternion::j(), 0.0, 0.0};
  const ProjSubspace s =
      subspace_span({ProjPoint::axis(3, 1), pt(std::move(e1j)), ProjPoint::axis(3, 2)});
  CHECK(s.dim() == 1);
  CHECK(s.generators.size() == 2);

  // (1, i, 0) and (j, k, 0) are right-dependent: (1,i,0) j = (j, ij=k, 0).
  const ProjSubspace point = subspace_span(
      {pt({Quaternion(1.0), Quaternion::i(), 0.0}), pt({Quaternion::j(), Quaternion::k(), 0.0})});
  CHECK(point.dim() == 0);

  CHECK_THROWS_AS(subspace_span({}), Error);
}

TEST_CASE("span is idempotent and orthonormal") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 200; ++t) {
    const int dim = 3 + static_cast<int>(rng() % 2);
    std::vector<ProjPoint> gens;
    for (int c = 0; c < 2; ++c) gens.push_back(qtest::random_point(rng, dim));
    const ProjSubspace s = subspace_span(gens);
    const ProjSubspace again = subspace_span(s.generators);
    CHECK(subspace_defect(s, again) <= 1e-9);
    for (size_t a = 0; a < s.generators.size(); ++a) {
      for (size_t b = 0; b < s.generators.size(); ++b) {
        const double want = a == b ? 1.0 : 0.0;
        CHECK(herm_dot(s.generators[a], s.generators[b]).norm() ==
              doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("distance_to_subspace examples") {
  const ProjSubspace l12 = axis_subspace(3, {1, 2});
  CHECK(distance_to_subspace(ProjPoint::axis(3, 3), l12) == doctest::Approx(1.0));
  CHECK(distance_to_subspace(ProjPoint::axis(3, 1), l12) == doctest::Approx(0.0));
  CHECK(distance_to_subspace(pt({1.0, 1.0, 0.0}), axis_subspace(3, {1})) ==
        doctest::Approx(1.0 / std::sqrt(2.0)));

  const ProjSubspace slice = axis_subspace(2, {1, 2}, SubspaceFlavor::ComplexSlice);
  CHECK_THROWS_AS(distance_to_subspace(ProjPoint::axis(2, 1), slice), Error);

  const ProjSubspace pts = point_set({ProjPoint::axis(2, 1), ProjPoint::axis(2, 2)});
  CHECK(distance_to_subspace(pt({1.0, 1.0}), pts) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("apply_transform examples") {
  QMatrix swap(2);
  swap.at(0, 1) = 1.0;
  swap.at(1, 0) = 1.0;
  CHECK(fs_distance(apply_transform(swap, ProjPoint::axis(2, 1)), ProjPoint::axis(2, 2)) ==
        doctest::Approx(0.0));

  const QMatrix d = QMatrix::diagonal({Quaternion(2.0), Quaternion(1.0)});
  CHECK(fs_distance(apply_transform(d, pt({1.0, 1.0})), pt({2.0, 1.0})) ==
        doctest::Approx(0.0).epsilon(1e-12));

  const QMatrix j = QMatrix::jordan_block(1.0, 2);
  const ProjSubspace line = axis_subspace(2, {1});
  CHECK(subspace_defect(apply_transform(j, line), line) <= 1e-12);

  QMatrix sing(2);
  sing.at(0, 0) = 1.0;
  CHECK_THROWS_AS(apply_transform(sing, ProjPoint::axis(2, 1)), Error);
}

TEST_CASE("dual hyperplane examples") {
  const Hyperplane h{ProjPoint::axis(2, 1)};
  const Hyperplane same = dual_hyperplane_apply(QMatrix::identity(2), h);
  CHECK(hyperplanes_equal(h, same));

  const QMatrix d = QMatrix::diagonal({Quaternion(2.0), Quaternion(0.5)});
  CHECK(hyperplanes_equal(dual_hyperplane_apply(d, h), h));

  // g = J(1,2), alpha = (1,0): image is l(1,-1) = {x1 = x2}, containing g(e2).
  const QMatrix j = QMatrix::jordan_block(1.0, 2);
  const Hyperplane img = dual_hyperplane_apply(j, h);
  CHECK(hyperplanes_equal(img, Hyperplane{pt({1.0, -1.0})}));
  CHECK(hyperplane_contains(img, apply_transform(j, ProjPoint::axis(2, 2)), 1e-9));
}

TEST_CASE("pointwise dual lemma on random data") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 500; ++t) {
    const int dim = 2 + static_cast<int>(rng() % 3);
    const QMatrix g = qtest::random_invertible(rng, dim);
    const ProjPoint alpha = qtest::random_point(rng, dim);
    const Hyperplane h{alpha};
    // Random point on l(alpha): project a random point off the normal.
    const ProjPoint raw = qtest::random_point(rng, dim);
    std::vector<Quaternion> x = raw.coords();
    const Quaternion c = herm_dot(alpha, raw);
    for (int i = 0; i < dim; ++i) x[i] -= alpha[i] * c;
    double nn = 0;
    for (const auto& q : x) nn += q.norm_sq();
    if (std::sqrt(nn) < 1e-6) continue;
    const ProjPoint on_plane = pt(std::move(x));
    REQUIRE(hyperplane_contains(h, on_plane, 1e-9));
    const Hyperplane hi = dual_hyperplane_apply(g, h);
    CHECK(herm_dot(hi.normal, apply_transform(g, on_plane)).norm() <= 1e-8);
  }
}

TEST_CASE("hyperplanes_equal examples") {
  CHECK(hyperplanes_equal(Hyperplane{pt({1.0, 0.0})}, Hyperplane{pt({Quaternion::j(), 0.0})}));
  CHECK(!hyperplanes_equal(Hyperplane{pt({1.0, 0.0})}, Hyperplane{pt({0.0, 1.0})}));
  CHECK(hyperplanes_equal(Hyperplane{pt({1.0, 1.0})},
                          Hyperplane{pt({Quaternion::j(), Quaternion::j()})}));
}

TEST_CASE("complex slice membership") {
  CHECK(complex_slice_membership(pt({1.0, Quaternion::i()}), {1, 2}));
  CHECK(complex_slice_membership(pt({Quaternion::j(), Quaternion::k()}), {1, 2}));
  CHECK(!complex_slice_membership(pt({1.0, Quaternion::i(), Quaternion::j()}), {1, 2, 3}));
  // Support violation.
  CHECK(!complex_slice_membership(pt({1.0, 1.0}), {1}));
  // Any 2-coordinate point is a left multiple of a complex vector.
  std::mt19937_64 rng(25);
  for (int t = 0; t < 50; ++t) {
    CHECK(complex_slice_membership(qtest::random_point(rng, 2), {1, 2}));
  }
}
