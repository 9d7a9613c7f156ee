#include <doctest.h>

#include "qproj/quaternion.hpp"
#include "test_support.hpp"

using namespace qproj;

TEST_CASE("defining relations") {
  const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  CHECK(approx_equal(i * j, k));
  CHECK(approx_equal(j * i, -k));
  CHECK(approx_equal(j * k, i));
  CHECK(approx_equal(k * i, j));
  CHECK(approx_equal(i * i, Quaternion(-1.0)));
  CHECK(approx_equal(Quaternion(0, 1, 0, 0) * j * k, Quaternion(-1.0)));
  // (1+i)(1+j) = 1 + i + j + k
  CHECK(approx_equal(Quaternion(1, 1, 0, 0) * Quaternion(1, 0, 1, 0), Quaternion(1, 1, 1, 1)));
}

TEST_CASE("inverse") {
  CHECK(approx_equal(quat_inverse(Quaternion::i()), -Quaternion::i()));
  CHECK(approx_equal(quat_inverse(Quaternion(2.0)), Quaternion(0.5)));
  CHECK(approx_equal(quat_inverse(Quaternion(1, 1, 1, 1)), Quaternion(0.25, -0.25, -0.25, -0.25)));
  CHECK_THROWS_AS(quat_inverse(Quaternion(0, 1e-12, 0, 0)), Error);
  try {
    quat_inverse(Quaternion());
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroDivisor);
  }
}

TEST_CASE("similarity representative") {
  const ComplexRep rj = similarity_representative(Quaternion::j());
  CHECK(rj.re == doctest::Approx(0.0));
  CHECK(rj.im == doctest::Approx(1.0));

  const ComplexRep rneg = similarity_representative(Quaternion(-5.0));
  CHECK(rneg.re == doctest::Approx(-5.0));
  CHECK(rneg.im == doctest::Approx(0.0));

  const ComplexRep r2j = similarity_representative(Quaternion(1, 0, 2, 0));
  CHECK(r2j.re == doctest::Approx(1.0));
  CHECK(r2j.im == doctest::Approx(2.0));
}

TEST_CASE("norm is multiplicative and product associative") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    const Quaternion p = qtest::random_quaternion(rng);
    const Quaternion q = qtest::random_quaternion(rng);
    const Quaternion r = qtest::random_quaternion(rng);
    CHECK((p * q).norm() == doctest::Approx(p.norm() * q.norm()).epsilon(1e-12));
    CHECK(((p * q) * r - p * (q * r)).norm() <= 1e-12 * (p.norm() * q.norm() * r.norm() + 1));
    CHECK(approx_equal(p * q.conj() + p * q.conj(), 2.0 * (p * q.conj())));
  }
}

TEST_CASE("similarity class is conjugation invariant") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const Quaternion q = qtest::random_quaternion(rng);
    const Quaternion u = qtest::random_unit_quaternion(rng);
    const ComplexRep a = similarity_representative(q);
    const ComplexRep b = similarity_representative(u * q * quat_inverse(u));
    CHECK(std::abs(a.re - b.re) <= 1e-10 * (1 + q.norm()));
    CHECK(std::abs(a.im - b.im) <= 1e-10 * (1 + q.norm()));
  }
}

TEST_CASE("literal grammar") {
  CHECK(approx_equal(parse_quaternion("1-1/2i+3k"), Quaternion(1, -0.5, 0, 3)));
  CHECK(approx_equal(parse_quaternion("j"), Quaternion::j()));
  CHECK(approx_equal(parse_quaternion("-k"), -Quaternion::k()));
  CHECK(approx_equal(parse_quaternion("2.5"), Quaternion(2.5)));
  CHECK(approx_equal(parse_quaternion("0"), Quaternion()));
  CHECK(approx_equal(parse_quaternion("1+i+j+k"), Quaternion(1, 1, 1, 1)));
  CHECK(approx_equal(parse_quaternion("3/4j-1/4"), Quaternion(-0.25, 0, 0.75, 0)));
  CHECK_THROWS_AS(parse_quaternion("1+"), Error);
  CHECK_THROWS_AS(parse_quaternion("x"), Error);
  CHECK_THROWS_AS(parse_quaternion("1/0"), Error);
  CHECK_THROWS_AS(parse_quaternion(""), Error);
}

TEST_CASE("printing is canonical and reparses") {
  CHECK(print_quaternion(Quaternion()) == "0");
  CHECK(print_quaternion(Quaternion(1, -0.5, 0, 3)) == "1-0.5i+3k");
  CHECK(print_quaternion(Quaternion(0, 0, 1, 0)) == "j");
  CHECK(print_quaternion(Quaternion(0, -1, 0, 0)) == "-i");
  CHECK(print_quaternion(Quaternion(0.0, 0, -0.0, 0)) == "0");  // no "-0"

  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const Quaternion q = qtest::random_quaternion(rng);
    const Quaternion back = parse_quaternion(print_quaternion(q));
    CHECK(approx_equal(q, back, 1e-14));
    CHECK(print_quaternion(back) == print_quaternion(q));
  }
}
