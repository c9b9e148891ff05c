#include <vector>

#include "doctest.h"
#include "pathint/series.hpp"
#include "pathint/tensor.hpp"

using pathint::arrangement_count;
using pathint::FormalSeries;
using pathint::Rational;
using pathint::SymmetricTensor;

TEST_CASE("symmetric tensor lookup ignores index order") {
  SymmetricTensor<Rational> t(2, 3);
  t.set({0, 0, 1}, Rational(5));
  CHECK(t.get({0, 0, 1}) == Rational(5));
  CHECK(t.get({0, 1, 0}) == Rational(5));
  CHECK(t.get({1, 0, 0}) == Rational(5));
  CHECK(t.get({1, 1, 1}) == Rational(0));  // missing entries read as zero
}

TEST_CASE("setting an entry to zero erases it") {
  SymmetricTensor<Rational> t(1, 2);
  t.set({0, 0}, Rational(3));
  CHECK_FALSE(t.is_zero_tensor());
  t.set({0, 0}, Rational(0));
  CHECK(t.is_zero_tensor());
  t.add({0, 0}, Rational(2));
  t.add({0, 0}, Rational(-2));
  CHECK(t.is_zero_tensor());
}

TEST_CASE("arrangement counts are multinomials") {
  CHECK(arrangement_count({0, 0, 0}) == Rational(1));
  CHECK(arrangement_count({0, 0, 1}) == Rational(3));
  CHECK(arrangement_count({0, 1, 2}) == Rational(6));
  CHECK(arrangement_count({0, 0, 1, 1}) == Rational(6));
}

TEST_CASE("all_sorted_indices enumerates multisets") {
  CHECK(pathint::all_sorted_indices(2, 2).size() == 3);   // 00 01 11
  CHECK(pathint::all_sorted_indices(3, 2).size() == 6);
  CHECK(pathint::all_sorted_indices(2, 4).size() == 5);
}

TEST_CASE("full contraction against vectors") {
  // t(x, x) for t = Hessian [[1, 2], [2, 5]] and x = (1, -1): 1 - 4 + 5 = 2.
  SymmetricTensor<Rational> t(2, 2);
  t.set({0, 0}, Rational(1));
  t.set({0, 1}, Rational(2));
  t.set({1, 1}, Rational(5));
  const std::vector<Rational> x = {Rational(1), Rational(-1)};
  CHECK(t.contract_full({x, x}) == Rational(2));
}

TEST_CASE("series arithmetic is truncation-consistent") {
  FormalSeries<Rational> a(2);
  a.set_coefficient(0, Rational(1));
  a.set_coefficient(1, Rational(-1, 8));
  a.set_coefficient(2, Rational(35, 384));
  FormalSeries<Rational> b(2);
  b.set_coefficient(1, Rational(1, 8));
  const FormalSeries<Rational> s = a + b;
  CHECK(s.coefficient(1) == Rational(0));
  const FormalSeries<Rational> p = a * a;
  CHECK(p.coefficient(0) == Rational(1));
  CHECK(p.coefficient(1) == Rational(-1, 4));
  CHECK(p.coefficient(2) == Rational(35, 192) + Rational(1, 64));
  CHECK_THROWS(a.coefficient(3));
}

TEST_CASE("series exp and log are mutually inverse") {
  FormalSeries<Rational> x(4);
  x.set_coefficient(1, Rational(1));
  x.set_coefficient(2, Rational(-2, 3));
  x.set_coefficient(3, Rational(5));
  const FormalSeries<Rational> e = series_exp(x);
  CHECK(e.coefficient(0) == Rational(1));
  CHECK(series_log(e) == x);
  // exp(kappa) has coefficients 1/k!.
  FormalSeries<Rational> k(4);
  k.set_coefficient(1, Rational(1));
  const FormalSeries<Rational> ek = series_exp(k);
  CHECK(ek.coefficient(4) == Rational(1, 24));
  CHECK_THROWS(series_exp(ek));  // nonzero constant term
  FormalSeries<Rational> bad(1);
  bad.set_coefficient(0, Rational(2));
  CHECK_THROWS(series_log(bad));
}

TEST_CASE("first_difference reports the lowest differing order") {
  FormalSeries<Rational> a(3);
  FormalSeries<Rational> b(3);
  a.set_coefficient(0, Rational(1));
  b.set_coefficient(0, Rational(1));
  CHECK(first_difference(a, b) == -1);
  b.set_coefficient(2, Rational(1, 3));
  CHECK(first_difference(a, b) == 2);
  b.set_coefficient(1, Rational(4));
  CHECK(first_difference(a, b) == 1);
}

TEST_CASE("series evaluates as a double polynomial in kappa") {
  FormalSeries<Rational> s(2);
  s.set_coefficient(0, Rational(1));
  s.set_coefficient(1, Rational(-1, 8));
  s.set_coefficient(2, Rational(35, 384));
  const double v = s.evaluate_double(
      0.1, [](const Rational& r) { return r.to_double(); });
  CHECK(v == doctest::Approx(1 - 0.0125 + 0.000911458333).epsilon(1e-12));
}
