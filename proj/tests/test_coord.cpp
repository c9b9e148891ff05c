#include <vector>

#include "doctest.h"
#include "pathint/coord.hpp"

using pathint::ActionJet;
using pathint::compose_jets;
using pathint::Dual;
using pathint::invert_jet;
using pathint::MapJet;
using pathint::Polynomial;
using pathint::Rational;

namespace {

using D = Dual<Rational>;

// g(x, y) = (x + y^2/2, y): a quadratic shear, volume-preserving.
MapJet<Rational> shear_a(int order) {
  MapJet<Rational> g = MapJet<Rational>::identity(2, order);
  g.coefficient(0, 2).set({1, 1}, Rational(1));  // d^2 g_0 / dy^2 = 1
  return g;
}

// g(x, y) = (x, y + x^3/3): a cubic shear in the other direction.
MapJet<Rational> shear_b(int order) {
  MapJet<Rational> g = MapJet<Rational>::identity(2, order);
  g.coefficient(1, 3).set({0, 0, 0}, Rational(2));  // (x^3/3)''' = 2
  return g;
}

// 1-d map x -> x + x^2 as a jet of the given order.
MapJet<Rational> one_d_quadratic(int order) {
  MapJet<Rational> g = MapJet<Rational>::identity(1, order);
  g.coefficient(0, 2).set({0, 0}, Rational(2));
  return g;
}

Polynomial<Rational> poly_1d(std::vector<Rational> coeffs_by_degree) {
  Polynomial<Rational> p(1);
  for (int k = 0; k < static_cast<int>(coeffs_by_degree.size()); ++k)
    p.add_term({k}, coeffs_by_degree[static_cast<size_t>(k)]);
  return p;
}

}  // namespace

TEST_CASE("set partitions come in Bell-number counts") {
  CHECK(pathint::enumerate_partitions(1).partitions.size() == 1);
  CHECK(pathint::enumerate_partitions(2).partitions.size() == 2);
  CHECK(pathint::enumerate_partitions(3).partitions.size() == 5);
  CHECK(pathint::enumerate_partitions(4).partitions.size() == 15);
  CHECK(pathint::enumerate_partitions(6).partitions.size() == 203);
  // Every partition of {0..3} covers all four elements exactly once.
  for (const auto& part : pathint::enumerate_partitions(4).partitions) {
    std::vector<int> seen(4, 0);
    for (const auto& block : part) {
      CHECK(!block.empty());
      for (int x : block) ++seen[static_cast<size_t>(x)];
    }
    CHECK(seen == std::vector<int>{1, 1, 1, 1});
  }
}

TEST_CASE("composing with the identity changes nothing") {
  ActionJet<Rational> f(2, 5, Rational(7));
  f.coefficient(2).set({0, 0}, Rational(1));
  f.coefficient(2).set({1, 1}, Rational(3));
  f.coefficient(3).set({0, 1, 1}, Rational(1, 2));
  f.coefficient(4).set({0, 0, 0, 0}, Rational(1));
  f.coefficient(5).set({0, 0, 0, 1, 1}, Rational(4));
  const MapJet<Rational> id = MapJet<Rational>::identity(2, 5);
  CHECK(compose_jets(f, id) == f);

  const MapJet<Rational> g = shear_a(5);
  CHECK(compose_jets(g, id) == g);
  CHECK(compose_jets(id, g) == g);
}

TEST_CASE("order-2 chain rule in one dimension") {
  // (A o g)'' = A''(g')^2 + A' g''.
  ActionJet<Rational> outer(1, 2, Rational(0));
  outer.coefficient(1).set({0}, Rational(3));
  outer.coefficient(2).set({0, 0}, Rational(5));
  MapJet<Rational> g(1, 2);
  g.coefficient(0, 1).set({0}, Rational(2));
  g.coefficient(0, 2).set({0, 0}, Rational(7));
  const ActionJet<Rational> composed = compose_jets(outer, g);
  CHECK(composed.coefficient(1).get({0}) == Rational(6));
  CHECK(composed.coefficient(2).get({0, 0}) == Rational(5 * 4 + 3 * 7));
}

TEST_CASE("jet composition matches brute-force polynomial substitution") {
  ActionJet<Rational> f(2, 6, Rational(0));
  f.coefficient(2).set({0, 0}, Rational(1));
  f.coefficient(2).set({0, 1}, Rational(1, 3));
  f.coefficient(2).set({1, 1}, Rational(2));
  f.coefficient(3).set({0, 0, 1}, Rational(1));
  f.coefficient(3).set({1, 1, 1}, Rational(1, 2));
  f.coefficient(4).set({0, 0, 0, 0}, Rational(1));
  f.coefficient(4).set({0, 1, 1, 1}, Rational(2, 3));
  f.coefficient(5).set({0, 0, 1, 1, 1}, Rational(1));
  f.coefficient(6).set({0, 0, 0, 1, 1, 1}, Rational(5));

  MapJet<Rational> g = MapJet<Rational>::identity(2, 6);
  g.coefficient(0, 1).set({1}, Rational(1));       // x -> x + y + ...
  g.coefficient(0, 2).set({0, 1}, Rational(1));    // + xy
  g.coefficient(0, 3).set({1, 1, 1}, Rational(2)); // + y^3/3
  g.coefficient(1, 2).set({0, 0}, Rational(1));    // y -> y + x^2/2

  const ActionJet<Rational> composed = compose_jets(f, g);

  const Polynomial<Rational> pf = polynomial_from_action(f);
  const std::vector<Polynomial<Rational>> subs = {
      polynomial_from_map_component(g, 0), polynomial_from_map_component(g, 1)};
  const Polynomial<Rational> expected = pf.compose(subs, 6);
  CHECK(polynomial_from_action(composed) == expected);
}

TEST_CASE("jet inverse of x + x^2 gives the Catalan series") {
  const MapJet<Rational> g = one_d_quadratic(8);
  const MapJet<Rational> h = invert_jet(g);
  // (x + x^2)^{-1} = x - x^2 + 2x^3 - 5x^4 + 14x^5 - 42x^6 + 132x^7 - 429x^8;
  // derivative coefficients are n! times the monomial coefficients.
  const std::vector<Rational> expect = {
      Rational(1),     Rational(-2),     Rational(12),     Rational(-120),
      Rational(1680),  Rational(-30240), Rational(665280), Rational(-17297280)};
  for (int n = 1; n <= 8; ++n) {
    std::vector<int> idx(static_cast<size_t>(n), 0);
    CHECK(h.coefficient(0, n).get(idx) == expect[static_cast<size_t>(n - 1)]);
  }
}

TEST_CASE("inverse jets compose to the identity both ways") {
  MapJet<Rational> g = MapJet<Rational>::identity(2, 6);
  g.coefficient(0, 1).set({1}, Rational(1));
  g.coefficient(0, 2).set({0, 1}, Rational(1));
  g.coefficient(0, 3).set({1, 1, 1}, Rational(2));
  g.coefficient(1, 2).set({0, 0}, Rational(1));
  const MapJet<Rational> h = invert_jet(g);
  const MapJet<Rational> id = MapJet<Rational>::identity(2, 6);
  CHECK(compose_jets(g, h) == id);
  CHECK(compose_jets(h, g) == id);
}

TEST_CASE("inverting an infinitesimal flow negates the field") {
  // (id + eps e)^{-1} = id - eps e exactly when eps^2 = 0.
  MapJet<D> flow = MapJet<D>::identity(1, 4);
  flow.coefficient(0, 2).set({0, 0}, D(Rational(0), Rational(2)));  // e = x^2
  const MapJet<D> inv = invert_jet(flow);
  CHECK(inv.coefficient(0, 1).get({0}) == D(Rational(1), Rational(0)));
  CHECK(inv.coefficient(0, 2).get({0, 0}) == D(Rational(0), Rational(-2)));
  CHECK(inv.coefficient(0, 3).is_zero_tensor());
  CHECK(inv.coefficient(0, 4).is_zero_tensor());
}

TEST_CASE("a map with singular linear part has no inverse jet") {
  MapJet<Rational> g(1, 3);  // linear part 0
  g.coefficient(0, 2).set({0, 0}, Rational(2));
  CHECK_THROWS_AS(invert_jet(g), pathint::NotInvertible);
}

TEST_CASE("Jacobian determinant jets") {
  CHECK(jacobian_determinant_jet(shear_a(4)) ==
        Polynomial<Rational>::constant(2, Rational(1)));
  CHECK(pathint::is_volume_preserving(shear_a(4)));
  CHECK(pathint::is_volume_preserving(shear_b(4)));

  // d/dx (x + x^2) = 1 + 2x.
  CHECK(jacobian_determinant_jet(one_d_quadratic(4)) ==
        poly_1d({Rational(1), Rational(2)}));
  CHECK(!pathint::is_volume_preserving(one_d_quadratic(4)));

  // Composites of volume-preserving maps stay volume-preserving.
  const MapJet<Rational> comp = compose_jets(shear_a(6), shear_b(6));
  CHECK(pathint::is_volume_preserving(comp));
  CHECK(!comp.coefficient(0, 2).is_zero_tensor());  // and are not shears

  // det D(id + eps e) = 1 + eps div(e).
  MapJet<D> flow = MapJet<D>::identity(1, 4);
  flow.coefficient(0, 2).set({0, 0}, D(Rational(0), Rational(2)));
  Polynomial<D> expected(1);
  expected.add_term({0}, D(Rational(1), Rational(0)));
  expected.add_term({1}, D(Rational(0), Rational(2)));
  CHECK(jacobian_determinant_jet(flow) == expected);
}

TEST_CASE("divergence jets") {
  // Hamiltonian field (x^2, -2xy): div = 2x - 2x = 0.
  MapJet<Rational> ham(2, 3);
  ham.coefficient(0, 2).set({0, 0}, Rational(2));
  ham.coefficient(1, 2).set({0, 1}, Rational(-2));
  CHECK(pathint::divergence_jet(ham).empty());

  MapJet<Rational> sq(1, 3);
  sq.coefficient(0, 2).set({0, 0}, Rational(2));  // e = x^2
  CHECK(pathint::divergence_jet(sq) == poly_1d({Rational(0), Rational(2)}));

  // Linear field e = Mx: div = tr M.
  MapJet<Rational> lin(2, 2);
  lin.coefficient(0, 1).set({0}, Rational(1));
  lin.coefficient(0, 1).set({1}, Rational(2));
  lin.coefficient(1, 1).set({0}, Rational(3));
  lin.coefficient(1, 1).set({1}, Rational(4));
  CHECK(pathint::divergence_jet(lin) ==
        Polynomial<Rational>::constant(2, Rational(5)));
}

TEST_CASE("Moser homotopy joins the identity to the map through det == 1") {
  const MapJet<Rational> comp = compose_jets(shear_a(6), shear_b(6));
  CHECK(pathint::moser_homotopy(comp, Rational(0)) ==
        MapJet<Rational>::identity(2, 6));
  CHECK(pathint::moser_homotopy(comp, Rational(1)) == comp);
  for (const Rational& s :
       {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
    const MapJet<Rational> slice = pathint::moser_homotopy(comp, s);
    CHECK(pathint::is_volume_preserving(slice));
    CHECK(slice.linear_part_is_identity());
    // F(s)^(n) = s^{n-1} g^(n).
    for (int n = 2; n <= 6; ++n) {
      Rational power(1);
      for (int i = 1; i < n; ++i) power *= s;
      for (int a = 0; a < 2; ++a)
        CHECK(slice.coefficient(a, n) == comp.coefficient(a, n).scaled(power));
    }
  }
}

TEST_CASE("Moser homotopy preconditions") {
  MapJet<Rational> scaled(1, 3);
  scaled.coefficient(0, 1).set({0}, Rational(2));  // linear part != id
  CHECK_THROWS_AS(pathint::moser_homotopy(scaled, Rational(1, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(pathint::moser_homotopy(one_d_quadratic(3), Rational(1, 2)),
                  std::invalid_argument);  // not volume-preserving
}

TEST_CASE("pushforward by the identity and by a linear scaling") {
  ActionJet<Rational> f(1, 6, Rational(0));
  f.coefficient(2).set({0, 0}, Rational(1));
  f.coefficient(4).set({0, 0, 0, 0}, Rational(1));
  CHECK(pathint::pushforward_action(f, MapJet<Rational>::identity(1, 6)) == f);

  MapJet<Rational> doubling = MapJet<Rational>::identity(1, 6);
  doubling.coefficient(0, 1).set({0}, Rational(2));
  const ActionJet<Rational> pushed = pathint::pushforward_action(f, doubling);
  CHECK(pushed.coefficient(2).get({0, 0}) == Rational(1, 4));
  CHECK(pushed.coefficient(4).get({0, 0, 0, 0}) == Rational(1, 16));
  CHECK(pushed.coefficient(1).is_zero_tensor());
  CHECK(pushed.coefficient(3).is_zero_tensor());
}

TEST_CASE("pushforward requires a critical-point jet") {
  ActionJet<Rational> f(1, 3, Rational(0));
  f.coefficient(1).set({0}, Rational(1));
  f.coefficient(2).set({0, 0}, Rational(1));
  CHECK_THROWS_AS(
      pathint::pushforward_action(f, MapJet<Rational>::identity(1, 3)),
      std::invalid_argument);
}

TEST_CASE("pushforward matches substitution of the known inverse series") {
  // f = x^2/2 + x^4/24 pushed by g(x) = x + x^2 equals f o g^{-1}, with
  // g^{-1} the Catalan series; compare against brute-force polynomial
  // substitution of that independently known series.
  ActionJet<Rational> f(1, 6, Rational(0));
  f.coefficient(2).set({0, 0}, Rational(1));
  f.coefficient(4).set({0, 0, 0, 0}, Rational(1));
  const ActionJet<Rational> pushed =
      pathint::pushforward_action(f, one_d_quadratic(6));

  const Polynomial<Rational> inv_series =
      poly_1d({Rational(0), Rational(1), Rational(-1), Rational(2),
               Rational(-5), Rational(14), Rational(-42)});
  const Polynomial<Rational> expected =
      polynomial_from_action(f).compose({inv_series}, 6);
  CHECK(polynomial_from_action(pushed) == expected);
  CHECK(pushed.coefficient(1).is_zero_tensor());
}
