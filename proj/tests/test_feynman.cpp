#include <vector>

#include "doctest.h"
#include "pathint/feynman.hpp"

using pathint::ActionJet;
using pathint::DiagramClass;
using pathint::EvalPolicy;
using pathint::evaluate_diagram;
using pathint::FeynmanDiagram;
using pathint::FormalSeries;
using pathint::parse_diagram;
using pathint::Prefactor;
using pathint::Rational;

namespace {

ActionJet<Rational> action_1d(int order, Rational f2, Rational f3,
                              Rational f4, Rational f5 = Rational(0)) {
  ActionJet<Rational> f(1, order, Rational(0));
  f.coefficient(2).set({0, 0}, f2);
  if (order >= 3) f.coefficient(3).set({0, 0, 0}, f3);
  if (order >= 4) f.coefficient(4).set({0, 0, 0, 0}, f4);
  if (order >= 5) f.coefficient(5).set({0, 0, 0, 0, 0}, f5);
  return f;
}

FormalSeries<Rational> series_of(std::vector<Rational> coeffs) {
  FormalSeries<Rational> s(static_cast<int>(coeffs.size()) - 1);
  for (int k = 0; k < static_cast<int>(coeffs.size()); ++k)
    s.set_coefficient(k, coeffs[static_cast<size_t>(k)]);
  return s;
}

}  // namespace

TEST_CASE("vertex weight is the negated derivative tensor") {
  const ActionJet<Rational> f = action_1d(4, Rational(1), Rational(0), Rational(1));
  CHECK(pathint::vertex_weight(f, 4).get({0, 0, 0, 0}) == Rational(-1));
  CHECK(pathint::vertex_weight(f, 3).is_zero_tensor());
  CHECK_THROWS_AS(pathint::vertex_weight(f, 5), pathint::TruncationExceeded);
}

TEST_CASE("diagram evaluation on 1-d reference actions") {
  const ActionJet<Rational> quartic =
      action_1d(4, Rational(1), Rational(0), Rational(1));
  const ActionJet<Rational> cubic =
      action_1d(4, Rational(1), Rational(1), Rational(0));
  const FeynmanDiagram fig8 = parse_diagram("V:[[0,1,2,3]] E:[[0,1],[2,3]]");
  const FeynmanDiagram theta =
      parse_diagram("V:[[0,1,2],[3,4,5]] E:[[0,3],[1,4],[2,5]]");
  CHECK(evaluate_diagram(fig8, quartic) == Rational(-1));
  CHECK(evaluate_diagram(theta, cubic) == Rational(1));
  CHECK(evaluate_diagram(FeynmanDiagram::empty(), quartic) == Rational(1));
}

TEST_CASE("self-loop on a bivalent vertex traces minus the identity") {
  const FeynmanDiagram loop = parse_diagram("V:[[0,1]] E:[[0,1]]");
  // Any invertible Hessian: ev = -tr(f2 * f2^{-1}) = -dim.
  ActionJet<Rational> f(2, 2, Rational(0));
  f.coefficient(2).set({0, 0}, Rational(3));
  f.coefficient(2).set({0, 1}, Rational(1, 4));
  f.coefficient(2).set({1, 1}, Rational(2));
  CHECK(evaluate_diagram(loop, f) == Rational(-2));
}

TEST_CASE("inserting a bivalent vertex into an edge flips the sign") {
  // Dumbbell vs. dumbbell with a bivalent vertex splitting the bridge:
  // edge-vertex-edge composes to minus the plain edge.
  const FeynmanDiagram dumbbell =
      parse_diagram("V:[[0,1,2],[3,4,5]] E:[[0,1],[2,3],[4,5]]");
  const FeynmanDiagram split =
      parse_diagram("V:[[0,1,2],[3,4],[5,6,7]] E:[[0,1],[2,3],[4,5],[6,7]]");
  const ActionJet<Rational> f =
      action_1d(4, Rational(2), Rational(1), Rational(1));
  CHECK(evaluate_diagram(split, f) == -evaluate_diagram(dumbbell, f));
}

TEST_CASE("evaluation is multiplicative over disjoint union") {
  const FeynmanDiagram fig8 = parse_diagram("V:[[0,1,2,3]] E:[[0,1],[2,3]]");
  const FeynmanDiagram pair =
      parse_diagram("V:[[0,1,2,3],[4,5,6,7]] E:[[0,1],[2,3],[4,5],[6,7]]");
  const ActionJet<Rational> f =
      action_1d(4, Rational(3), Rational(0), Rational(2));
  CHECK(evaluate_diagram(pair, f) ==
        evaluate_diagram(fig8, f) * evaluate_diagram(fig8, f));
}

TEST_CASE("valence beyond the truncation order is an error") {
  const ActionJet<Rational> f = action_1d(3, Rational(1), Rational(1), Rational(0));
  const FeynmanDiagram fig8 = parse_diagram("V:[[0,1,2,3]] E:[[0,1],[2,3]]");
  CHECK_THROWS_AS(evaluate_diagram(fig8, f), pathint::TruncationExceeded);
}

TEST_CASE("diagram sums reproduce the oracle-certified series") {
  const ActionJet<Rational> quartic =
      action_1d(8, Rational(1), Rational(0), Rational(1));
  CHECK(pathint::diagram_sum(quartic, 3) ==
        series_of({Rational(1), Rational(-1, 8), Rational(35, 384),
                   Rational(-385, 3072)}));
  const ActionJet<Rational> cubic =
      action_1d(8, Rational(1), Rational(1), Rational(0));
  CHECK(pathint::diagram_sum(cubic, 3) ==
        series_of({Rational(1), Rational(5, 24), Rational(385, 1152),
                   Rational(85085, 82944)}));
  const ActionJet<Rational> scaled =
      action_1d(8, Rational(3), Rational(0), Rational(2));
  CHECK(pathint::diagram_sum(scaled, 3) ==
        series_of({Rational(1), Rational(-1, 36), Rational(35, 7776),
                   Rational(-385, 279936)}));

  ActionJet<Rational> mix2d(2, 8, Rational(0));
  mix2d.coefficient(2).set({0, 0}, Rational(1));
  mix2d.coefficient(2).set({1, 1}, Rational(1));
  mix2d.coefficient(4).set({0, 0, 0, 1}, Rational(1));  // x^3 y / 6
  mix2d.coefficient(4).set({1, 1, 1, 1}, Rational(1));  // y^4 / 24
  CHECK(pathint::diagram_sum(mix2d, 3) ==
        series_of({Rational(1), Rational(-1, 8), Rational(115, 384),
                   Rational(-785, 3072)}));

  // Hyperbolic quadratic form xy: the propagator is off-diagonal, which
  // kills every pure-x^4 contraction.
  ActionJet<Rational> hyper(2, 8, Rational(0));
  hyper.coefficient(2).set({0, 1}, Rational(1));
  hyper.coefficient(4).set({0, 0, 0, 0}, Rational(1));
  CHECK(pathint::diagram_sum(hyper, 3) ==
        series_of({Rational(1), Rational(0), Rational(0), Rational(0)}));
}

TEST_CASE("pure quadratic actions expand to the constant series") {
  ActionJet<Rational> f(2, 8, Rational(0));
  f.coefficient(2).set({0, 0}, Rational(2));
  f.coefficient(2).set({1, 1}, Rational(1, 3));
  CHECK(pathint::diagram_sum(f, 3) ==
        series_of({Rational(1), Rational(0), Rational(0), Rational(0)}));
}

TEST_CASE("diagram sum needs jets to order 2k+2") {
  const ActionJet<Rational> f = action_1d(4, Rational(1), Rational(0), Rational(1));
  CHECK_NOTHROW(pathint::diagram_sum(f, 1));
  CHECK_THROWS_AS(pathint::diagram_sum(f, 2), pathint::TruncationExceeded);
}

TEST_CASE("exp of the connected sum is the full sum") {
  const ActionJet<Rational> quartic =
      action_1d(8, Rational(1), Rational(0), Rational(1));
  const FormalSeries<Rational> connected =
      pathint::diagram_sum(quartic, 3, /*connected_only=*/true);
  CHECK(connected ==
        series_of({Rational(0), Rational(-1, 8), Rational(1, 12),
                   Rational(-11, 96)}));
  CHECK(series_exp(connected) == pathint::diagram_sum(quartic, 3));
}

TEST_CASE("serial and parallel evaluation agree exactly") {
  ActionJet<Rational> mix2d(2, 8, Rational(0));
  mix2d.coefficient(2).set({0, 0}, Rational(1));
  mix2d.coefficient(2).set({0, 1}, Rational(1, 4));
  mix2d.coefficient(2).set({1, 1}, Rational(1));
  mix2d.coefficient(3).set({0, 0, 1}, Rational(1));
  mix2d.coefficient(4).set({0, 0, 0, 0}, Rational(1));
  CHECK(pathint::diagram_sum(mix2d, 3, false, EvalPolicy::kSerial) ==
        pathint::diagram_sum(mix2d, 3, false, EvalPolicy::kParallel));
}

TEST_CASE("affine invariance: a volume-preserving linear map fixes the sum") {
  // f(x, y) -> f applied after the rotation-like unimodular map
  // (x, y) -> (x + y, y): congruent Hessian, transported higher tensors.
  ActionJet<Rational> f(2, 6, Rational(0));
  f.coefficient(2).set({0, 0}, Rational(1));
  f.coefficient(2).set({1, 1}, Rational(1));
  f.coefficient(4).set({0, 0, 0, 0}, Rational(1));
  ActionJet<Rational> g(2, 6, Rational(0));
  // Substitute x = u + v, y = v into f: the Hessian of (x^2+y^2)/2 becomes
  // [[1,1],[1,2]] and x^4/24 becomes (u+v)^4/24.
  g.coefficient(2).set({0, 0}, Rational(1));
  g.coefficient(2).set({0, 1}, Rational(1));
  g.coefficient(2).set({1, 1}, Rational(2));
  for (int ones = 0; ones <= 4; ++ones) {
    std::vector<int> idx;
    for (int i = 0; i < 4 - ones; ++i) idx.push_back(0);
    for (int i = 0; i < ones; ++i) idx.push_back(1);
    g.coefficient(4).set(idx, Rational(1));  // all derivatives of (u+v)^4/24
  }
  CHECK(pathint::diagram_sum(f, 2) == pathint::diagram_sum(g, 2));
}

TEST_CASE("prefactor fields") {
  const ActionJet<Rational> gauss =
      action_1d(2, Rational(1), Rational(0), Rational(0));
  const Prefactor p = pathint::prefactor(gauss);
  CHECK(p.half_dim_power == Rational(1, 2));
  CHECK(p.phase_eighths == 1);
  CHECK(p.classical_value == Rational(0));
  CHECK(p.abs_det == Rational(1));

  const ActionJet<Rational> wide =
      action_1d(2, Rational(2), Rational(0), Rational(0));
  CHECK(pathint::prefactor(wide).abs_det == Rational(2));

  ActionJet<Rational> saddle(2, 2, Rational(5));
  saddle.coefficient(2).set({0, 0}, Rational(1));
  saddle.coefficient(2).set({1, 1}, Rational(-1));
  const Prefactor q = pathint::prefactor(saddle);
  CHECK(q.half_dim_power == Rational(1));
  CHECK(q.phase_eighths == 0);
  CHECK(q.abs_det == Rational(1));
  CHECK(q.classical_value == Rational(5));

  ActionJet<Rational> degenerate(1, 2, Rational(0));
  CHECK_THROWS_AS(pathint::prefactor(degenerate),
                  pathint::DegenerateCriticalPoint);
}
