#include "pathint/oracles.hpp"

#include <functional>
#include <map>

namespace pathint {

namespace {

// Pairs of slot indices (i <= j) in a fixed order for the pairing matrix.
std::vector<std::pair<int, int>> index_pairs(int dim) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) out.emplace_back(i, j);
  return out;
}

}  // namespace

Rational isserlis_moment(const std::vector<int>& alpha,
                         const Matrix<Rational>& covariance) {
  int dim = static_cast<int>(covariance.size());
  if (static_cast<int>(alpha.size()) != dim)
    throw std::invalid_argument("isserlis_moment: exponent dimension");
  int total = 0;
  for (int a : alpha) total += a;
  if (total % 2 != 0) return Rational(0);
  const auto pairs = index_pairs(dim);
  Rational sum(0);
  std::vector<int> remaining = alpha;
  std::function<void(std::size_t, Rational, Rational)> walk =
      [&](std::size_t pos, Rational combinatorial, Rational weight) {
        if (pos == pairs.size()) {
          for (int r : remaining)
            if (r != 0) return;
          sum += combinatorial * weight;
          return;
        }
        auto [i, j] = pairs[pos];
        if (i == j) {
          for (int k = 0; 2 * k <= remaining[i]; ++k) {
            Rational comb = combinatorial;
            for (int t = 1; t <= k; ++t) comb /= Rational(2 * t);  // 2^k k!
            remaining[i] -= 2 * k;
            if (!is_zero(weight) || k == 0) {
              Rational w = weight;
              for (int t = 0; t < k; ++t) w *= covariance[i][j];
              walk(pos + 1, comb, w);
            }
            remaining[i] += 2 * k;
          }
        } else {
          int cap = std::min(remaining[i], remaining[j]);
          for (int k = 0; k <= cap; ++k) {
            Rational comb = combinatorial;
            for (int t = 1; t <= k; ++t) comb /= Rational(t);  // k!
            remaining[i] -= k;
            remaining[j] -= k;
            if (!is_zero(weight) || k == 0) {
              Rational w = weight;
              for (int t = 0; t < k; ++t) w *= covariance[i][j];
              walk(pos + 1, comb, w);
            }
            remaining[i] += k;
            remaining[j] += k;
          }
        }
      };
  Rational base(1);
  for (int a : alpha) base *= Rational::factorial(a);
  walk(0, base, Rational(1));
  return sum;
}

FormalSeries<Rational> moment_expansion(const ActionJet<Rational>& action,
                                        int max_order) {
  int needed = 2 * max_order + 2;
  if (action.order() < needed)
    throw TruncationExceeded(
        "moment_expansion at order " + std::to_string(max_order) +
        " needs action jets to order " + std::to_string(needed));
  Matrix<Rational> covariance = hessian_inverse(action);
  int dim = action.dim();
  Polynomial<Rational> interaction = polynomial_from_action(action, 3);
  FormalSeries<Rational> series(max_order);
  series.set_coefficient(0, Rational(1));
  if (interaction.empty() || max_order == 0) return series;

  Polynomial<Rational> power = Polynomial<Rational>::constant(dim, Rational(1));
  Rational m_factorial(1);
  int m_max = 2 * max_order;  // deg >= 3m and order = deg/2 - m <= max_order
  for (int m = 1; m <= m_max; ++m) {
    power = power.multiply(interaction, 2 * (max_order + m));
    m_factorial *= Rational(m);
    Rational sign = m % 2 == 0 ? Rational(1) : Rational(-1);
    for (const auto& [expo, c] : power.terms()) {
      int deg = 0;
      for (int v : expo) deg += v;
      if (deg % 2 != 0) continue;
      int order = deg / 2 - m;
      if (order < 1 || order > max_order) continue;
      Rational moment = isserlis_moment(expo, covariance);
      if (moment.is_zero()) continue;
      series.add_coefficient(order, sign * c * moment / m_factorial);
    }
  }
  return series;
}

namespace {

// Delta_P applied once: sum_ij P_ij d_i d_j.
Polynomial<Rational> laplacian(const Polynomial<Rational>& p,
                               const Matrix<Rational>& covariance) {
  int dim = p.dim();
  Polynomial<Rational> out(dim);
  for (int i = 0; i < dim; ++i) {
    Polynomial<Rational> di = p.derivative(i);
    if (di.empty()) continue;
    for (int j = 0; j < dim; ++j) {
      if (covariance[i][j].is_zero()) continue;
      Polynomial<Rational> dij = di.derivative(j);
      for (const auto& [expo, c] : dij.terms())
        out.add_term(expo, covariance[i][j] * c);
    }
  }
  return out;
}

}  // namespace

FormalSeries<Rational> operator_expansion(const ActionJet<Rational>& action,
                                          int max_order) {
  int needed = 2 * max_order + 2;
  if (action.order() < needed)
    throw TruncationExceeded(
        "operator_expansion at order " + std::to_string(max_order) +
        " needs action jets to order " + std::to_string(needed));
  Matrix<Rational> covariance = hessian_inverse(action);
  int dim = action.dim();
  Polynomial<Rational> interaction = polynomial_from_action(action, 3);
  FormalSeries<Rational> series(max_order);
  series.set_coefficient(0, Rational(1));
  if (interaction.empty() || max_order == 0) return series;

  Polynomial<Rational> power = Polynomial<Rational>::constant(dim, Rational(1));
  Rational m_factorial(1);
  int m_max = 2 * max_order;
  for (int m = 1; m <= m_max; ++m) {
    power = power.multiply(interaction, 2 * (max_order + m));
    m_factorial *= Rational(m);
    Rational sign = m % 2 == 0 ? Rational(1) : Rational(-1);
    // [e^{(kappa/2) Delta} V^m](0): the degree-2l part survives l
    // applications of Delta with weight (1/2)^l / l!.
    Polynomial<Rational> reduced = power;
    Rational half_l(1);  // (1/2)^l / l!
    for (int l = 0; !reduced.empty(); ++l) {
      int order = l - m;
      if (order > max_order) break;
      if (order >= 1) {
        Rational at_zero = reduced.constant_term();
        if (!at_zero.is_zero())
          series.add_coefficient(order,
                                 sign * half_l * at_zero / m_factorial);
      }
      reduced = laplacian(reduced, covariance);
      half_l /= Rational(2 * (l + 1));
    }
  }
  return series;
}

}  // namespace pathint
