#include <cmath>
#include <vector>

#include "pathint/oracles.hpp"

namespace pathint {

namespace {

struct Monomial {
  double coeff;
  std::vector<int> expo;
};

// f(x) - f(c) as double monomials (the constant is normalized away).
std::vector<Monomial> difference_monomials(const ActionJet<Rational>& action) {
  std::vector<Monomial> out;
  Polynomial<Rational> p = polynomial_from_action(action, 1);
  out.reserve(p.terms().size());
  for (const auto& [expo, c] : p.terms()) out.push_back({c.to_double(), expo});
  return out;
}

double evaluate_monomials(const std::vector<Monomial>& monomials,
                          const std::vector<double>& x) {
  double acc = 0.0;
  for (const Monomial& m : monomials) {
    double t = m.coeff;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int k = 0; k < m.expo[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

// Gauss-Kronrod (G7,K15) nodes on [0,1]-half of [-1,1]; Gauss points are the
// odd-index Kronrod points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Estimate {
  double value;
  double error;
};

class Budget {
 public:
  Budget(long max_evaluations) : max_(max_evaluations) {}
  void spend(long n) {
    used_ += n;
    if (used_ > max_)
      throw QuadraturePrecisionFailure(
          "quadrature evaluation budget exhausted");
  }
  long used() const { return used_; }

 private:
  long max_;
  long used_ = 0;
};

template <class F>
Estimate gk15(const F& f, double a, double b) {
  double mid = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  double fc = f(mid);
  double gauss = fc * kWg[3];
  double kronrod = fc * kWgk[7];
  for (int i = 0; i < 7; ++i) {
    double dx = half * kXgk[i];
    double lo = f(mid - dx);
    double hi = f(mid + dx);
    kronrod += kWgk[i] * (lo + hi);
    if (i % 2 == 1) gauss += kWg[i / 2] * (lo + hi);
  }
  return {kronrod * half, std::abs(kronrod - gauss) * half};
}

template <class F>
double adaptive(const F& f, double a, double b, double tol, int depth,
                const QuadratureOptions& options, Budget& budget,
                double& error_acc) {
  Estimate e = gk15(f, a, b);
  budget.spend(15);
  if (e.error <= tol) {
    error_acc += e.error;
    return e.value;
  }
  if (depth >= options.max_depth)
    throw QuadraturePrecisionFailure(
        "quadrature subdivision depth exhausted before reaching tolerance");
  double mid = 0.5 * (a + b);
  return adaptive(f, a, mid, 0.5 * tol, depth + 1, options, budget,
                  error_acc) +
         adaptive(f, mid, b, 0.5 * tol, depth + 1, options, budget,
                  error_acc);
}

}  // namespace

QuadratureResult laplace_quadrature(const ActionJet<Rational>& action,
                                    double kappa,
                                    const QuadratureOptions& options) {
  int dim = action.dim();
  if (dim > 2)
    throw std::invalid_argument(
        "laplace_quadrature supports dimensions 1 and 2");
  if (!(kappa > 0.0))
    throw std::invalid_argument("laplace_quadrature needs kappa > 0");
  Matrix<Rational> hess = action.hessian_matrix();
  Rational det_r = matrix_determinant(hess);
  if (det_r.is_zero()) throw DegenerateCriticalPoint("Hessian is singular");
  // positive definiteness (leading principal minors)
  if (hess[0][0].sign() <= 0 || det_r.sign() <= 0)
    throw std::invalid_argument(
        "laplace_quadrature needs a positive definite Hessian");
  double det = det_r.to_double();
  double lambda_min;
  if (dim == 1) {
    lambda_min = hess[0][0].to_double();
  } else {
    double tr = hess[0][0].to_double() + hess[1][1].to_double();
    lambda_min = 0.5 * (tr - std::sqrt(tr * tr - 4.0 * det));
  }
  double sigma = std::sqrt(kappa / lambda_min);
  double radius = options.halfwidth_sigmas * sigma;
  const std::vector<Monomial> monomials = difference_monomials(action);

  const double pi = 3.14159265358979323846;
  double gaussian_factor = std::pow(2.0 * pi * kappa, 0.5 * dim) /
                           std::sqrt(det);
  double tol = options.rel_tol * gaussian_factor;

  Budget budget(options.max_evaluations);
  double error_acc = 0.0;
  double raw;
  if (dim == 1) {
    auto f = [&](double x) {
      return std::exp(-evaluate_monomials(monomials, {x}) / kappa);
    };
    raw = adaptive(f, -radius, radius, tol, 0, options, budget, error_acc);
  } else {
    double inner_tol = tol / (2.0 * radius) / 8.0;
    double inner_error_max = 0.0;
    auto outer = [&](double x) {
      auto inner = [&](double y) {
        return std::exp(-evaluate_monomials(monomials, {x, y}) / kappa);
      };
      double inner_error = 0.0;
      double v = adaptive(inner, -radius, radius, inner_tol, 0, options,
                          budget, inner_error);
      if (inner_error > inner_error_max) inner_error_max = inner_error;
      return v;
    };
    raw = adaptive(outer, -radius, radius, tol, 0, options, budget,
                   error_acc);
    error_acc += inner_error_max * 2.0 * radius;
  }

  // Gaussian tail outside the box, per the quadratic part: union bound of
  // d one-dimensional tails at s sigmas, 2*phi(s)/s each.
  double s = options.halfwidth_sigmas;
  double tail = dim * 2.0 * std::exp(-0.5 * s * s) /
                (s * std::sqrt(2.0 * pi));

  QuadratureResult result;
  result.value = raw / gaussian_factor;
  result.error_estimate = error_acc / gaussian_factor + tail;
  result.evaluations = budget.used();
  return result;
}

}  // namespace pathint
