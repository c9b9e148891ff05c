#pragma once

// Three ways to the same numbers that share nothing with the diagram engine.
//
// moment_expansion: expand e^{-V/kappa} under the Gaussian weight and reduce
// every monomial moment with the Isserlis pairing-count formula
//   <x^alpha> = kappa^{|alpha|/2} * sum over pairing matrices K of
//     prod(alpha_i!) / (prod_i 2^{K_ii} K_ii! * prod_{i<j} K_ij!)
//     * prod P_ij^{K_ij},
// row condition 2*K_ii + sum_{j != i} K_ij = alpha_i.
//
// operator_expansion: the heat-semigroup identity <F> = [e^{(kappa/2)
// Delta_P} F](0) with Delta_P = sum_ij P_ij d_i d_j, applied to V^m/m!.
//
// laplace_quadrature: direct adaptive Gauss-Kronrod (G7,K15) integration of
// the normalized integrand for kappa > 0 in dimensions 1 and 2.

#include <vector>

#include "pathint/jets.hpp"
#include "pathint/poly.hpp"
#include "pathint/series.hpp"

namespace pathint {

// Isserlis moment of x^alpha under covariance P (the kappa power
// |alpha|/2 is accounted by the caller).
Rational isserlis_moment(const std::vector<int>& alpha,
                         const Matrix<Rational>& covariance);

// Series through kappa^max_order by Gaussian moments of powers of the
// interaction polynomial (action terms of degree >= 3).
FormalSeries<Rational> moment_expansion(const ActionJet<Rational>& action,
                                        int max_order);

// Series through kappa^max_order by iterated application of Delta_P.
FormalSeries<Rational> operator_expansion(const ActionJet<Rational>& action,
                                          int max_order);

struct QuadratureOptions {
  double halfwidth_sigmas = 8.0;  // integration box half-width in sigma units
  double rel_tol = 1e-10;         // target relative accuracy
  int max_depth = 32;             // bisection depth before giving up
  long max_evaluations = 20000000;
};

struct QuadratureResult {
  double value = 0.0;           // normalized: -> 1 as kappa -> 0
  double error_estimate = 0.0;  // quadrature estimate + Gaussian tail bound
  long evaluations = 0;
};

// integral of e^{-(f(x)-f(c))/kappa} over the sigma-scaled box, divided by
// (2 pi kappa)^{d/2} |det f''|^{-1/2}. Requires kappa > 0, a positive
// definite Hessian, and dim <= 2. Throws QuadraturePrecisionFailure when the
// error target cannot be met within the depth/evaluation budget.
QuadratureResult laplace_quadrature(const ActionJet<Rational>& action,
                                    double kappa,
                                    const QuadratureOptions& options = {});

}  // namespace pathint
