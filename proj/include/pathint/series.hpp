#pragma once

// FormalSeries<S>: a polynomial in the coupling kappa truncated at order N,
// with exact scalar coefficients. The integrand convention is e^(-f/kappa);
// evaluating with kappa = i*hbar recovers the oscillatory regime, kappa real
// positive the Laplace regime — same coefficients either way.

#include <stdexcept>
#include <vector>

#include "pathint/rational.hpp"

namespace pathint {

template <class S>
class FormalSeries {
 public:
  explicit FormalSeries(int truncation_order)
      : coeffs_(truncation_order + 1, S(0)) {
    if (truncation_order < 0)
      throw std::invalid_argument("series truncation must be >= 0");
  }

  int truncation_order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const S& coefficient(int k) const {
    check(k);
    return coeffs_[k];
  }
  void set_coefficient(int k, S v) {
    check(k);
    coeffs_[k] = std::move(v);
  }
  void add_coefficient(int k, const S& v) {
    check(k);
    coeffs_[k] += v;
  }

  const std::vector<S>& coefficients() const { return coeffs_; }

  friend bool operator==(const FormalSeries& a, const FormalSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const FormalSeries& a, const FormalSeries& b) {
    return !(a == b);
  }

  FormalSeries& operator+=(const FormalSeries& o) {
    same_shape(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  FormalSeries& operator-=(const FormalSeries& o) {
    same_shape(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) {
    return a += b;
  }
  friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) {
    return a -= b;
  }

  // Truncated Cauchy product; never references coefficients above N.
  friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
    a.same_shape(b);
    FormalSeries out(a.truncation_order());
    for (int i = 0; i <= a.truncation_order(); ++i) {
      if (is_zero(a.coeffs_[i])) continue;
      for (int j = 0; i + j <= a.truncation_order(); ++j)
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
  }

  // First k with differing coefficient, or -1 when equal through N.
  friend int first_difference(const FormalSeries& a, const FormalSeries& b) {
    a.same_shape(b);
    for (int k = 0; k <= a.truncation_order(); ++k)
      if (a.coeffs_[k] != b.coeffs_[k]) return k;
    return -1;
  }

  double evaluate_double(double kappa,
                         double (*to_dbl)(const S&)) const {
    double acc = 0.0;
    double p = 1.0;
    for (const S& c : coeffs_) {
      acc += to_dbl(c) * p;
      p *= kappa;
    }
    return acc;
  }

 private:
  void check(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size()))
      throw std::out_of_range("series order out of range");
  }
  void same_shape(const FormalSeries& o) const {
    if (o.coeffs_.size() != coeffs_.size())
      throw std::invalid_argument("series truncation mismatch");
  }

  std::vector<S> coeffs_;
};

// exp of a series with zero constant term (the only case that stays in the
// ring): E_n = (1/n) * sum_{k=1..n} k * a_k * E_{n-k}.
template <class S>
FormalSeries<S> series_exp(const FormalSeries<S>& a) {
  if (!is_zero(a.coefficient(0)))
    throw std::invalid_argument("series_exp needs zero constant term");
  int n_max = a.truncation_order();
  FormalSeries<S> e(n_max);
  e.set_coefficient(0, S(1));
  for (int n = 1; n <= n_max; ++n) {
    S acc{0};
    for (int k = 1; k <= n; ++k)
      acc += S(k) * a.coefficient(k) * e.coefficient(n - k);
    e.set_coefficient(n, acc / S(n));
  }
  return e;
}

// log of a series with unit constant term:
// l_n = a_n - (1/n) * sum_{k=1..n-1} k * l_k * a_{n-k}.
template <class S>
FormalSeries<S> series_log(const FormalSeries<S>& a) {
  if (a.coefficient(0) != S(1))
    throw std::invalid_argument("series_log needs unit constant term");
  int n_max = a.truncation_order();
  FormalSeries<S> l(n_max);
  for (int n = 1; n <= n_max; ++n) {
    S acc = a.coefficient(n);
    S corr{0};
    for (int k = 1; k < n; ++k)
      corr += S(k) * l.coefficient(k) * a.coefficient(n - k);
    l.set_coefficient(n, acc - corr / S(n));
  }
  return l;
}

// The non-series part of the leading asymptotics, reported next to the
// series rather than multiplied into it: (2*pi*kappa')^(half_dim_power)
// * e^(i*pi/4)^(phase_eighths) * e^(-classical_value/kappa)
// * abs_det^(-1/2).
struct Prefactor {
  Rational half_dim_power;   // d/2
  int phase_eighths = 0;     // Hessian signature; phase is this many pi/4
  Rational classical_value;  // f(c)
  Rational abs_det;          // |det f^(2)|, kept with exponent -1/2
  static constexpr const char* kDetExponent = "-1/2";
};

}  // namespace pathint
