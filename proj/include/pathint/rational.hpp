#pragma once

// Exact scalar types for the engine.
//
// Rational        - arbitrary-precision rational (GMP mpq_class underneath),
//                   canonical "p/q" text form.
// Dual<T>         - T + epsilon*T with epsilon^2 = 0, for infinitesimal
//                   perturbation runs.
// GaussianRational- a + b*i over Rational, used only when reporting the
//                   oscillatory regime.
//
// All engine templates require of a scalar S: construction from long,
// +,-,*,/, unary -, ==/!=, is_zero(s), is_unit(s) (divisibility test).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pathint {

// Error taxonomy shared across modules (CLI maps these to exit codes).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateCriticalPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct QuadraturePrecisionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotInvertible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}            // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "p", "-p", "p/q" with optional sign on p; q > 0 after
  // canonicalization. Anything else is a ParseError.
  static Rational from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    std::size_t pos = 0;
    auto digits = [&](bool allow_sign) {
      std::size_t start = pos;
      if (allow_sign && pos < s.size() && (s[pos] == '+' || s[pos] == '-'))
        ++pos;
      std::size_t first_digit = pos;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
      if (pos == first_digit)
        throw ParseError("bad rational literal: '" + s + "'");
      return s.substr(start, pos - start);
    };
    std::string num = digits(true);
    if (num[0] == '+') num.erase(0, 1);  // mpq_set_str takes '-' but not '+'
    std::string den = "1";
    if (pos < s.size()) {
      if (s[pos] != '/') throw ParseError("bad rational literal: '" + s + "'");
      ++pos;
      den = digits(false);
    }
    if (pos != s.size()) throw ParseError("bad rational literal: '" + s + "'");
    if (den.find_first_not_of('0') == std::string::npos)
      throw ParseError("zero denominator in '" + s + "'");
    mpq_class v;
    if (mpq_set_str(v.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
      throw ParseError("bad rational literal: '" + s + "'");
    v.canonicalize();
    return Rational(v);
  }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  double to_double() const { return v_.get_d(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.v_ <= b.v_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return b <= a;
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  // n! as a Rational (fits easily; n stays at desk scale).
  static Rational factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(mpq_class(f));
  }

 private:
  mpq_class v_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_unit(const Rational& r) { return !r.is_zero(); }

template <class T>
struct Dual {
  T re{};
  T ep{};  // coefficient of epsilon

  Dual() = default;
  Dual(long n) : re(n), ep(0) {}  // NOLINT(google-explicit-constructor)
  Dual(T r, T e) : re(std::move(r)), ep(std::move(e)) {}

  Dual operator-() const { return {-re, -ep}; }
  Dual& operator+=(const Dual& o) {
    re += o.re;
    ep += o.ep;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    re -= o.re;
    ep -= o.ep;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    ep = re * o.ep + ep * o.re;
    re = re * o.re;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    if (::pathint::is_zero(o.re))
      throw std::domain_error("Dual division: non-unit divisor");
    T r = re / o.re;
    ep = (ep - r * o.ep) / o.re;
    re = std::move(r);
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend bool operator==(const Dual& a, const Dual& b) {
    return a.re == b.re && a.ep == b.ep;
  }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }
};

template <class T>
inline bool is_zero(const Dual<T>& d) {
  return is_zero(d.re) && is_zero(d.ep);
}
template <class T>
inline bool is_unit(const Dual<T>& d) {
  return is_unit(d.re);  // a + b*eps is invertible iff a is
}

struct GaussianRational {
  Rational re{};
  Rational im{};

  GaussianRational() = default;
  GaussianRational(long n) : re(n), im(0) {}  // NOLINT
  GaussianRational(Rational r, Rational i)
      : re(std::move(r)), im(std::move(i)) {}

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n = o.re * o.re + o.im * o.im;
    if (n.is_zero())
      throw std::domain_error("GaussianRational division by zero");
    Rational r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = std::move(r);
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a,
                                    const GaussianRational& b) {
    return a += b;
  }
  friend GaussianRational operator-(GaussianRational a,
                                    const GaussianRational& b) {
    return a -= b;
  }
  friend GaussianRational operator*(GaussianRational a,
                                    const GaussianRational& b) {
    return a *= b;
  }
  friend GaussianRational operator/(GaussianRational a,
                                    const GaussianRational& b) {
    return a /= b;
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

  // "a", "b*i", or "a+b*i" / "a-b*i" with each part in lowest terms.
  std::string str() const {
    if (im.is_zero()) return re.str();
    const std::string imag = im.str() + "*i";
    if (re.is_zero()) return imag;
    return im.sign() > 0 ? re.str() + "+" + imag : re.str() + imag;
  }

  // i^k as a Gaussian rational; multiplying a real coefficient by this maps
  // a kappa-series (kappa = i*hbar) onto the hbar-series of the oscillatory
  // regime.
  static GaussianRational i_power(int k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return {Rational(1), Rational(0)};
      case 1: return {Rational(0), Rational(1)};
      case 2: return {Rational(-1), Rational(0)};
      default: return {Rational(0), Rational(-1)};
    }
  }
};

inline bool is_zero(const GaussianRational& g) {
  return g.re.is_zero() && g.im.is_zero();
}
inline bool is_unit(const GaussianRational& g) { return !is_zero(g); }

}  // namespace pathint
