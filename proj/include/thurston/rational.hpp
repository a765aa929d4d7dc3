#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "thurston/error.hpp"

namespace thurston {

using BigInt = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Backed by GMP; every operation leaves the value canonical, so equality is
/// structural and the string form "p/q" (or "p" when q = 1) is unique.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}                   // NOLINT(google-explicit-constructor)
  Rational(long v) : q_(v) {}                  // NOLINT(google-explicit-constructor)
  Rational(long long v) : q_(BigInt(std::to_string(v))) {}  // NOLINT
  Rational(const BigInt& v) : q_(v) {}         // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  Rational(long long num, long long den)
      : Rational(BigInt(std::to_string(num)), BigInt(std::to_string(den))) {}

  /// Parses "p", "-p", "p/q" with q > 0 after reduction. Whitespace is rejected.
  static Rational parse(std::string_view text) {
    auto bad = [&](const char* why) {
      return Error(ErrorCode::ParseError,
                   "invalid rational \"" + std::string(text) + "\": " + why);
    };
    if (text.empty()) throw bad("empty");
    const auto slash = text.find('/');
    auto digits_ok = [](std::string_view s, bool allow_sign) {
      if (s.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) return false;
      for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
      return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                           : text.substr(slash + 1);
    if (!digits_ok(num, true)) throw bad("malformed numerator");
    if (!digits_ok(den, false)) throw bad("malformed denominator");
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    BigInt nz(n), dz{std::string(den)};
    if (dz == 0) throw bad("zero denominator");
    return Rational(nz, dz);
  }

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }

  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }
  double to_double() const { return q_.get_d(); }

  const mpq_class& raw() const { return q_; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.q_ = -a.q_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Fits-in-long conversion for values the caller knows are small (surgery
/// coefficients, edge labels). Throws instead of truncating.
inline long to_long(const BigInt& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::ResourceLimit, "integer " + z.get_str() + " overflows long");
  return z.get_si();
}

}  // namespace thurston

template <>
struct std::hash<thurston::Rational> {
  std::size_t operator()(const thurston::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
