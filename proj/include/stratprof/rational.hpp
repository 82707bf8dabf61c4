// Exact rational arithmetic for utilities: canonical form (gcd = 1, positive
// denominator), 64-bit components, __int128 intermediates. Arithmetic that
// cannot be represented after reduction throws OverflowError; nothing here is
// ever rounded.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stratprof {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : Error {
  using Error::Error;
};

class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);  // b != 0

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }
  bool is_integer() const { return den_ == 1; }

  // 2^e for -62 <= e <= 62.
  static Rational pow2(long long e);

  // Accepts integer ("-3"), fraction ("7/2") and finite decimal ("0.25")
  // literals; all parsed exactly.
  static Rational parse(const std::string& text);

  // Integers print bare, everything else as num/den.
  std::string str() const;

 private:
  static Rational make_checked(__int128 num, __int128 den);

  long long num_;
  long long den_;  // > 0
};

}  // namespace stratprof
