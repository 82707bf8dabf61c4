#include "stratprof/rational.hpp"

#include <cctype>

namespace stratprof {

namespace {

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax = 0x7fffffffffffffffLL;

}  // namespace

Rational Rational::make_checked(__int128 num, __int128 den) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) den = 1;
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (abs128(num) > kMax || den > kMax)
    throw OverflowError("rational exceeds the exact 64-bit range");
  Rational r;
  r.num_ = static_cast<long long>(num);
  r.den_ = static_cast<long long>(den);
  return r;
}

Rational::Rational(long long num, long long den) {
  *this = make_checked(num, den);
}

Rational Rational::operator-() const { return make_checked(-__int128(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::make_checked(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_,
                                __int128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::make_checked(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_,
                                __int128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::make_checked(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error("rational division by zero");
  return Rational::make_checked(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
}

Rational Rational::pow2(long long e) {
  if (e < -62 || e > 62) throw OverflowError("2^" + std::to_string(e) + " outside exact range");
  if (e >= 0) return Rational(1LL << e);
  return Rational(1, 1LL << -e);
}

Rational Rational::parse(const std::string& text) {
  auto bad = [&]() -> Error { return Error("bad number literal: '" + text + "'"); };
  size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  // Values are range-checked after reduction in make_checked; the cap here
  // only keeps the accumulator far from __int128 limits.
  constexpr __int128 kParseCap = __int128(4) * kMax;
  auto digits_value = [&](size_t& pos) -> __int128 {
    size_t start = pos;
    __int128 v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > kParseCap) throw OverflowError("number literal too large: '" + text + "'");
      ++pos;
    }
    if (pos == start) throw bad();
    return v;
  };
  __int128 num = digits_value(i);
  __int128 den = 1;
  if (i < text.size() && text[i] == '.') {
    ++i;
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      num = num * 10 + (text[i] - '0');
      den *= 10;
      if (num > kParseCap || den > kParseCap)
        throw OverflowError("number literal too precise: '" + text + "'");
      ++i;
    }
    if (i == start) throw bad();
  } else if (i < text.size() && text[i] == '/') {
    ++i;
    den = digits_value(i);
  }
  if (i != text.size()) throw bad();
  return make_checked(neg ? -num : num, den);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace stratprof
