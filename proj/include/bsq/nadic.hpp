#pragma once

// Exact arithmetic in the ring Z[1/n].
//
// A value is stored as num / n^exp with exp >= 0.  Canonical form:
//   num == 0            => exp == 0
//   num != 0, exp > 0   => n does not divide num
// For n in {1, -1} the ring collapses to Z and exp is always 0, so two
// canonical values are equal iff their fields are equal for every base.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bsq {

using BigInt = boost::multiprecision::cpp_int;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The base n of Z[1/n]; n == 0 is rejected here and nowhere else.
class Base {
 public:
  explicit Base(std::int64_t n) : n_(n) {
    if (n == 0) throw Error("base n must be nonzero");
  }

  std::int64_t value() const { return n_; }
  std::int64_t abs() const { return n_ < 0 ? -n_ : n_; }
  bool is_unit() const { return n_ == 1 || n_ == -1; }

  /// n^k for k >= 0.
  BigInt pow(std::int64_t k) const {
    if (k < 0) throw Error("Base::pow: negative exponent");
    if (n_ == 1) return 1;
    if (n_ == -1) return (k % 2 == 0) ? 1 : -1;
    return boost::multiprecision::pow(BigInt(n_), static_cast<unsigned>(k));
  }

  friend bool operator==(const Base&, const Base&) = default;

 private:
  std::int64_t n_;
};

struct NAdic {
  BigInt num = 0;
  std::int64_t exp = 0;

  bool is_zero() const { return num == 0; }
  friend bool operator==(const NAdic&, const NAdic&) = default;
};

inline NAdic canonicalize(const Base& b, BigInt num, std::int64_t exp) {
  if (num == 0) return {};
  if (b.is_unit()) {
    // (-1)^(-e) == (-1)^e
    if (b.value() == -1 && (exp % 2 != 0)) num = -num;
    return {std::move(num), 0};
  }
  if (exp < 0) return {num * b.pow(-exp), 0};
  const BigInt n = b.value();
  while (exp > 0) {
    BigInt q, r;
    boost::multiprecision::divide_qr(num, n, q, r);
    if (r != 0) break;
    num = std::move(q);
    --exp;
  }
  return {std::move(num), exp};
}

inline NAdic from_integer(BigInt v) { return {std::move(v), 0}; }

inline NAdic add(const Base& b, const NAdic& x, const NAdic& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.exp == y.exp) return canonicalize(b, x.num + y.num, x.exp);
  if (x.exp > y.exp) return canonicalize(b, x.num + y.num * b.pow(x.exp - y.exp), x.exp);
  return canonicalize(b, x.num * b.pow(y.exp - x.exp) + y.num, y.exp);
}

inline NAdic neg(const NAdic& x) { return {-x.num, x.exp}; }

inline NAdic sub(const Base& b, const NAdic& x, const NAdic& y) { return add(b, x, neg(y)); }

/// x * n^k, k of either sign (the automorphism phi^(-k) of the semidirect product).
inline NAdic scale_pow(const Base& b, const NAdic& x, std::int64_t k) {
  if (x.is_zero()) return {};
  return canonicalize(b, x.num, x.exp - k);
}

/// x * m for an integer m.
inline NAdic mul_int(const Base& b, const NAdic& x, const BigInt& m) {
  return canonicalize(b, x.num * m, x.exp);
}

/// n^L * x as an exact integer.  Requires L >= x.exp.
inline BigInt to_integer(const Base& b, const NAdic& x, std::int64_t L) {
  if (L < x.exp) throw Error("to_integer: clearing exponent " + std::to_string(L) +
                             " is smaller than denominator exponent " + std::to_string(x.exp));
  return x.num * b.pow(L - x.exp);
}

/// Renders "num" or "num/n^exp" (negative bases are parenthesised: "5/(-2)^2").
inline std::string to_string(const Base& b, const NAdic& x) {
  std::string s = x.num.str();
  if (x.exp == 0) return s;
  const auto n = b.value();
  s += '/';
  s += n < 0 ? "(" + std::to_string(n) + ")" : std::to_string(n);
  s += '^' + std::to_string(x.exp);
  return s;
}

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline BigInt parse_bigint(std::string_view s, std::size_t& i) {
  skip_ws(s, i);
  const std::size_t start = i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  const std::size_t digits = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == digits) throw Error("expected integer at position " + std::to_string(start));
  std::string text(s.substr(start, i - start));
  if (text[0] == '+') text.erase(0, 1);
  return BigInt(text);
}

}  // namespace detail

/// Parses the output of to_string back into a canonical value.  The base
/// written in the text must match b.
inline NAdic parse_nadic(const Base& b, std::string_view s) {
  std::size_t i = 0;
  BigInt num = detail::parse_bigint(s, i);
  detail::skip_ws(s, i);
  if (i == s.size()) return canonicalize(b, num, 0);
  if (s[i] != '/') throw Error("expected '/' in n-adic literal");
  ++i;
  detail::skip_ws(s, i);
  BigInt base;
  if (i < s.size() && s[i] == '(') {
    ++i;
    base = detail::parse_bigint(s, i);
    detail::skip_ws(s, i);
    if (i >= s.size() || s[i] != ')') throw Error("expected ')' in n-adic literal");
    ++i;
  } else {
    base = detail::parse_bigint(s, i);
  }
  if (base != b.value()) throw Error("n-adic literal written over base " + base.str());
  detail::skip_ws(s, i);
  if (i >= s.size() || s[i] != '^') throw Error("expected '^' in n-adic literal");
  ++i;
  BigInt e = detail::parse_bigint(s, i);
  detail::skip_ws(s, i);
  if (i != s.size()) throw Error("trailing characters in n-adic literal");
  if (e < 0) throw Error("negative denominator exponent");
  return canonicalize(b, num, static_cast<std::int64_t>(e));
}

}  // namespace bsq
