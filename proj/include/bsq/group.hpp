#pragma once

// BS(1,n) = <a, t | t^-1 a t = a^n> realised as Z[1/n] x| Z.
//
// (v1, b1) * (v2, b2) = (v1 + v2 * n^-b1, b1 + b2),  a = (1, 0),  t = (0, 1).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bsq/nadic.hpp"

namespace bsq {

struct Element {
  NAdic alpha;
  std::int64_t beta = 0;

  bool is_identity() const { return alpha.is_zero() && beta == 0; }
  friend bool operator==(const Element&, const Element&) = default;
};

/// One syllable of a word: a^k, t^k, or a single signed variable occurrence.
struct Syllable {
  enum class Kind : std::uint8_t { a, t, var };
  Kind kind = Kind::a;
  BigInt power = 1;  // +-1 for variables
  std::string var;

  static Syllable gen_a(BigInt k) { return {Kind::a, std::move(k), {}}; }
  static Syllable gen_t(BigInt k) { return {Kind::t, std::move(k), {}}; }
  static Syllable variable(std::string name, int sign) { return {Kind::var, sign, std::move(name)}; }

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

using Word = std::vector<Syllable>;

/// Letter count |w|: a^k and t^k count |k| letters, each variable occurrence one.
inline BigInt word_length(const Word& w) {
  BigInt len = 0;
  for (const auto& s : w) len += abs(s.power);
  return len;
}

inline Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Syllable s = *it;
    s.power = -s.power;
    out.push_back(std::move(s));
  }
  return out;
}

/// Appends s to w, merging adjacent powers of the same generator and
/// cancelling x x^-1.
inline void append_reduced(Word& w, Syllable s) {
  if (s.power == 0) return;
  if (!w.empty()) {
    auto& last = w.back();
    if (last.kind == s.kind && s.kind != Syllable::Kind::var) {
      last.power += s.power;
      if (last.power == 0) w.pop_back();
      return;
    }
    if (s.kind == Syllable::Kind::var && last.kind == Syllable::Kind::var && last.var == s.var &&
        last.power == -s.power) {
      w.pop_back();
      return;
    }
  }
  w.push_back(std::move(s));
}

struct ExpSums {
  BigInt sigma_a = 0;
  BigInt sigma_t = 0;
  friend bool operator==(const ExpSums&, const ExpSums&) = default;
};

/// Signed exponent sums of a and t; variables contribute nothing.
inline ExpSums exp_sums(const Word& w) {
  ExpSums e;
  for (const auto& s : w) {
    if (s.kind == Syllable::Kind::a) e.sigma_a += s.power;
    else if (s.kind == Syllable::Kind::t) e.sigma_t += s.power;
  }
  return e;
}

inline std::int64_t to_i64(const BigInt& v, const char* what) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
    throw Error(std::string(what) + " does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

class Group {
 public:
  explicit Group(Base b) : b_(b) {}
  explicit Group(std::int64_t n) : b_(n) {}

  const Base& base() const { return b_; }
  std::int64_t n() const { return b_.value(); }

  Element identity() const { return {}; }
  Element a(const BigInt& k = 1) const { return {from_integer(k), 0}; }
  Element t(std::int64_t k = 1) const { return {{}, k}; }
  Element make(const NAdic& alpha, std::int64_t beta) const { return {alpha, beta}; }

  Element mul(const Element& g, const Element& h) const {
    return {add(b_, g.alpha, scale_pow(b_, h.alpha, -g.beta)), g.beta + h.beta};
  }

  Element inv(const Element& g) const { return {neg(scale_pow(b_, g.alpha, g.beta)), -g.beta}; }

  /// h^-1 g h
  Element conj(const Element& g, const Element& h) const { return mul(mul(inv(h), g), h); }

  /// [x, y] = x^-1 y^-1 x y
  Element commutator(const Element& x, const Element& y) const {
    return mul(mul(inv(x), inv(y)), mul(x, y));
  }

  Element square(const Element& x) const { return mul(x, x); }

  Element pow(const Element& g, std::int64_t k) const {
    Element base = k < 0 ? inv(g) : g;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    Element acc;
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  /// Evaluates a word over {a, t}.  Variables are rejected.
  Element eval_word(const Word& w) const {
    Element g;
    for (const auto& s : w) {
      switch (s.kind) {
        case Syllable::Kind::a:
          g.alpha = add(b_, g.alpha, scale_pow(b_, from_integer(s.power), -g.beta));
          break;
        case Syllable::Kind::t:
          g.beta += to_i64(s.power, "t-exponent");
          break;
        case Syllable::Kind::var:
          throw Error("eval_word: variable '" + s.var + "' in a constant word");
      }
    }
    return g;
  }

  /// Renders g as t^u a^(e0 d0) t^-1 a^(e1 d1) ... t^-1 a^(eL dL) t^(L-u+y), where
  /// d_L..d_0 are the base-|n| digits of |num| and the signs e_i absorb
  /// sign(num) * sign(n)^i.  For |n| <= 1 the rendering is a^num t^beta.
  Word element_to_word(const Element& g) const {
    Word w;
    const auto& alpha = g.alpha;
    if (alpha.is_zero() || b_.is_unit()) {
      append_reduced(w, Syllable::gen_a(alpha.num));
      append_reduced(w, Syllable::gen_t(g.beta));
      return w;
    }
    const std::int64_t u = alpha.exp;
    const BigInt absn = b_.abs();
    const int num_sign = alpha.num < 0 ? -1 : 1;
    const int n_sign = b_.value() < 0 ? -1 : 1;
    BigInt rest = abs(alpha.num);
    append_reduced(w, Syllable::gen_t(u));
    std::int64_t level = 0;
    int sign_pow = 1;  // sign(n)^level
    while (true) {
      BigInt q, d;
      boost::multiprecision::divide_qr(rest, absn, q, d);
      append_reduced(w, Syllable::gen_a(d * num_sign * sign_pow));
      rest = std::move(q);
      if (rest == 0) break;
      append_reduced(w, Syllable::gen_t(-1));
      ++level;
      sign_pow *= n_sign;
    }
    append_reduced(w, Syllable::gen_t(level - u + g.beta));
    return w;
  }

  bool in_derived_subgroup(const Element& g) const {
    if (g.beta != 0) return false;
    const std::int64_t m = n() - 1;
    if (m == 0) return g.alpha.is_zero();
    return g.alpha.num % m == 0;
  }

  bool in_squares_subgroup(const Element& g) const {
    if (g.beta % 2 != 0) return false;
    if (n() % 2 == 0) return true;
    return g.alpha.num % 2 == 0;
  }

  /// (x, y) with [x, y] == g, following t^p a^(k(n-1)) t^-p = [t, a^-k t^-p].
  std::pair<Element, Element> commutator_express(const Element& g) const {
    if (!in_derived_subgroup(g)) throw Error("commutator_express: element is not in the derived subgroup");
    if (g.is_identity()) return {identity(), identity()};
    const std::int64_t p = g.alpha.exp;
    const BigInt k = g.alpha.num / (n() - 1);
    const Element x = t();
    for (const BigInt& kk : {k, BigInt(-k)}) {
      const Element y = mul(a(-kk), t(-p));
      if (commutator(x, y) == g) return {x, y};
      if (commutator(y, x) == g) return {y, x};
    }
    throw Error("commutator_express: witness failed substitution check");
  }

  /// (x, y) with x^2 y^2 == g.  Conjugates g by t^K so that its a-part is an
  /// integer of the right parity, solves 2p + (1 + n^|b|) q = n^K alpha, then
  /// conjugates the witnesses back.
  std::pair<Element, Element> squares_express(const Element& g) const {
    if (!in_squares_subgroup(g)) throw Error("squares_express: element is not in the squares subgroup");
    if (g.is_identity()) return {identity(), identity()};
    const std::int64_t b = g.beta / 2;
    const std::int64_t absb = b < 0 ? -b : b;
    const BigInt c = 1 + b_.pow(absb);
    std::int64_t K = g.alpha.exp;
    BigInt target = to_integer(b_, g.alpha, K);
    if (c % 2 == 0 && target % 2 != 0) {
      // only reachable for even n with b == 0
      target *= n();
      ++K;
    }
    BigInt p, q;
    if (c % 2 == 0) {
      q = 0;
      p = target / 2;
    } else {
      q = target % 2 == 0 ? 0 : 1;
      p = (target - c * q) / 2;
    }
    const Element x0{from_integer(p), 0};
    const Element y0 = b >= 0 ? Element{from_integer(q * b_.pow(b)), b} : Element{from_integer(q), b};
    const Element tk = t(K);
    const Element tk_inv = t(-K);
    const Element x = mul(mul(tk, x0), tk_inv);
    const Element y = mul(mul(tk, y0), tk_inv);
    if (mul(square(x), square(y)) == g) return {x, y};
    if (mul(square(y), square(x)) == g) return {y, x};
    throw Error("squares_express: witness failed substitution check");
  }

 private:
  Base b_;
};

// ---------------------------------------------------------------------------
// Text syntax for words and elements.

/// Renders a word: a, A, t, T for unit powers, a^k / t^k otherwise, variables
/// by name (upper-cased first letter for the inverse).  The empty word is "1".
inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& s : w) {
    if (!out.empty()) out += ' ';
    if (s.kind == Syllable::Kind::var) {
      std::string name = s.var;
      if (s.power < 0) name[0] = static_cast<char>(name[0] - 'a' + 'A');
      out += name;
      continue;
    }
    const char lo = s.kind == Syllable::Kind::a ? 'a' : 't';
    if (s.power == 1) out += lo;
    else if (s.power == -1) out += static_cast<char>(lo - 'a' + 'A');
    else out += std::string(1, lo) + "^" + s.power.str();
  }
  return out;
}

inline std::string to_string(const Base& b, const Element& g) {
  return "(" + to_string(b, g.alpha) + ", " + std::to_string(g.beta) + ")";
}

/// Parses "(num/n^exp, beta)".
inline Element parse_element(const Base& b, std::string_view s) {
  const auto open = s.find('(');
  const auto comma = s.rfind(',');
  const auto close = s.rfind(')');
  if (open == std::string_view::npos || comma == std::string_view::npos || close == std::string_view::npos ||
      !(open < comma && comma < close))
    throw Error("malformed element literal: " + std::string(s));
  Element g;
  g.alpha = parse_nadic(b, s.substr(open + 1, comma - open - 1));
  std::size_t i = 0;
  const auto beta_text = s.substr(comma + 1, close - comma - 1);
  g.beta = to_i64(detail::parse_bigint(beta_text, i), "beta");
  detail::skip_ws(beta_text, i);
  if (i != beta_text.size()) throw Error("malformed element literal: " + std::string(s));
  return g;
}

}  // namespace bsq
