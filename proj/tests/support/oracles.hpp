#pragma once

// Independent reference implementations used to check the library: a matrix
// evaluator for words, a brute-force assignment search, and residue / window
// enumeration for the exponent conditions of the spherical and genus-1 cases.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bsq/bsq.hpp"

namespace bsq::testing {

using Rational = boost::multiprecision::cpp_rational;
using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// A word of single letters a, A, t, T.
inline std::string random_letters(Rng& rng, std::size_t len) {
  static constexpr char kLetters[] = {'a', 'A', 't', 'T'};
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += kLetters[uniform(rng, 0, 3)];
  return s;
}

inline Word letters_to_word(const std::string& s) {
  Word w;
  for (char c : s) {
    switch (c) {
      case 'a': w.push_back(Syllable::gen_a(1)); break;
      case 'A': w.push_back(Syllable::gen_a(-1)); break;
      case 't': w.push_back(Syllable::gen_t(1)); break;
      case 'T': w.push_back(Syllable::gen_t(-1)); break;
      default: throw Error(std::string("bad letter ") + c);
    }
  }
  return w;
}

/// The affine image x -> n^-beta x + alpha of a word, computed with exact
/// rationals: a acts as x -> x + 1 and t as x -> x / n.
struct Affine {
  Rational scale = 1;
  Rational shift = 0;
};

inline Affine matrix_eval(std::int64_t n, const std::string& letters) {
  Affine m;
  const Rational nn(n);
  for (char c : letters) {
    // m * g, with g = [[s, v], [0, 1]]
    Rational s = 1, v = 0;
    if (c == 'a') v = 1;
    else if (c == 'A') v = -1;
    else if (c == 't') s = 1 / nn;
    else if (c == 'T') s = nn;
    m.shift += m.scale * v;
    m.scale *= s;
  }
  return m;
}

inline Rational to_rational(const Base& b, const NAdic& x) {
  return Rational(x.num) / Rational(b.pow(x.exp));
}

/// Does the element match the affine map?
inline bool matches(const Group& G, const Element& g, const Affine& m) {
  const Rational nn(G.n());
  Rational scale = 1;
  const std::int64_t steps = g.beta < 0 ? -g.beta : g.beta;
  for (std::int64_t i = 0; i < steps; ++i) scale = g.beta > 0 ? Rational(scale / nn) : Rational(scale * nn);
  return to_rational(G.base(), g.alpha) == m.shift && scale == m.scale;
}

inline std::string key(const Element& g) {
  return g.alpha.num.str() + "/" + std::to_string(g.alpha.exp) + "," + std::to_string(g.beta);
}

/// spheres[r] = elements whose shortest word over {a, t} has length r.
inline std::vector<std::vector<Element>> spheres(const Group& G, int radius) {
  std::vector<std::vector<Element>> out(1, {G.identity()});
  std::set<std::string> seen{key(G.identity())};
  const Element gens[] = {G.a(), G.a(-1), G.t(), G.t(-1)};
  for (int r = 1; r <= radius; ++r) {
    std::vector<Element> next;
    for (const auto& g : out.back())
      for (const auto& s : gens) {
        Element h = G.mul(g, s);
        if (seen.insert(key(h)).second) next.push_back(std::move(h));
      }
    out.push_back(std::move(next));
  }
  return out;
}

/// Searches assignments with every word of length <= cap (cap < sph.size()),
/// in order of total length.  Returns the first solution found.
inline std::optional<Solution> brute_solution(const Group& G, const EquationAst& ast,
                                              const std::vector<std::vector<Element>>& sph, int cap) {
  const std::size_t m = ast.vars.size();
  Solution sol;
  for (const auto& v : ast.vars) sol[v] = G.identity();
  if (m == 0) return verify(G, ast, sol) ? std::optional<Solution>(sol) : std::nullopt;
  std::vector<int> len(m, 0);
  auto assign = [&](auto&& self, std::size_t i) -> bool {
    if (i == m) return verify(G, ast, sol);
    for (const auto& g : sph[static_cast<std::size_t>(len[i])]) {
      sol[ast.vars[i]] = g;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  auto profile = [&](auto&& self, std::size_t i, int left) -> bool {
    if (i + 1 == m) {
      if (left > cap) return false;
      len[i] = left;
      return assign(assign, 0);
    }
    for (int l = 0; l <= std::min(left, cap); ++l) {
      len[i] = l;
      if (self(self, i + 1, left - l)) return true;
    }
    return false;
  };
  for (int total = 0; total <= cap * static_cast<int>(m); ++total)
    if (profile(profile, 0, total)) return sol;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exponent conditions, decided by enumeration.

/// Is sum alpha_i n^(x_i) in K * Z[1/n] for some integers x_i?  K = 0 asks
/// for an exact zero.
inline bool exponent_condition(std::int64_t n, std::vector<NAdic> alpha, BigInt K) {
  const Base b(n);
  std::erase_if(alpha, [](const NAdic& a) { return a.is_zero(); });
  if (alpha.empty()) return true;
  K = abs(K);
  if (K == 0) {
    // exact: scale to integers and try all exponents in a window
    std::vector<BigInt> q;
    std::int64_t E = 0;
    for (const auto& a : alpha) E = std::max(E, a.exp);
    for (const auto& a : alpha) q.push_back(a.num * b.pow(E - a.exp));
    if (b.is_unit()) {
      // n = 1: x is irrelevant; n = -1: only parities matter
      const std::size_t k = q.size();
      for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        if (n == 1 && mask) break;
        BigInt s = 0;
        for (std::size_t i = 0; i < k; ++i) s += (mask >> i & 1) ? BigInt(-q[i]) : q[i];
        if (s == 0) return true;
      }
      return false;
    }
    std::int64_t R = static_cast<std::int64_t>(q.size());
    for (const auto& v : q) R += static_cast<std::int64_t>(msb(abs(v))) + 2;
    const std::size_t k = q.size();
    if (k == 1) return false;
    // x_1 = 0 by shift invariance
    std::vector<std::int64_t> x(k, -R);
    x[0] = 0;
    while (true) {
      Rational s = 0;
      for (std::size_t i = 0; i < k; ++i)
        s += x[i] >= 0 ? Rational(q[i] * b.pow(x[i])) : Rational(q[i]) / Rational(b.pow(-x[i]));
      if (s == 0) return true;
      std::size_t i = 1;
      while (i < k && x[i] == R) x[i++] = -R;
      if (i == k) return false;
      ++x[i];
    }
  }
  // strip the primes of K shared with n; n is then a unit modulo K
  const BigInt nn = n < 0 ? BigInt(-n) : BigInt(n);
  for (BigInt g = gcd(K, nn); g > 1; g = gcd(K, nn)) K /= g;
  if (K == 1) return true;
  const BigInt nmod = ((BigInt(n) % K) + K) % K;
  std::vector<BigInt> powers{1};
  for (BigInt p = nmod; p != 1; p = p * nmod % K) powers.push_back(p);
  std::set<BigInt> reach{0};
  for (const auto& a : alpha) {
    std::set<BigInt> next;
    const BigInt base = ((a.num % K) + K) % K;
    for (const auto& r : reach)
      for (const auto& p : powers) next.insert((r + base * p) % K);
    reach = std::move(next);
  }
  return reach.count(0) > 0;
}

/// The spherical criterion for prod z_i^-1 c_i z_i = 1.
inline bool spherical_oracle(std::int64_t n, const std::vector<Element>& c) {
  std::int64_t sum = 0, g = 0;
  std::vector<NAdic> alpha;
  for (const auto& e : c) {
    sum += e.beta;
    g = std::gcd(g, e.beta < 0 ? -e.beta : e.beta);
    alpha.push_back(e.alpha);
  }
  if (sum != 0) return false;
  const Base b(n);
  return exponent_condition(n, alpha, b.pow(g) - 1);
}

/// The criterion for x^2 prod z_i^-1 c_i z_i = 1.
inline bool genus1_oracle(std::int64_t n, const std::vector<Element>& c) {
  std::int64_t sum = 0, g = 0;
  std::vector<NAdic> alpha;
  for (const auto& e : c) {
    sum += e.beta;
    g = std::gcd(g, e.beta < 0 ? -e.beta : e.beta);
    alpha.push_back(e.alpha);
  }
  if (sum % 2 != 0) return false;
  const Base b(n);
  const std::int64_t bx = sum / 2 < 0 ? -sum / 2 : sum / 2;
  const BigInt K = gcd(abs(b.pow(bx) + 1), abs(b.pow(g) - 1));
  return exponent_condition(n, alpha, K);
}

/// Independent abelianization test for the orientable (genus >= 1) and
/// nonorientable (genus >= 2) cases: the product of the constants must lie
/// in the derived subgroup, resp. the subgroup generated by squares.
inline bool linear_oracle(std::int64_t n, bool orientable, const ExpSums& e) {
  if (orientable) {
    if (e.sigma_t != 0) return false;
    const BigInt m = BigInt(n) - 1;
    return m == 0 ? e.sigma_a == 0 : e.sigma_a % m == 0;
  }
  if (e.sigma_t % 2 != 0) return false;
  return n % 2 == 0 || e.sigma_a % 2 == 0;
}

}  // namespace bsq::testing
