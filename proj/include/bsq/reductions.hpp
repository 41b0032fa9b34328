#pragma once

// Equations encoding 3-PARTITION and PARTITION instances, with brute-force
// deciders for the combinatorial side.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "bsq/equation.hpp"
#include "bsq/expsolve.hpp"

namespace bsq {

struct ThreePartInstance {
  std::vector<std::int64_t> a;

  std::int64_t k() const { return static_cast<std::int64_t>(a.size() / 3); }
  std::int64_t total() const { return std::accumulate(a.begin(), a.end(), std::int64_t{0}); }
  std::int64_t L() const { return total() / k(); }

  /// Throws unless |a| = 3k > 0, k divides the sum, and L/4 < a_i < L/2.
  void validate() const {
    if (a.empty() || a.size() % 3 != 0) throw Error("3-partition instance needs 3k > 0 numbers");
    if (total() % k() != 0) throw Error("3-partition target sum is not an integer");
    const std::int64_t L = this->L();
    for (auto v : a)
      if (!(4 * v > L && 2 * v < L))
        throw Error("3-partition value " + std::to_string(v) + " outside (L/4, L/2) for L = " + std::to_string(L));
  }
};

namespace detail {

inline bool three_part_rec(std::vector<std::int64_t>& rest, std::int64_t L) {
  if (rest.empty()) return true;
  const std::int64_t first = rest.back();
  rest.pop_back();
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (i > 0 && rest[i] == rest[i - 1]) continue;
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      if (j > i + 1 && rest[j] == rest[j - 1]) continue;
      if (first + rest[i] + rest[j] != L) continue;
      std::vector<std::int64_t> next;
      for (std::size_t m = 0; m < rest.size(); ++m)
        if (m != i && m != j) next.push_back(rest[m]);
      if (three_part_rec(next, L)) {
        rest.push_back(first);
        return true;
      }
    }
  }
  rest.push_back(first);
  return false;
}

}  // namespace detail

/// Exhaustive search for a split into k triples of sum L.
inline bool brute_3part(const ThreePartInstance& inst) {
  inst.validate();
  std::vector<std::int64_t> v = inst.a;
  std::sort(v.begin(), v.end());
  return detail::three_part_rec(v, inst.L());
}

/// The triples of a positive instance (as indices), or empty.
inline std::vector<std::array<std::size_t, 3>> three_part_triples(const ThreePartInstance& inst) {
  inst.validate();
  const std::size_t m = inst.a.size();
  std::vector<bool> used(m, false);
  std::vector<std::array<std::size_t, 3>> out;
  auto rec = [&](auto&& self) -> bool {
    std::size_t f = 0;
    while (f < m && used[f]) ++f;
    if (f == m) return true;
    used[f] = true;
    for (std::size_t i = f + 1; i < m; ++i) {
      if (used[i]) continue;
      used[i] = true;
      for (std::size_t j = i + 1; j < m; ++j) {
        if (used[j] || inst.a[f] + inst.a[i] + inst.a[j] != inst.L()) continue;
        used[j] = true;
        out.push_back({f, i, j});
        if (self(self)) return true;
        out.pop_back();
        used[j] = false;
      }
      used[i] = false;
    }
    used[f] = false;
    return false;
  };
  if (!rec(rec)) out.clear();
  return out;
}

/// Subset-sum split of S into two halves of equal sum.
inline bool brute_partition(const std::vector<std::int64_t>& S) {
  const std::int64_t total = std::accumulate(S.begin(), S.end(), std::int64_t{0});
  if (total % 2 != 0) return false;
  std::vector<bool> reach(static_cast<std::size_t>(total / 2 + 1), false);
  reach[0] = true;
  for (auto s : S)
    for (std::int64_t v = total / 2; v >= s; --v)
      if (reach[static_cast<std::size_t>(v - s)]) reach[static_cast<std::size_t>(v)] = true;
  return reach[static_cast<std::size_t>(total / 2)];
}

namespace detail {

inline void push_block(EquationAst& ast, const std::string& z, const BigInt& power) {
  ast.word.push_back(Syllable::variable(z, -1));
  if (power != 0) ast.word.push_back(Syllable::gen_a(power));
  ast.word.push_back(Syllable::variable(z, 1));
  ast.vars.push_back(z);
}

}  // namespace detail

/// Largest separation constant tried for the spherical gadget.
inline constexpr std::int64_t kSeparationCap = 16;

struct SphericalGadget {
  EquationAst ast;
  std::int64_t c = 1;
  std::vector<BigInt> b;  // exponents of the conjugated a-powers
  BigInt rhs = 0;         // exponent of the right-hand side a-power
};

/// z_1^-1 a^b_1 z_1 ... z_3k^-1 a^b_3k z_3k = a^b with
/// b_i = sum_{j < a_i} n^(4ckL - jc) and
/// b   = sum_{j < L} sum_{i < k} n^(4ckL - jc - 2icL).
/// The conjugators z_i = t^-x_i of a partition give sum b_i n^-x_i = b.
inline SphericalGadget gen_spherical_from_3part(const ThreePartInstance& inst, std::int64_t n) {
  inst.validate();
  const Base base(n);
  if (base.abs() < 2) throw Error("gen_spherical_from_3part: needs |n| >= 2");
  SphericalGadget g;
  const std::int64_t k = inst.k(), L = inst.L();
  g.c = separation_constant(L * k, n, kSeparationCap);
  const std::int64_t top = 4 * g.c * k * L;
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    BigInt bi = 0;
    for (std::int64_t j = 0; j < inst.a[i]; ++j) bi += base.pow(top - j * g.c);
    g.b.push_back(bi);
    detail::push_block(g.ast, "z" + std::to_string(i + 1), bi);
  }
  for (std::int64_t j = 0; j < L; ++j)
    for (std::int64_t i = 0; i < k; ++i) g.rhs += base.pow(top - j * g.c - 2 * i * g.c * L);
  g.ast.word.push_back(Syllable::gen_a(-g.rhs));
  return g;
}

struct Genus1Gadget {
  EquationAst ast;
  std::int64_t M = 0;
  std::vector<BigInt> A;  // A(a_i)
  BigInt A_star = 0;
};

/// x^2 (y^-1 t^2M y) a^-A* prod z_i^-1 a^A(a_i) z_i with A(s) = sum_{1<=i<=s} n^(ikL),
/// A* = sum_{i<k} n^(ikL(L+1)) A(L) and M = k^2 L (L+1).
inline Genus1Gadget gen_genus1_from_3part(const ThreePartInstance& inst, std::int64_t n) {
  inst.validate();
  const Base base(n);
  if (base.abs() < 2) throw Error("gen_genus1_from_3part: needs |n| >= 2");
  Genus1Gadget g;
  const std::int64_t k = inst.k(), L = inst.L();
  g.M = k * k * L * (L + 1);
  auto A = [&](std::int64_t s) {
    BigInt v = 0;
    for (std::int64_t i = 1; i <= s; ++i) v += base.pow(i * k * L);
    return v;
  };
  const BigInt AL = A(L);
  for (std::int64_t i = 0; i < k; ++i) g.A_star += base.pow(i * k * L * (L + 1)) * AL;
  auto& w = g.ast.word;
  w.push_back(Syllable::variable("x", 1));
  w.push_back(Syllable::variable("x", 1));
  w.push_back(Syllable::variable("y", -1));
  w.push_back(Syllable::gen_t(2 * g.M));
  w.push_back(Syllable::variable("y", 1));
  w.push_back(Syllable::gen_a(-g.A_star));
  g.ast.vars = {"x", "y"};
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    g.A.push_back(A(inst.a[i]));
    detail::push_block(g.ast, "z" + std::to_string(i + 1), g.A.back());
  }
  return g;
}

/// prod z_i^-1 a^s_i z_i = 1 over BS(1,-1).
inline EquationAst gen_spherical_from_part(const std::vector<std::int64_t>& S) {
  if (S.empty()) throw Error("gen_spherical_from_part: empty multiset");
  EquationAst ast;
  for (std::size_t i = 0; i < S.size(); ++i) detail::push_block(ast, "z" + std::to_string(i + 1), S[i]);
  return ast;
}

}  // namespace bsq
