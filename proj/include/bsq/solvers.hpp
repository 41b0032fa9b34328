#pragma once

// Decision procedures for the standard forms, with constructive witnesses
// checked by substitution.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bsq/equation.hpp"
#include "bsq/expsolve.hpp"
#include "bsq/group.hpp"

namespace bsq {

/// size(solution) <= kCubicSizeConstant * |W|^3 for every solver output, and
/// <= kLinearSizeConstant * |W| for orientable and genus >= 2 outputs.
inline constexpr std::int64_t kCubicSizeConstant = 1;
inline constexpr std::int64_t kLinearSizeConstant = 6;

struct Verdict {
  bool solvable = false;
  std::string case_tag;
  std::optional<Solution> solution;
  std::map<std::string, std::string> witnesses;
  StandardForm standard_form;
  BigInt input_length = 0;
  BigInt size = 0;
  BigInt bound = 0;
};

/// Sum of the lengths of the a,t-words representing each value.
inline BigInt solution_size(const Group& G, const Solution& sol) {
  BigInt total = 0;
  for (const auto& [name, g] : sol) total += word_length(G.element_to_word(g));
  return total;
}

inline BigInt cubic_size_bound(const BigInt& w) { return kCubicSizeConstant * w * w * w; }
inline BigInt linear_size_bound(const BigInt& w) { return kLinearSizeConstant * w; }

/// Value of the standard-form word under sol.
inline Element evaluate(const Group& G, const StandardForm& sf, const Solution& sol) {
  auto val = [&](const std::string& v) -> const Element& {
    auto it = sol.find(v);
    if (it == sol.end()) throw Error("no binding for variable '" + v + "'");
    return it->second;
  };
  Element g;
  if (sf.kind == StandardForm::Kind::orientable) {
    for (std::size_t i = 0; i + 1 < sf.handle_vars.size(); i += 2)
      g = G.mul(g, G.commutator(val(sf.handle_vars[i]), val(sf.handle_vars[i + 1])));
  } else if (sf.kind == StandardForm::Kind::nonorientable) {
    for (const auto& x : sf.handle_vars) g = G.mul(g, G.square(val(x)));
  }
  for (std::size_t j = 0; j < sf.k(); ++j) g = G.mul(g, G.conj(sf.constants[j], val(sf.conjugators[j])));
  return g;
}

inline Element constants_product(const Group& G, const StandardForm& sf) {
  Element g;
  for (const auto& c : sf.constants) g = G.mul(g, c);
  return g;
}

namespace detail {

inline std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

inline std::string join(const std::vector<BigInt>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x.str();
  return s;
}

inline Solution identity_solution(const StandardForm& sf) {
  Solution s;
  for (const auto& v : sf.handle_vars) s[v] = {};
  for (const auto& v : sf.conjugators) s[v] = {};
  return s;
}

/// Data shared by the spherical and genus-1 constructions: the a-parts of the
/// constants cleared to integers q_i = alpha_i n^E and the prefix t-sums.
struct ConstantData {
  std::int64_t E = 0;
  std::vector<BigInt> q;
  std::vector<std::int64_t> beta;
  std::vector<std::int64_t> prefix;  // sum_{j<i} beta_j
  std::int64_t beta_sum = 0;
  std::int64_t beta_gcd = 0;
};

inline ConstantData constant_data(const Group& G, const StandardForm& sf) {
  ConstantData d;
  for (const auto& c : sf.constants) d.E = std::max(d.E, c.alpha.exp);
  for (const auto& c : sf.constants) {
    d.q.push_back(to_integer(G.base(), c.alpha, d.E));
    d.beta.push_back(c.beta);
    d.prefix.push_back(d.beta_sum);
    d.beta_sum += c.beta;
    d.beta_gcd = std::gcd(d.beta_gcd, c.beta < 0 ? -c.beta : c.beta);
  }
  return d;
}

inline BigInt exponent_sum(const Group& G, const std::vector<BigInt>& q, const Exponents& x) {
  BigInt v = 0;
  for (std::size_t i = 0; i < q.size(); ++i) v += q[i] * G.base().pow(x[i]);
  return v;
}

/// z_i = (v_i, x_i + prefix_i) with v_i chosen so that the constants' a-parts
/// cancel against h * sum s_i (n^|beta_i| - 1).
inline std::vector<Element> conjugators(const Group& G, const ConstantData& d, const Exponents& x,
                                        const BigInt& h, const std::vector<BigInt>& s) {
  const Base& b = G.base();
  std::vector<Element> z;
  for (std::size_t i = 0; i < d.q.size(); ++i) {
    Element zi;
    zi.beta = x[i] + d.prefix[i];
    if (d.beta[i] != 0 && h != 0 && s[i] != 0) {
      const BigInt hs = h * s[i];
      zi.alpha = d.beta[i] > 0 ? canonicalize(b, hs, x[i] + d.E - d.beta[i]) : canonicalize(b, -hs, x[i] + d.E);
    }
    z.push_back(std::move(zi));
  }
  return z;
}

}  // namespace detail

inline Verdict solve_spherical(const Group& G, const StandardForm& sf, const SearchCaps& caps = {}) {
  if (sf.kind != StandardForm::Kind::spherical) throw Error("solve_spherical: not a spherical standard form");
  Verdict v;
  v.standard_form = sf;
  const auto d = detail::constant_data(G, sf);
  if (d.beta_sum != 0) {
    v.case_tag = "spherical";
    v.witnesses["beta_sum"] = std::to_string(d.beta_sum);
    return v;
  }
  const BigInt M = abs(G.base().pow(d.beta_gcd) - 1);
  std::optional<Exponents> x;
  if (M == 0) {
    v.case_tag = "spherical/exact";
    x = solve_exact(G.base(), d.q, caps);
  } else {
    v.case_tag = "spherical/congruence";
    v.witnesses["modulus"] = M.str();
    x = solve_congruence(G.base(), d.q, M, d.beta_gcd, caps);
  }
  if (!x) return v;
  v.witnesses["exponents"] = detail::join(*x);
  BigInt h = 0;
  std::vector<BigInt> s(d.q.size(), 0);
  if (M != 0) {
    std::vector<BigInt> D;
    for (auto bi : d.beta) D.push_back(G.base().pow(bi < 0 ? -bi : bi) - 1);
    auto bz = bezout_bounded(D);
    const BigInt V = detail::exponent_sum(G, d.q, *x);
    if (V % bz.gcd != 0) throw Error("solve_spherical: congruence witness is not divisible by the gcd");
    h = V / bz.gcd;
    s = bz.s;
    v.witnesses["bezout"] = detail::join(s);
    v.witnesses["h"] = h.str();
  }
  const auto z = detail::conjugators(G, d, *x, h, s);
  Solution sol;
  for (std::size_t i = 0; i < z.size(); ++i) sol[sf.conjugators[i]] = z[i];
  if (!evaluate(G, sf, sol).is_identity()) throw Error("solve_spherical: construction failed substitution check");
  v.solvable = true;
  v.solution = std::move(sol);
  return v;
}

inline Verdict solve_orientable(const Group& G, const StandardForm& sf) {
  if (sf.kind != StandardForm::Kind::orientable || sf.genus < 1) throw Error("solve_orientable: wrong standard form");
  Verdict v;
  v.standard_form = sf;
  v.case_tag = "orientable";
  const Element target = G.inv(constants_product(G, sf));
  if (!G.in_derived_subgroup(target)) return v;
  auto [x, y] = G.commutator_express(target);
  Solution sol = detail::identity_solution(sf);
  sol[sf.handle_vars[0]] = x;
  sol[sf.handle_vars[1]] = y;
  v.witnesses["commutator"] = to_string(G.base(), x) + " " + to_string(G.base(), y);
  if (!evaluate(G, sf, sol).is_identity()) throw Error("solve_orientable: construction failed substitution check");
  v.solvable = true;
  v.solution = std::move(sol);
  return v;
}

inline Verdict solve_nonorientable_genus1(const Group& G, const StandardForm& sf, const SearchCaps& caps = {}) {
  if (sf.kind != StandardForm::Kind::nonorientable || sf.genus != 1)
    throw Error("solve_nonorientable_genus1: wrong standard form");
  Verdict v;
  v.standard_form = sf;
  v.case_tag = "nonorientable-1";
  const Base& b = G.base();
  const auto d = detail::constant_data(G, sf);
  if (d.beta_sum % 2 != 0) {
    v.witnesses["beta_sum"] = std::to_string(d.beta_sum);
    return v;
  }
  const std::int64_t bx = -d.beta_sum / 2;
  std::vector<BigInt> D{b.pow(bx < 0 ? -bx : bx) + 1};
  for (auto bi : d.beta) D.push_back(b.pow(bi < 0 ? -bi : bi) - 1);
  BigInt K = 0;
  for (const auto& Di : D) K = gcd(K, abs(Di));
  v.witnesses["modulus"] = K.str();

  std::optional<Exponents> x;
  const bool all_flat = std::all_of(d.beta.begin(), d.beta.end(), [](auto bi) { return bi == 0; });
  if (K == 0) {
    v.case_tag += "/exact";
    x = solve_exact(b, d.q, caps);
  } else if (K == 1) {
    x = Exponents(d.q.size(), 0);
  } else if (gcd(K, BigInt(b.value())) != 1) {
    // only K = 2 with n even and every beta_i = 0: n^1 makes every term even
    if (!(K == 2 && all_flat)) throw Error("solve_nonorientable_genus1: unexpected modulus");
    x = Exponents(d.q.size(), 1);
  } else {
    v.case_tag += "/congruence";
    x = solve_congruence(b, d.q, K, d.beta_gcd > 0 ? d.beta_gcd : 1, caps);
  }
  if (!x) return v;
  v.witnesses["exponents"] = detail::join(*x);

  BigInt h = 0;
  std::vector<BigInt> s(D.size(), 0);
  if (K != 0) {
    auto bz = bezout_bounded(D);
    const BigInt V = detail::exponent_sum(G, d.q, *x);
    if (V % bz.gcd != 0) throw Error("solve_nonorientable_genus1: witness is not divisible by the gcd");
    h = V / bz.gcd;
    s = bz.s;
    v.witnesses["bezout"] = detail::join(s);
    v.witnesses["h"] = h.str();
  }
  const std::vector<BigInt> si(s.begin() + 1, s.end());
  const auto z = detail::conjugators(G, d, *x, h, si);
  Element xe;
  xe.beta = bx;
  if (h != 0 && s[0] != 0) {
    // m = -h s_x n^-E;  alpha_x = m n^-bx (bx >= 0) or m n^-2bx (bx < 0)
    const std::int64_t shift = bx >= 0 ? bx : 2 * bx;
    xe.alpha = canonicalize(b, -h * s[0], d.E + shift);
  }
  Solution sol;
  sol[sf.handle_vars[0]] = xe;
  for (std::size_t i = 0; i < z.size(); ++i) sol[sf.conjugators[i]] = z[i];
  if (!evaluate(G, sf, sol).is_identity())
    throw Error("solve_nonorientable_genus1: construction failed substitution check");
  v.solvable = true;
  v.solution = std::move(sol);
  return v;
}

inline Verdict solve_nonorientable_genus2plus(const Group& G, const StandardForm& sf) {
  if (sf.kind != StandardForm::Kind::nonorientable || sf.genus < 2)
    throw Error("solve_nonorientable_genus2plus: wrong standard form");
  Verdict v;
  v.standard_form = sf;
  v.case_tag = "nonorientable-2+";
  const Element target = G.inv(constants_product(G, sf));
  if (!G.in_squares_subgroup(target)) return v;
  auto [x1, x2] = G.squares_express(target);
  Solution sol = detail::identity_solution(sf);
  sol[sf.handle_vars[0]] = x1;
  sol[sf.handle_vars[1]] = x2;
  v.witnesses["squares"] = to_string(G.base(), x1) + " " + to_string(G.base(), x2);
  if (!evaluate(G, sf, sol).is_identity())
    throw Error("solve_nonorientable_genus2plus: construction failed substitution check");
  v.solvable = true;
  v.solution = std::move(sol);
  return v;
}

inline Verdict solve_standard_form(const Group& G, const StandardForm& sf, const SearchCaps& caps = {}) {
  switch (sf.kind) {
    case StandardForm::Kind::trivial: {
      Verdict v;
      v.standard_form = sf;
      v.case_tag = "trivial";
      v.solvable = true;
      v.solution = Solution{};
      return v;
    }
    case StandardForm::Kind::spherical: return solve_spherical(G, sf, caps);
    case StandardForm::Kind::orientable: return solve_orientable(G, sf);
    case StandardForm::Kind::nonorientable:
      return sf.genus == 1 ? solve_nonorientable_genus1(G, sf, caps) : solve_nonorientable_genus2plus(G, sf);
  }
  throw Error("solve_standard_form: unknown kind");
}

/// Normalizes, dispatches, pulls the witness back and re-verifies it on the
/// original equation.
inline Verdict solve(const Group& G, const EquationAst& ast, const SearchCaps& caps = {}) {
  auto [sf, sub] = to_standard_form(G, ast);
  Verdict v = solve_standard_form(G, sf, caps);
  v.input_length = ast.length();
  v.bound = cubic_size_bound(v.input_length);
  if (!v.solvable) return v;
  Solution original = pull_back(G, sub, *v.solution);
  if (!verify(G, ast, original)) throw Error("solve: pulled-back solution failed verification");
  v.solution = std::move(original);
  v.size = solution_size(G, *v.solution);
  return v;
}

inline Verdict solve(const Group& G, std::string_view text, const SearchCaps& caps = {}) {
  return solve(G, parse_equation(text), caps);
}

/// Decision for equations whose surface is orientable of genus >= 1 or
/// nonorientable of genus >= 2, from the exponent sums of the constant letters
/// alone, in one pass over the word.  Returns nullopt for other equations.
inline std::optional<bool> decide_linear(const Group& G, const EquationAst& ast) {
  const SurfaceType st = surface_type(ast);
  const ExpSums e = exp_sums(ast.word);
  const std::int64_t n = G.n();
  if (st.orientable && st.genus >= 1) {
    if (e.sigma_t != 0) return false;
    if (n == 1) return e.sigma_a == 0;
    return e.sigma_a % (n - 1) == 0;
  }
  if (!st.orientable && st.genus >= 2) {
    if (e.sigma_t % 2 != 0) return false;
    return n % 2 == 0 || e.sigma_a % 2 == 0;
  }
  return std::nullopt;
}

}  // namespace bsq
