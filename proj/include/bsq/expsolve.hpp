#pragma once

// Exponent equations  q_1 n^x_1 + ... + q_k n^x_k = 0  and congruences
// q_1 n^x_1 + ... + q_k n^x_k = 0 (mod M), x_i >= 0, plus bounded Bezout
// coefficients and the separation constant used by the 3-partition gadgets.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "bsq/nadic.hpp"

namespace bsq {

class CapExceeded : public Error {
 public:
  using Error::Error;
};

struct SearchCaps {
  std::uint64_t max_states = 20'000'000;     // level-search nodes
  std::uint64_t max_dp_cells = 50'000'000;   // M * k * P for the residue DP
  std::uint64_t max_tuples = 1'000'000;      // P^k for direct enumeration
  std::int64_t max_exponent = 1'000'000;     // largest exponent bound searched
};

using Exponents = std::vector<std::int64_t>;

namespace detail {

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Smallest d >= 0 with |n|^d >= v.
inline std::int64_t ceil_log(const BigInt& v, std::int64_t absn) {
  std::int64_t d = 0;
  BigInt p = 1;
  while (p < v) {
    p *= absn;
    ++d;
  }
  return d;
}

/// Depth-first search over levels e = 0, 1, ...: at each level a set of
/// terms is placed, and the running sum must stay divisible by the next power
/// of n.  The carry is the running sum divided by n^e.  A term q n^v with
/// n not dividing q is placed at the level where its lowest digit lands, so
/// its contribution is checked at once; min_level carries v.
class LevelSearch {
 public:
  struct Term {
    BigInt q;
    bool both_signs = false;        // term may enter as +q or -q
    std::int64_t fixed = -1;        // forced level, or -1
    std::int64_t min_level = 0;
    std::int64_t max_level = -1;    // -1 for the global cap
  };
  struct Placement {
    std::int64_t level = 0;
    int sign = 1;
  };

  LevelSearch(std::int64_t n, std::vector<Term> terms, std::int64_t max_level, std::uint64_t max_states)
      : n_(n), terms_(std::move(terms)), max_level_(max_level), max_states_(max_states) {
    if (terms_.size() > 62) throw CapExceeded("level search supports at most 62 terms");
    for (auto& t : terms_) {
      if (t.max_level < 0 || t.max_level > max_level_) t.max_level = max_level_;
      if (t.fixed >= 0) t.min_level = t.max_level = t.fixed;
      if (t.both_signs) signed_ = true;
    }
    // identical free terms are placed in index order
    twin_.assign(terms_.size(), -1);
    for (std::size_t i = 0; i < terms_.size(); ++i)
      for (std::size_t j = i; j-- > 0;) {
        const auto& a = terms_[i];
        const auto& b = terms_[j];
        if (a.fixed < 0 && b.fixed < 0 && a.q == b.q && a.both_signs == b.both_signs &&
            a.min_level == b.min_level && a.max_level == b.max_level) {
          twin_[i] = static_cast<int>(j);
          break;
        }
      }
    shift_free_ = !signed_ && std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.fixed < 0; });
  }

  std::optional<std::vector<Placement>> run() {
    placement_.assign(terms_.size(), {});
    failed_.clear();
    if (dfs(0, 0, 0, !shift_free_)) return placement_;
    return std::nullopt;
  }

  std::uint64_t states() const { return states_; }

 private:
  /// For n > 0 every unplaced term keeps its sign and grows with its level,
  /// so the carry must leave room for the smallest possible contributions.
  bool sign_feasible(std::int64_t e, std::uint64_t mask, const BigInt& carry) const {
    if (n_ < 0 || signed_) return true;
    BigInt pos = 0, neg = 0;
    bool any_pos = false, any_neg = false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (mask >> i & 1) continue;
      const auto& t = terms_[i];
      BigInt least = t.q;
      for (std::int64_t d = e; d < t.min_level; ++d) {
        least *= n_;
        if (abs(least) > abs(carry) + 1) break;
      }
      if (t.q > 0) {
        pos += least;
        any_pos = true;
      } else {
        neg += least;
        any_neg = true;
      }
    }
    if (!any_neg && carry + pos > 0) return false;
    if (!any_pos && carry + neg < 0) return false;
    return true;
  }

  bool dfs(std::int64_t e, std::uint64_t mask, const BigInt& carry, bool touched) {
    const std::uint64_t full = (1ULL << terms_.size()) - 1;
    if (mask == full) return carry == 0;
    if (e > max_level_) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(mask >> i & 1) && terms_[i].max_level < e) return false;
    if (!sign_feasible(e, mask, carry)) return false;
    if (!touched && std::none_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.min_level >= e; }))
      return false;
    auto key = std::make_tuple(e, mask, carry, touched);
    if (failed_.count(key)) return false;
    if (++states_ > max_states_) throw CapExceeded("exponent search exceeded " + std::to_string(max_states_) + " states");

    BigInt base = carry;
    std::uint64_t forced = 0;
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (mask >> i & 1) continue;
      const auto& t = terms_[i];
      if (t.fixed == e) {
        forced |= 1ULL << i;
        base += t.q;
        placement_[i] = {e, 1};
      } else if (t.fixed < 0 && t.min_level <= e) {
        free.push_back(i);
      }
    }
    // Without forced levels a solution with every term above the bottom of
    // its window shifts down to another one, so some term must sit at its
    // bottom; `touched` records that one does.
    // choices for the free terms: 0 = skip, 1 = +q, 2 = -q
    std::vector<int> choice(free.size(), 0);
    while (true) {
      BigInt s = base;
      std::uint64_t next = mask | forced;
      bool ok = true, bottom = false;
      for (std::size_t j = 0; j < free.size() && ok; ++j) {
        if (choice[j] == 0) continue;
        const auto i = free[j];
        if (twin_[i] >= 0 && !(next >> twin_[i] & 1)) ok = false;
        if (terms_[i].min_level == e) bottom = true;
        s += choice[j] == 1 ? terms_[i].q : BigInt(-terms_[i].q);
        next |= 1ULL << i;
        placement_[i] = {e, choice[j] == 1 ? 1 : -1};
      }
      if (ok && s % n_ == 0 && dfs(e + 1, next, s / n_, touched || bottom)) return true;
      std::size_t j = 0;
      for (; j < free.size(); ++j) {
        const int radix = terms_[free[j]].both_signs ? 3 : 2;
        if (++choice[j] < radix) break;
        choice[j] = 0;
      }
      if (j == free.size()) break;
    }
    failed_.insert(std::move(key));
    return false;
  }

  std::int64_t n_;
  std::vector<Term> terms_;
  std::int64_t max_level_;
  std::uint64_t max_states_;
  bool signed_ = false;
  bool shift_free_ = false;
  std::vector<int> twin_;
  std::uint64_t states_ = 0;
  std::vector<Placement> placement_;
  std::set<std::tuple<std::int64_t, std::uint64_t, BigInt, bool>> failed_;
};

/// Splits q = u n^v with n not dividing u.
inline std::pair<BigInt, std::int64_t> split_valuation(const BigInt& q, std::int64_t n) {
  BigInt u = q;
  std::int64_t v = 0;
  while (u != 0 && u % n == 0) {
    u /= n;
    ++v;
  }
  return {u, v};
}

}  // namespace detail

/// B = sum_i ceil(log_|n|(|q_i| + 1)) + k, from integer powers only.
inline std::int64_t semenov_bound(const Base& n, const std::vector<BigInt>& q) {
  if (n.abs() < 2) throw Error("semenov_bound: needs |n| >= 2");
  std::int64_t b = static_cast<std::int64_t>(q.size());
  for (const auto& v : q) b += detail::ceil_log(abs(v) + 1, n.abs());
  return b;
}

inline bool check_exponents(const Base& n, const std::vector<BigInt>& q, const Exponents& x) {
  if (x.size() != q.size()) return false;
  BigInt s = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (x[i] < 0) return false;
    s += q[i] * n.pow(x[i]);
  }
  return s == 0;
}

namespace detail {

inline std::optional<Exponents> solve_exact_unit(const Base& n, const std::vector<BigInt>& q) {
  if (n.value() == 1) {
    BigInt s = 0;
    for (const auto& v : q) s += v;
    if (s != 0) return std::nullopt;
    return Exponents(q.size(), 0);
  }
  // n = -1: x_i in {0, 1} chooses the sign; backward reachable sums give
  // the lexicographically smallest choice.
  const std::size_t k = q.size();
  std::vector<std::set<BigInt>> reach(k + 1);
  reach[k].insert(0);
  for (std::size_t i = k; i-- > 0;)
    for (const auto& r : reach[i + 1]) {
      reach[i].insert(r + q[i]);
      reach[i].insert(r - q[i]);
    }
  if (!reach[0].count(0)) return std::nullopt;
  Exponents x(k);
  BigInt need = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (reach[i + 1].count(need - q[i])) {
      x[i] = 0;
      need -= q[i];
    } else {
      x[i] = 1;
      need += q[i];
    }
  }
  return x;
}

}  // namespace detail

/// Lexicographically smallest x in [0, B]^k with sum q_i n^x_i = 0, where B is
/// semenov_bound.  For n = 1 and n = -1 the exponents only matter mod 1 and
/// mod 2 and x is taken in {0} and {0, 1}.
inline std::optional<Exponents> solve_exact(const Base& n, const std::vector<BigInt>& q, const SearchCaps& caps = {}) {
  if (n.is_unit()) return detail::solve_exact_unit(n, q);
  Exponents x(q.size(), 0);
  std::vector<std::size_t> idx;
  std::vector<std::pair<BigInt, std::int64_t>> parts;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] != 0) {
      idx.push_back(i);
      parts.push_back(detail::split_valuation(q[i], n.value()));
    }
  if (idx.empty()) return x;
  // a common power of n does not change the solution set
  std::int64_t vmin = parts[0].second;
  for (const auto& p : parts) vmin = std::min(vmin, p.second);
  for (auto& p : parts) p.second -= vmin;

  const std::int64_t bound = semenov_bound(n, q);
  if (bound > caps.max_exponent) throw CapExceeded("exponent bound " + std::to_string(bound) + " exceeds the cap");

  std::int64_t top = 0;
  std::vector<detail::LevelSearch::Term> terms;
  for (const auto& [u, v] : parts) {
    terms.push_back({u, false, -1, v, bound + v});
    top = std::max(top, bound + v);
  }
  auto search = [&]() { return detail::LevelSearch(n.value(), terms, top, caps.max_states).run(); };
  auto found = search();
  if (!found) return std::nullopt;
  const std::size_t m = parts.size();
  Exponents best(m);
  auto take = [&](const std::vector<detail::LevelSearch::Placement>& r) {
    for (std::size_t j = 0; j < m; ++j) best[j] = r[j].level - parts[j].second;
  };
  take(*found);
  // fix exponents left to right at their smallest feasible value
  for (std::size_t i = 0; i < m; ++i) {
    for (std::int64_t v = 0; v < best[i]; ++v) {
      terms[i].fixed = v + parts[i].second;
      if (auto r = search()) {
        take(*r);
        break;
      }
    }
    terms[i].fixed = best[i] + parts[i].second;
  }
  for (std::size_t i = 0; i < idx.size(); ++i) x[idx[i]] = best[i];
  if (!check_exponents(n, q, x)) throw Error("solve_exact: internal witness check failed");
  return x;
}

inline bool check_congruence(const Base& n, const std::vector<BigInt>& q, const BigInt& M, const Exponents& x) {
  if (x.size() != q.size()) return false;
  BigInt s = 0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q[i] * n.pow(x[i]);
  return M == 0 ? s == 0 : s % M == 0;
}

namespace detail {

inline BigInt powmod(const Base& n, std::int64_t e, const BigInt& M) {
  return mod_floor(boost::multiprecision::powm(mod_floor(BigInt(n.value()), M), BigInt(e), M), M);
}

inline std::optional<Exponents> congruence_dp(const Base& n, const std::vector<BigInt>& q, std::uint64_t M,
                                              std::int64_t P) {
  const std::size_t k = q.size();
  std::vector<std::vector<std::uint64_t>> term(k, std::vector<std::uint64_t>(static_cast<std::size_t>(P)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::int64_t x = 0; x < P; ++x)
      term[i][static_cast<std::size_t>(x)] =
          static_cast<std::uint64_t>(mod_floor(q[i] * powmod(n, x, BigInt(M)), BigInt(M)));
  // reach[i][r]: residues r reachable by terms i..k-1
  std::vector<std::vector<bool>> reach(k + 1, std::vector<bool>(M, false));
  reach[k][0] = true;
  for (std::size_t i = k; i-- > 0;) {
    for (std::uint64_t r = 0; r < M; ++r) {
      if (!reach[i + 1][r]) continue;
      for (std::int64_t x = 0; x < P; ++x) reach[i][(r + term[i][static_cast<std::size_t>(x)]) % M] = true;
    }
  }
  if (!reach[0][0]) return std::nullopt;
  Exponents out(k);
  std::uint64_t need = 0;  // residue the remaining terms must produce
  for (std::size_t i = 0; i < k; ++i) {
    for (std::int64_t x = 0; x < P; ++x) {
      const std::uint64_t rest = (need + M - term[i][static_cast<std::size_t>(x)]) % M;
      if (reach[i + 1][rest]) {
        out[i] = x;
        need = rest;
        break;
      }
    }
  }
  return out;
}

inline std::optional<Exponents> congruence_enumerate(const Base& n, const std::vector<BigInt>& q, const BigInt& M,
                                                     std::int64_t P) {
  const std::size_t k = q.size();
  std::vector<std::vector<BigInt>> term(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::int64_t x = 0; x < P; ++x) term[i].push_back(mod_floor(q[i] * powmod(n, x, M), M));
  Exponents x(k, 0);
  while (true) {
    BigInt s = 0;
    for (std::size_t i = 0; i < k; ++i) s += term[i][static_cast<std::size_t>(x[i])];
    if (s % M == 0) return x;
    std::size_t i = k;
    while (i-- > 0) {
      if (++x[i] < P) break;
      x[i] = 0;
      if (i == 0) return std::nullopt;
    }
    if (k == 0) return std::nullopt;
  }
}

/// For M | n^h -+ 1 the congruence lifts to  sum e_i q_i n^y_i = j (n^h -+ 1)
/// with y_i in [0, h); small |j| are tried as exact equations.
inline std::optional<Exponents> congruence_lift(const Base& n, const std::vector<BigInt>& q, const BigInt& M,
                                                std::int64_t P, const SearchCaps& caps) {
  std::int64_t h = 0;
  bool nega = false;
  for (std::int64_t e = 1; e <= P; ++e) {
    const BigInt r = powmod(n, e, M);
    if (r == 1 % M) {
      h = e;
      break;
    }
    if (r == M - 1) {
      h = e;
      nega = true;
      break;
    }
  }
  if (h == 0) throw CapExceeded("congruence modulus too large for the residue search");
  const BigInt nh = n.pow(h);
  const BigInt lift = nega ? BigInt(nh + 1) : BigInt(nh - 1);
  if (lift % M != 0) throw CapExceeded("congruence modulus too large for the residue search");

  std::vector<std::size_t> idx;
  std::vector<detail::LevelSearch::Term> terms;
  for (std::size_t i = 0; i < q.size(); ++i) {
    BigInt r = mod_floor(q[i], M);
    if (r * 2 > M) r -= M;
    if (r == 0) continue;
    idx.push_back(i);
    auto [u, v] = detail::split_valuation(r, n.value());
    terms.push_back({u, nega, -1, v, h - 1 + v});
  }
  Exponents x(q.size(), 0);
  if (idx.empty()) return x;
  BigInt total = 0;
  for (const auto& t : terms) total += abs(t.q);
  // |j| <= sum |q_i| |n|^(h-1) / (n^h -+ 1)
  const BigInt jmax = total * n.pow(h - 1) / abs(lift) + 1;
  const std::int64_t jcap = 2;
  const std::int64_t jlim = jmax <= jcap ? static_cast<std::int64_t>(jmax) : jcap;
  // j = 0 with every sign positive first: it admits the sign bound and
  // covers the exact lifts
  std::vector<std::pair<std::int64_t, bool>> attempts{{0, false}};
  if (nega) attempts.emplace_back(0, true);
  for (std::int64_t a = 1; a <= jlim; ++a) {
    attempts.emplace_back(a, nega);
    attempts.emplace_back(-a, nega);
  }
  for (const auto& [j, signs] : attempts) {
    auto all = terms;
    for (auto& t : all) t.both_signs = signs;
    if (j != 0) {
      // j n^h and -+j at level 0
      all.push_back({BigInt(-j), false, h});
      all.push_back({nega ? BigInt(-j) : BigInt(j), false, 0});
    }
    std::int64_t top = h;
    for (const auto& t : all) top = std::max(top, t.max_level);
    auto r = detail::LevelSearch(n.value(), all, top, caps.max_states).run();
    if (!r) continue;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto& p = (*r)[i];
      const std::int64_t e = p.level - all[i].min_level;
      x[idx[i]] = p.sign > 0 ? e : e + h;
    }
    if (!check_congruence(n, q, M, x)) throw Error("congruence lift: internal witness check failed");
    return x;
  }
  if (jmax <= jcap) return std::nullopt;
  throw CapExceeded("congruence search incomplete: modulus too large for an exhaustive residue search");
}

}  // namespace detail

/// An x in [0, P)^k with sum q_i n^x_i = 0 (mod M), lexicographically smallest
/// when a residue DP or direct enumeration fits the caps.  Requires
/// n^P = 1 (mod M).
inline std::optional<Exponents> solve_congruence(const Base& n, const std::vector<BigInt>& q, const BigInt& M,
                                                 std::int64_t P, const SearchCaps& caps = {}) {
  if (M < 1) throw Error("solve_congruence: modulus must be positive");
  if (P < 1) throw Error("solve_congruence: period must be positive");
  if (M == 1) return Exponents(q.size(), 0);
  if (detail::powmod(n, P, M) != 1) throw Error("solve_congruence: n^P is not 1 modulo M");
  const std::size_t k = q.size();
  if (k == 0) return Exponents{};
  if (P > caps.max_exponent) throw CapExceeded("congruence period exceeds the exponent cap");

  const BigInt cells = M * k * P;
  if (cells <= caps.max_dp_cells) return detail::congruence_dp(n, q, static_cast<std::uint64_t>(M), P);
  BigInt tuples = 1;
  for (std::size_t i = 0; i < k && tuples <= caps.max_tuples; ++i) tuples *= P;
  if (tuples <= caps.max_tuples) return detail::congruence_enumerate(n, q, M, P);
  return detail::congruence_lift(n, q, M, P, caps);
}

/// gcd(n^|b_1| - 1, ..., n^|b_k| - 1) via the exponent gcd: |n^gcd(b) - 1|.
inline BigInt power_gcd_modulus(const Base& n, const std::vector<std::int64_t>& betas) {
  std::int64_t g = 0;
  for (auto b : betas) g = std::gcd(g, b < 0 ? -b : b);
  return abs(n.pow(g) - 1);
}

struct BezoutResult {
  std::vector<BigInt> s;
  BigInt gcd;
};

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// (g, u, v) with u a + v b = g = gcd(a, b), a, b >= 0.
inline std::tuple<BigInt, BigInt, BigInt> ext_gcd(const BigInt& a, const BigInt& b) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const BigInt qt = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, BigInt(r0 - qt * r1));
    std::tie(s0, s1) = std::make_tuple(s1, BigInt(s0 - qt * s1));
    std::tie(t0, t1) = std::make_tuple(t1, BigInt(t0 - qt * t1));
  }
  return {r0, s0, t0};
}

}  // namespace detail

/// s with sum s_i b_i = gcd(b) and, after sorting |b| descending, each
/// |s_i| < |b_(i-1)| for i >= 2.
inline BezoutResult bezout_bounded(const std::vector<BigInt>& betas) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < betas.size(); ++i)
    if (betas[i] != 0) order.push_back(i);
  if (order.empty()) throw Error("bezout_bounded: all coefficients are zero");
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return abs(betas[i]) > abs(betas[j]); });
  const std::size_t m = order.size();
  std::vector<BigInt> b(m), s(m);
  for (std::size_t i = 0; i < m; ++i) b[i] = abs(betas[order[i]]);
  BigInt g = b[0];
  s[0] = 1;
  for (std::size_t i = 1; i < m; ++i) {
    auto [gg, u, v] = detail::ext_gcd(g, b[i]);
    for (std::size_t j = 0; j < i; ++j) s[j] *= u;
    s[i] = v;
    g = gg;
  }
  for (std::size_t i = m; i-- > 1;) {
    const BigInt c = detail::floor_div(s[i], b[i - 1]);
    s[i] -= c * b[i - 1];
    s[i - 1] += c * b[i];
    // centre in (-b_(i-1), b_(i-1))
    if (s[i] * 2 > b[i - 1]) {
      s[i] -= b[i - 1];
      s[i - 1] += b[i];
    }
  }
  BezoutResult r{std::vector<BigInt>(betas.size(), 0), g};
  for (std::size_t i = 0; i < m; ++i) r.s[order[i]] = betas[order[i]] < 0 ? BigInt(-s[i]) : s[i];
  BigInt check = 0;
  for (std::size_t i = 0; i < betas.size(); ++i) check += r.s[i] * betas[i];
  if (check != g) throw Error("bezout_bounded: internal identity check failed");
  return r;
}

namespace detail {

/// Number of ways (as multisets) to write T as a sum of exactly s powers
/// alpha^x with x in [0, top], stopping once `limit` ways are found.
/// Memoised on (level, terms left, remaining value).
inline std::uint64_t count_power_sums(std::int64_t alpha, const BigInt& T, std::int64_t s, std::int64_t top,
                                      std::uint64_t limit) {
  std::map<std::tuple<std::int64_t, std::int64_t, BigInt>, std::uint64_t> memo;
  auto rec = [&](auto&& self, std::int64_t e, std::int64_t left, const BigInt& rest) -> std::uint64_t {
    if (left == 0) return rest == 0 ? 1 : 0;
    if (e > top) return 0;
    auto key = std::make_tuple(e, left, rest);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (std::int64_t m = 0; m <= left && total < limit; ++m) {
      const BigInt r = rest - m;
      if (r % alpha != 0) continue;
      total += self(self, e + 1, left - m, BigInt(r / alpha));
    }
    memo.emplace(std::move(key), total);
    return total;
  };
  return rec(rec, 0, s, T);
}

}  // namespace detail

/// Least c <= cap such that, for every checked tuple 0 <= p_1 < ... < p_s with
/// gaps >= c, alpha^p_1 + ... + alpha^p_s has no other representation as a
/// sum of s powers of alpha.  Gap patterns in {c, c+1, c+2} are checked
/// exhaustively for s <= 7; for larger s, uniform gaps and single widened gaps.
inline std::int64_t separation_constant(std::int64_t s, std::int64_t alpha, std::int64_t cap) {
  if (s < 1) throw Error("separation_constant: s must be positive");
  if (alpha > -2 && alpha < 2) throw Error("separation_constant: needs |alpha| >= 2");
  const Base b(alpha);
  for (std::int64_t c = 1; c <= cap; ++c) {
    std::vector<std::vector<std::int64_t>> patterns;
    const std::int64_t gaps = s - 1;
    if (gaps <= 6) {
      std::int64_t total = 1;
      for (std::int64_t i = 0; i < gaps; ++i) total *= 3;
      for (std::int64_t code = 0; code < total; ++code) {
        std::vector<std::int64_t> g;
        std::int64_t v = code;
        for (std::int64_t i = 0; i < gaps; ++i) {
          g.push_back(c + v % 3);
          v /= 3;
        }
        patterns.push_back(std::move(g));
      }
    } else {
      patterns.emplace_back(static_cast<std::size_t>(gaps), c);
      for (std::int64_t i = 0; i < gaps; ++i)
        for (std::int64_t w = 1; w <= 2; ++w) {
          std::vector<std::int64_t> g(static_cast<std::size_t>(gaps), c);
          g[static_cast<std::size_t>(i)] += w;
          patterns.push_back(std::move(g));
        }
    }
    bool ok = true;
    for (const auto& g : patterns) {
      std::int64_t p = 0;
      BigInt T = 1;
      for (auto d : g) {
        p += d;
        T += b.pow(p);
      }
      // allow exponents in [-s, p + c + 2s] by shifting everything up by s
      if (detail::count_power_sums(alpha, T * b.pow(s), s, p + c + 3 * s, 2) != 1) {
        ok = false;
        break;
      }
    }
    if (ok) return c;
  }
  throw CapExceeded("separation_constant: no c <= " + std::to_string(cap) + " passed the uniqueness check");
}

}  // namespace bsq
