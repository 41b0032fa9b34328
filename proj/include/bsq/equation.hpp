#pragma once

// Quadratic equations W = 1 over BS(1,n): parsing, classification, and
// reduction to one of the standard forms
//
//   spherical       prod_j z_j^-1 c_j z_j
//   orientable      prod_i [x_i, y_i] prod_j z_j^-1 c_j z_j
//   nonorientable   prod_i x_i^2      prod_j z_j^-1 c_j z_j
//
// by a recorded sequence of elementary substitutions that can be replayed
// backwards on any standard-form solution.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bsq/group.hpp"

namespace bsq {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : Error("parse error at position " + std::to_string(pos) + ": " + what), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

struct EquationAst {
  Word word;                      // W in W = 1; constants kept as a/t syllables
  std::vector<std::string> vars;  // in order of first appearance

  BigInt length() const { return word_length(word); }
};

using Solution = std::map<std::string, Element>;

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class EquationParser {
 public:
  explicit EquationParser(std::string_view s) : s_(s) {}

  EquationAst parse() {
    Word lhs = sequence();
    skip();
    if (i_ < s_.size() && s_[i_] == '=') {
      ++i_;
      Word rhs = sequence();
      for (auto& syl : inverse_word(rhs)) append(lhs, std::move(syl));
    }
    skip();
    if (i_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
    EquationAst ast;
    ast.word = std::move(lhs);
    for (const auto& syl : ast.word)
      if (syl.kind == Syllable::Kind::var && std::find(ast.vars.begin(), ast.vars.end(), syl.var) == ast.vars.end())
        ast.vars.push_back(syl.var);
    return ast;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  Word sequence() {
    Word w;
    while (true) {
      skip();
      if (i_ >= s_.size()) break;
      const char ch = s_[i_];
      if (ch == ']' || ch == ',' || ch == ')' || ch == '=') break;
      for (auto& syl : atom()) append(w, std::move(syl));
    }
    return w;
  }

  // merges generator powers but keeps x x^-1, so the AST stays faithful
  static void append(Word& w, Syllable s) {
    if (s.kind == Syllable::Kind::var || w.empty() || w.back().kind != s.kind) {
      if (s.power != 0) w.push_back(std::move(s));
      return;
    }
    w.back().power += s.power;
    if (w.back().power == 0) w.pop_back();
  }

  BigInt exponent() {
    skip();
    const std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    const std::size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (digits == i_) throw ParseError("expected integer exponent", start);
    std::string text(s_.substr(start, i_ - start));
    if (text[0] == '+') text.erase(0, 1);
    return BigInt(text);
  }

  static Word repeat(const Word& w, const BigInt& k, std::size_t pos) {
    if (abs(k) > 1000000) throw ParseError("exponent on a variable or group is too large", pos);
    const Word unit = k < 0 ? inverse_word(w) : w;
    Word out;
    for (BigInt j = 0; j < abs(k); ++j)
      for (const auto& syl : unit) append(out, syl);
    return out;
  }

  Word atom() {
    Word w;
    const char ch = s_[i_];
    if (ch == '[') {
      ++i_;
      Word u = sequence();
      skip();
      if (i_ >= s_.size() || s_[i_] != ',') throw ParseError("expected ',' in commutator", i_);
      ++i_;
      Word v = sequence();
      skip();
      if (i_ >= s_.size() || s_[i_] != ']') throw ParseError("expected ']'", i_);
      ++i_;
      for (const Word* part : {&u, &v}) {
        for (auto& syl : inverse_word(*part)) append(w, std::move(syl));
      }
      for (const Word* part : {&u, &v}) {
        for (const auto& syl : *part) append(w, syl);
      }
    } else if (ch == '(') {
      ++i_;
      w = sequence();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') throw ParseError("expected ')'", i_);
      ++i_;
    } else if (ch == '1') {
      ++i_;
    } else if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::string name(1, static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
      const int sign = std::isupper(static_cast<unsigned char>(ch)) ? -1 : 1;
      ++i_;
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) name += s_[i_++];
      if (name == "a") w.push_back(Syllable::gen_a(sign));
      else if (name == "t") w.push_back(Syllable::gen_t(sign));
      else w.push_back(Syllable::variable(name, sign));
    } else {
      throw ParseError(std::string("unexpected '") + ch + "'", i_);
    }
    skip();
    if (i_ < s_.size() && s_[i_] == '^') {
      ++i_;
      const std::size_t epos = i_;
      const BigInt k = exponent();
      if (w.size() == 1 && w[0].kind != Syllable::Kind::var) {
        w[0].power *= k;
        if (w[0].power == 0) w.clear();
      } else {
        w = repeat(w, k, epos);
      }
    }
    return w;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline EquationAst parse_equation(std::string_view text) { return detail::EquationParser(text).parse(); }

/// Parses a word over {a, t}; variables are rejected.
inline Word parse_word(std::string_view text) {
  EquationAst ast = parse_equation(text);
  if (!ast.vars.empty()) throw Error("constant word expected, found variable '" + ast.vars.front() + "'");
  return ast.word;
}

// ---------------------------------------------------------------------------
// Classification

struct Classification {
  bool quadratic = false;
  bool orientable = false;
};

inline Classification classify(const EquationAst& ast) {
  std::map<std::string, std::pair<int, int>> occ;  // (positive, negative)
  for (const auto& s : ast.word) {
    if (s.kind != Syllable::Kind::var) continue;
    auto& o = occ[s.var];
    (s.power > 0 ? o.first : o.second)++;
  }
  Classification c{true, true};
  for (const auto& [name, o] : occ) {
    if (o.first + o.second != 2) c.quadratic = false;
    if (o.first != 1) c.orientable = false;
  }
  if (!c.quadratic) c.orientable = false;
  return c;
}

/// Genus and boundary count of the surface obtained by gluing the variable
/// sides of W's polygon in pairs, each maximal run of constants being one
/// boundary side.  Runs in time linear in the number of syllables; the genus
/// agrees with the genus of the standard form.
struct SurfaceType {
  bool orientable = true;
  std::int64_t genus = 0;
  std::int64_t boundary = 0;
};

inline SurfaceType surface_type(const EquationAst& ast) {
  if (!classify(ast).quadratic) throw Error("surface_type: equation is not quadratic");
  // sides: variable occurrences and cyclically-maximal constant runs
  struct Side {
    int var;  // -1 for a constant run
    int sign;
  };
  std::vector<Side> sides;
  std::map<std::string, int> ids;
  for (const auto& s : ast.word) {
    if (s.kind == Syllable::Kind::var) {
      auto [it, fresh] = ids.emplace(s.var, static_cast<int>(ids.size()));
      (void)fresh;
      sides.push_back({it->second, s.power > 0 ? 1 : -1});
    } else if (sides.empty() || sides.back().var != -1) {
      sides.push_back({-1, 0});
    }
  }
  if (sides.size() > 1 && sides.front().var == -1 && sides.back().var == -1) sides.pop_back();
  const std::size_t m = sides.size();
  SurfaceType st;
  st.orientable = classify(ast).orientable;
  if (m == 0) return st;

  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t x, std::size_t y) { parent[find(x)] = find(y); };

  // side i runs from corner i to corner i+1
  std::vector<std::size_t> first(ids.size(), m);
  std::int64_t constant_sides = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& sd = sides[i];
    if (sd.var < 0) {
      ++constant_sides;
      continue;
    }
    const std::size_t tail = sd.sign > 0 ? i : (i + 1) % m;
    const std::size_t head = sd.sign > 0 ? (i + 1) % m : i;
    auto& f = first[static_cast<std::size_t>(sd.var)];
    if (f == m) {
      f = i;
      continue;
    }
    const auto& other = sides[f];
    const std::size_t otail = other.sign > 0 ? f : (f + 1) % m;
    const std::size_t ohead = other.sign > 0 ? (f + 1) % m : f;
    unite(tail, otail);
    unite(head, ohead);
  }
  std::int64_t vertices = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (find(i) == i) ++vertices;

  // boundary components: constant sides linked through shared vertex classes
  std::vector<std::size_t> bparent(m);
  std::iota(bparent.begin(), bparent.end(), 0);
  auto bfind = [&](std::size_t x) {
    while (bparent[x] != x) x = bparent[x] = bparent[bparent[x]];
    return x;
  };
  std::map<std::size_t, std::size_t> owner;  // vertex class -> a constant side touching it
  for (std::size_t i = 0; i < m; ++i) {
    if (sides[i].var >= 0) continue;
    for (std::size_t corner : {i, (i + 1) % m}) {
      auto [it, fresh] = owner.emplace(find(corner), i);
      if (!fresh) bparent[bfind(i)] = bfind(it->second);
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (sides[i].var < 0 && bfind(i) == i) ++st.boundary;

  const std::int64_t edges = static_cast<std::int64_t>(ids.size()) + constant_sides;
  const std::int64_t euler = vertices - edges + 1;
  st.genus = st.orientable ? (2 - st.boundary - euler) / 2 : 2 - st.boundary - euler;
  return st;
}

// ---------------------------------------------------------------------------
// Normalization

/// A token of an equation during normalization: a signed variable or an
/// evaluated constant.
struct Token {
  int var = -1;  // -1 for constants
  int sign = 0;
  Element c;

  bool is_const() const { return var < 0; }
  static Token constant(Element e) { return {-1, 0, std::move(e)}; }
  static Token variable(int v, int s) { return {v, s, {}}; }
  friend bool operator==(const Token&, const Token&) = default;
};

using TokenWord = std::vector<Token>;

/// old = left * new * right
struct SubstMove {
  int var;
  TokenWord left, right;
};
/// old = new^-1
struct InvertMove {
  int var;
};
/// the variable no longer occurs; any value (identity) works
struct DropMove {
  int var;
};
/// introduces `var` as a conjugator of the trailing free constant
struct FreshMove {
  int var;
  std::vector<int> handle_vars;    // old = g v g^-1
  std::vector<int> conjugators;    // old = z g^-1
};

using Move = std::variant<SubstMove, InvertMove, DropMove, FreshMove>;

struct Substitution {
  std::vector<std::string> names;  // variable id -> name (original ids first)
  std::size_t original_count = 0;
  std::vector<Move> moves;
};

struct StandardForm {
  enum class Kind : std::uint8_t { trivial, spherical, orientable, nonorientable };
  Kind kind = Kind::trivial;
  std::int64_t genus = 0;
  std::vector<Element> constants;
  std::vector<std::string> handle_vars;  // x1 y1 x2 y2 ... or x1 ... xg
  std::vector<std::string> conjugators;  // z1 ... zk

  std::size_t k() const { return constants.size(); }
  std::size_t variable_count() const { return handle_vars.size() + conjugators.size(); }
};

inline const char* to_string(StandardForm::Kind k) {
  switch (k) {
    case StandardForm::Kind::trivial: return "trivial";
    case StandardForm::Kind::spherical: return "spherical";
    case StandardForm::Kind::orientable: return "orientable";
    case StandardForm::Kind::nonorientable: return "nonorientable";
  }
  return "?";
}

/// Evaluates a word with variables bound by `sol`.
inline Element evaluate(const Group& G, const EquationAst& ast, const Solution& sol) {
  Element g;
  for (const auto& s : ast.word) {
    if (s.kind == Syllable::Kind::var) {
      auto it = sol.find(s.var);
      if (it == sol.end()) throw Error("no binding for variable '" + s.var + "'");
      g = G.mul(g, s.power > 0 ? it->second : G.inv(it->second));
    } else if (s.kind == Syllable::Kind::a) {
      g = G.mul(g, G.a(s.power));
    } else {
      g = G.mul(g, G.t(to_i64(s.power, "t-exponent")));
    }
  }
  return g;
}

/// Substitutes and checks W(sol) == 1.  Independent of how sol was produced.
inline bool verify(const Group& G, const EquationAst& ast, const Solution& sol) {
  return evaluate(G, ast, sol).is_identity();
}

/// The standard form as an equation with constants written as words.
inline EquationAst standard_form_equation(const Group& G, const StandardForm& sf) {
  EquationAst ast;
  auto var = [&](const std::string& v, int sign) { ast.word.push_back(Syllable::variable(v, sign)); };
  if (sf.kind == StandardForm::Kind::orientable) {
    for (std::size_t i = 0; i + 1 < sf.handle_vars.size(); i += 2) {
      var(sf.handle_vars[i], -1);
      var(sf.handle_vars[i + 1], -1);
      var(sf.handle_vars[i], 1);
      var(sf.handle_vars[i + 1], 1);
    }
  } else if (sf.kind == StandardForm::Kind::nonorientable) {
    for (const auto& x : sf.handle_vars) {
      var(x, 1);
      var(x, 1);
    }
  }
  for (std::size_t j = 0; j < sf.k(); ++j) {
    var(sf.conjugators[j], -1);
    for (auto& s : G.element_to_word(sf.constants[j])) ast.word.push_back(std::move(s));
    var(sf.conjugators[j], 1);
  }
  for (const auto& s : ast.word)
    if (s.kind == Syllable::Kind::var && std::find(ast.vars.begin(), ast.vars.end(), s.var) == ast.vars.end())
      ast.vars.push_back(s.var);
  return ast;
}

namespace detail {

class Normalizer {
 public:
  Normalizer(const Group& G, const EquationAst& ast) : G_(G) {
    std::map<std::string, int> ids;
    for (const auto& v : ast.vars) {
      ids.emplace(v, static_cast<int>(sub_.names.size()));
      sub_.names.push_back(v);
    }
    sub_.original_count = sub_.names.size();
    Element run;
    bool in_run = false;
    for (const auto& s : ast.word) {
      if (s.kind == Syllable::Kind::var) {
        if (in_run) push(w_, Token::constant(run));
        in_run = false;
        run = {};
        w_.push_back(Token::variable(ids.at(s.var), s.power > 0 ? 1 : -1));
        continue;
      }
      run = G_.mul(run, s.kind == Syllable::Kind::a ? G_.a(s.power) : G_.t(to_i64(s.power, "t-exponent")));
      in_run = true;
    }
    if (in_run) push(w_, Token::constant(run));
    for (const auto& t : w_)
      if (!t.is_const()) present_.insert(t.var);
    reduce();
  }

  std::pair<StandardForm, Substitution> run() {
    while (extract_any_square()) {
    }
    while (extract_commutator()) {
    }
    while (squares_ > 0 && commutators_ > 0) convert_handle();
    collect_blocks();
    return {finish(), sub_};
  }

  std::size_t move_count() const { return sub_.moves.size(); }

 private:
  // -- token helpers --------------------------------------------------------

  Token inverse(const Token& t) const {
    if (t.is_const()) return Token::constant(G_.inv(t.c));
    return Token::variable(t.var, -t.sign);
  }

  TokenWord inverse(const TokenWord& w) const {
    TokenWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
    return out;
  }

  void push(TokenWord& st, Token t) const {
    if (t.is_const() && t.c.is_identity()) return;
    if (!st.empty()) {
      auto& top = st.back();
      if (top.is_const() && t.is_const()) {
        top.c = G_.mul(top.c, t.c);
        if (top.c.is_identity()) st.pop_back();
        return;
      }
      if (!top.is_const() && !t.is_const() && top.var == t.var && top.sign == -t.sign) {
        st.pop_back();
        return;
      }
    }
    st.push_back(std::move(t));
  }

  TokenWord segment(std::size_t from, std::size_t to) const {
    return TokenWord(w_.begin() + static_cast<std::ptrdiff_t>(from), w_.begin() + static_cast<std::ptrdiff_t>(to));
  }

  std::vector<std::size_t> positions(int var) const {
    std::vector<std::size_t> p;
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (!w_[i].is_const() && w_[i].var == var) p.push_back(i);
    return p;
  }

  // -- moves ----------------------------------------------------------------

  void reduce() {
    TokenWord st;
    for (auto& t : w_) push(st, std::move(t));
    if (prefix_ == 0) {
      while (st.size() >= 2) {
        auto& f = st.front();
        auto& l = st.back();
        if (f.is_const() && l.is_const()) {
          Element merged = G_.mul(l.c, f.c);
          st.pop_back();
          st.erase(st.begin());
          TokenWord again;
          push(again, Token::constant(std::move(merged)));
          for (auto& t : st) push(again, std::move(t));
          st = std::move(again);
          continue;
        }
        if (!f.is_const() && !l.is_const() && f.var == l.var && f.sign == -l.sign) {
          st.pop_back();
          st.erase(st.begin());
          TokenWord again;
          for (auto& t : st) push(again, std::move(t));
          st = std::move(again);
          continue;
        }
        break;
      }
    }
    w_ = std::move(st);
    std::set<int> now;
    for (const auto& t : w_)
      if (!t.is_const()) now.insert(t.var);
    for (int v : present_)
      if (!now.count(v)) sub_.moves.emplace_back(DropMove{v});
    present_ = std::move(now);
  }

  void substitute(int var, TokenWord left, TokenWord right) {
    if (left.empty() && right.empty()) return;
    TokenWord out;
    const TokenWord ileft = inverse(left), iright = inverse(right);
    for (auto& t : w_) {
      if (t.is_const() || t.var != var) {
        out.push_back(std::move(t));
      } else if (t.sign > 0) {
        out.insert(out.end(), left.begin(), left.end());
        out.push_back(t);
        out.insert(out.end(), right.begin(), right.end());
      } else {
        out.insert(out.end(), iright.begin(), iright.end());
        out.push_back(t);
        out.insert(out.end(), ileft.begin(), ileft.end());
      }
    }
    w_ = std::move(out);
    sub_.moves.emplace_back(SubstMove{var, std::move(left), std::move(right)});
    reduce();
  }

  void invert(int var) {
    for (auto& t : w_)
      if (!t.is_const() && t.var == var) t.sign = -t.sign;
    sub_.moves.emplace_back(InvertMove{var});
  }

  void internal(const char* what) const { throw Error(std::string("normalization invariant violated: ") + what); }

  // -- phase 1: squares -----------------------------------------------------

  /// Brings v v (v occurring twice with one sign after prefix_) to prefix_.
  void extract_square(int v) {
    auto p = positions(v);
    if (p.size() != 2 || w_[p[0]].sign != w_[p[1]].sign) internal("extract_square on a non-square variable");
    if (w_[p[0]].sign < 0) invert(v);
    substitute(v, {}, inverse(segment(p[0] + 1, p[1])));
    p = positions(v);
    if (p.size() != 2 || p[1] != p[0] + 1) internal("square not adjacent");
    const TokenWord A = segment(prefix_, p[0]);
    substitute(v, inverse(A), A);
    p = positions(v);
    if (p.size() != 2 || p[0] != prefix_ || p[1] != prefix_ + 1 || w_[p[0]].sign < 0)
      internal("square not moved to the front");
    prefix_ += 2;
    ++squares_;
    handles_.push_back(v);
  }

  bool extract_any_square() {
    std::map<int, std::vector<std::size_t>> occ;
    for (std::size_t i = prefix_; i < w_.size(); ++i)
      if (!w_[i].is_const()) occ[w_[i].var].push_back(i);
    for (std::size_t i = prefix_; i < w_.size(); ++i) {
      if (w_[i].is_const()) continue;
      const auto& o = occ[w_[i].var];
      if (o.size() == 2 && w_[o[0]].sign == w_[o[1]].sign) {
        extract_square(w_[i].var);
        return true;
      }
    }
    return false;
  }

  // -- phase 2: commutators -------------------------------------------------

  bool extract_commutator() {
    std::map<int, std::vector<std::size_t>> occ;
    for (std::size_t i = prefix_; i < w_.size(); ++i)
      if (!w_[i].is_const()) occ[w_[i].var].push_back(i);
    int x = -1, y = -1;
    for (std::size_t i = prefix_; i < w_.size() && x < 0; ++i) {
      if (w_[i].is_const()) continue;
      const auto& ox = occ[w_[i].var];
      if (ox[0] != i) continue;
      for (std::size_t j = ox[0] + 1; j < ox[1]; ++j) {
        if (w_[j].is_const()) continue;
        const auto& oy = occ[w_[j].var];
        if (oy[0] == j && oy[1] > ox[1]) {
          x = w_[i].var;
          y = w_[j].var;
          break;
        }
      }
    }
    if (x < 0) return false;

    // x B y C x^-1 D y^-1  ->  X Y x y
    if (w_[positions(x)[0]].sign < 0) invert(x);
    if (w_[positions(y)[0]].sign < 0) invert(y);
    auto px = positions(x);
    auto py = positions(y);
    substitute(x, {}, inverse(segment(px[0] + 1, py[0])));
    px = positions(x);
    py = positions(y);
    substitute(y, {}, inverse(segment(py[0] + 1, px[1])));
    px = positions(x);
    py = positions(y);
    const TokenWord D = segment(px[1] + 1, py[1]);
    if (!D.empty()) {
      substitute(y, {}, D);
      px = positions(x);
      py = positions(y);
      substitute(x, {}, segment(py[0] + 1, px[1]));
      px = positions(x);
      py = positions(y);
      substitute(y, inverse(segment(px[0] + 1, py[0])), {});
    }
    px = positions(x);
    py = positions(y);
    if (!(py[0] == px[0] + 1 && px[1] == px[0] + 2 && py[1] == px[0] + 3)) internal("commutator shape");
    invert(x);
    invert(y);
    const TokenWord A = segment(prefix_, px[0]);
    substitute(x, inverse(A), A);
    substitute(y, inverse(A), A);
    px = positions(x);
    py = positions(y);
    if (!(px[0] == prefix_ && py[0] == prefix_ + 1 && px[1] == prefix_ + 2 && py[1] == prefix_ + 3 &&
          w_[px[0]].sign < 0 && w_[py[0]].sign < 0))
      internal("commutator not moved to the front");
    prefix_ += 4;
    ++commutators_;
    handles_.push_back(x);
    handles_.push_back(y);
    return true;
  }

  /// x^2 [y, z]  ->  y^2 z^2 x^2, applied to the last square and the first
  /// commutator of the prefix.
  void convert_handle() {
    const std::size_t sq_end = 2 * static_cast<std::size_t>(squares_);
    const int x = w_[sq_end - 1].var;
    const int y = w_[sq_end].var;
    const int z = w_[sq_end + 1].var;
    prefix_ = sq_end - 2;
    --squares_;
    --commutators_;
    substitute(x, {}, {Token::variable(y, 1)});  // x x Y Z y z -> x y x Z y z
    // extracting x first would rebuild the commutator
    extract_square(y);
    extract_square(z);
    extract_square(x);
    // the remaining commutators follow the new squares unchanged
    prefix_ += 4 * static_cast<std::size_t>(commutators_);
    std::vector<int> sq, cm;
    for (std::size_t i = 0; i < 2 * static_cast<std::size_t>(squares_); i += 2) sq.push_back(w_[i].var);
    for (std::size_t i = 2 * static_cast<std::size_t>(squares_); i < prefix_; i += 4) {
      cm.push_back(w_[i].var);
      cm.push_back(w_[i + 1].var);
    }
    handles_ = sq;
    handles_.insert(handles_.end(), cm.begin(), cm.end());
  }

  // -- phase 3: conjugated constants ---------------------------------------

  bool is_block_at(std::size_t i) const {
    return i + 2 < w_.size() && !w_[i].is_const() && w_[i].sign < 0 &&
           w_[i + 1].is_const() && !w_[i + 2].is_const() && w_[i + 2].var == w_[i].var && w_[i + 2].sign > 0;
  }

  void collect_blocks() {
    while (true) {
      // innermost variable (after prefix) that is not yet a block
      std::map<int, std::vector<std::size_t>> occ;
      for (std::size_t i = prefix_; i < w_.size(); ++i)
        if (!w_[i].is_const()) occ[w_[i].var].push_back(i);
      int best = -1;
      std::size_t best_span = 0;
      for (const auto& [v, o] : occ) {
        if (o.size() != 2) internal("variable does not occur twice");
        if (is_block_at(o[0]) && o[1] == o[0] + 2) continue;
        const std::size_t span = o[1] - o[0];
        if (best < 0 || span < best_span) {
          best = v;
          best_span = span;
        }
      }
      if (best < 0) break;
      const int v = best;
      if (w_[positions(v)[0]].sign > 0) invert(v);
      // pull every block out of v^-1 ... v to the left
      while (true) {
        auto pv = positions(v);
        if (pv.empty()) break;  // cancelled away
        std::size_t blk = pv[1];
        for (std::size_t i = pv[0] + 1; i < pv[1]; ++i)
          if (is_block_at(i)) {
            blk = i;
            break;
          }
        if (blk == pv[1]) break;
        const int z = w_[blk].var;
        if (blk > pv[0] + 1) {
          if (blk != pv[0] + 2 || !w_[pv[0] + 1].is_const()) internal("unexpected tokens before a block");
          substitute(z, {}, {w_[pv[0] + 1]});
        }
        substitute(z, {}, {Token::variable(v, -1)});
      }
      auto pv = positions(v);
      if (pv.empty()) continue;
      if (!(pv[1] == pv[0] + 2 && w_[pv[0] + 1].is_const())) internal("block interior is not a single constant");
    }
    // push free constants to the right end
    bool moved = true;
    while (moved) {
      moved = false;
      for (std::size_t i = prefix_; i + 1 < w_.size(); ++i) {
        if (w_[i].is_const() && is_block_at(i + 1)) {
          substitute(w_[i + 1].var, {}, {w_[i]});
          moved = true;
          break;
        }
      }
    }
    if (!w_.empty() && w_.back().is_const()) {
      FreshMove fm;
      fm.var = fresh_variable();
      fm.handle_vars = handles_;
      for (std::size_t i = prefix_; i < w_.size(); ++i)
        if (!w_[i].is_const() && w_[i].sign < 0) fm.conjugators.push_back(w_[i].var);
      const Token c = w_.back();
      w_.pop_back();
      w_.push_back(Token::variable(fm.var, -1));
      w_.push_back(c);
      w_.push_back(Token::variable(fm.var, 1));
      present_.insert(fm.var);
      sub_.moves.emplace_back(std::move(fm));
    }
  }

  int fresh_variable() {
    std::set<std::string> used(sub_.names.begin(), sub_.names.end());
    for (int i = 1;; ++i) {
      std::string name = "w" + std::to_string(i);
      if (!used.count(name)) {
        sub_.names.push_back(name);
        return static_cast<int>(sub_.names.size() - 1);
      }
    }
  }

  StandardForm finish() {
    StandardForm sf;
    for (int v : handles_) sf.handle_vars.push_back(sub_.names[static_cast<std::size_t>(v)]);
    for (std::size_t i = prefix_; i < w_.size(); i += 3) {
      if (!is_block_at(i)) internal("standard form tail is not a product of conjugated constants");
      sf.constants.push_back(w_[i + 1].c);
      sf.conjugators.push_back(sub_.names[static_cast<std::size_t>(w_[i].var)]);
    }
    if (squares_ > 0) {
      sf.kind = StandardForm::Kind::nonorientable;
      sf.genus = squares_;
    } else if (commutators_ > 0) {
      sf.kind = StandardForm::Kind::orientable;
      sf.genus = commutators_;
    } else {
      sf.kind = sf.constants.empty() ? StandardForm::Kind::trivial : StandardForm::Kind::spherical;
    }
    return sf;
  }

  const Group& G_;
  TokenWord w_;
  std::size_t prefix_ = 0;
  std::int64_t squares_ = 0;
  std::int64_t commutators_ = 0;
  std::vector<int> handles_;
  std::set<int> present_;
  Substitution sub_;
};

}  // namespace detail

inline std::pair<StandardForm, Substitution> to_standard_form(const Group& G, const EquationAst& ast) {
  if (!classify(ast).quadratic) throw Error("equation is not quadratic: every variable must occur exactly twice");
  return detail::Normalizer(G, ast).run();
}

/// Replays the recorded moves backwards, turning a solution of the standard
/// form into a solution of the original equation.
inline Solution pull_back(const Group& G, const Substitution& sub, const Solution& sf_solution) {
  std::map<int, Element> val;
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < sub.names.size(); ++i) ids.emplace(sub.names[i], static_cast<int>(i));
  for (const auto& [name, g] : sf_solution) {
    auto it = ids.find(name);
    if (it == ids.end()) throw Error("pull_back: unknown variable '" + name + "'");
    val[it->second] = g;
  }
  auto value = [&](int v) -> const Element& { return val[v]; };
  auto eval = [&](const TokenWord& w) {
    Element g;
    for (const auto& t : w) {
      if (t.is_const()) g = G.mul(g, t.c);
      else g = G.mul(g, t.sign > 0 ? value(t.var) : G.inv(value(t.var)));
    }
    return g;
  };
  for (auto it = sub.moves.rbegin(); it != sub.moves.rend(); ++it) {
    std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, SubstMove>) {
            val[m.var] = G.mul(G.mul(eval(m.left), value(m.var)), eval(m.right));
          } else if constexpr (std::is_same_v<M, InvertMove>) {
            val[m.var] = G.inv(value(m.var));
          } else if constexpr (std::is_same_v<M, DropMove>) {
            val[m.var] = G.identity();
          } else {
            const Element g = value(m.var);
            const Element gi = G.inv(g);
            for (int v : m.handle_vars) val[v] = G.mul(G.mul(g, value(v)), gi);
            for (int z : m.conjugators) val[z] = G.mul(value(z), gi);
            val.erase(m.var);
          }
        },
        *it);
  }
  Solution out;
  for (std::size_t i = 0; i < sub.original_count; ++i) out[sub.names[i]] = value(static_cast<int>(i));
  return out;
}

}  // namespace bsq
