#pragma once

// Line-oriented `key: value` rendering of verdicts, standard forms and
// solutions, and the solution-record parser used by `verify`.

#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "bsq/equation.hpp"
#include "bsq/solvers.hpp"

namespace bsq {

struct RecordLine {
  std::string key;
  std::string value;
};

using Record = std::vector<RecordLine>;

inline std::string format_record(const Record& r) {
  std::string out;
  for (const auto& [k, v] : r) out += k + ": " + v + "\n";
  return out;
}

/// Splits `key: value` lines.  Blank lines and lines starting with '#' are skipped.
inline Record parse_record(std::string_view text) {
  Record r;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos || colon == 0)
      throw Error("record line " + std::to_string(line_no) + ": expected 'key: value'");
    std::string_view key = line.substr(0, colon), value = line.substr(colon + 1);
    while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
    while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    r.push_back({std::string(key), std::string(value)});
  }
  return r;
}

inline std::string word_of(const Group& G, const Element& g) { return to_string(G.element_to_word(g)); }

/// Record lines `solution.<var>: <word>`, in variable order.
inline void append_solution(Record& r, const Group& G, const Solution& sol) {
  for (const auto& [name, g] : sol) r.push_back({"solution." + name, word_of(G, g)});
}

/// Reads every `solution.<var>` line; other keys are ignored.
inline Solution solution_from_record(const Group& G, const Record& r) {
  Solution sol;
  for (const auto& [k, v] : r) {
    if (k.rfind("solution.", 0) != 0) continue;
    const std::string name = k.substr(9);
    if (name.empty()) throw Error("record: empty variable name");
    if (sol.count(name)) throw Error("record: duplicate binding for '" + name + "'");
    sol[name] = G.eval_word(parse_word(v));
  }
  return sol;
}

inline Record verdict_record(const Group& G, const Verdict& v) {
  Record r;
  r.push_back({"base", std::to_string(G.n())});
  r.push_back({"solvable", v.solvable ? "yes" : "no"});
  r.push_back({"case", v.case_tag});
  r.push_back({"genus", std::to_string(v.standard_form.genus)});
  r.push_back({"constants", std::to_string(v.standard_form.k())});
  r.push_back({"length", v.input_length.str()});
  for (const auto& [k, w] : v.witnesses) r.push_back({"witness." + k, w});
  if (v.solvable && v.solution) {
    append_solution(r, G, *v.solution);
    r.push_back({"size", v.size.str()});
    r.push_back({"bound", v.bound.str()});
  }
  return r;
}

inline std::string verdict_human(const Group& G, const Verdict& v) {
  std::ostringstream os;
  os << (v.solvable ? "solvable" : "not solvable") << " over BS(1," << G.n() << ")  [" << v.case_tag;
  if (v.standard_form.kind != StandardForm::Kind::trivial)
    os << ", genus " << v.standard_form.genus << ", " << v.standard_form.k() << " constants";
  os << "]\n";
  if (v.solvable && v.solution) {
    for (const auto& [name, g] : *v.solution)
      os << "  " << name << " = " << word_of(G, g) << "    " << to_string(G.base(), g) << "\n";
    os << "size " << v.size << " <= " << v.bound << " (|W| = " << v.input_length << ")\n";
  }
  return os.str();
}

namespace detail {

inline std::string token_word_text(const Group& G, const Substitution& sub, const TokenWord& w) {
  std::string out;
  for (const auto& tok : w) {
    if (!out.empty()) out += ' ';
    if (tok.is_const()) {
      out += "(" + word_of(G, tok.c) + ")";
    } else {
      std::string name = sub.names[static_cast<std::size_t>(tok.var)];
      if (tok.sign < 0) name[0] = static_cast<char>(name[0] - 'a' + 'A');
      out += name;
    }
  }
  return out;
}

}  // namespace detail

/// Renders a move as `old := expression in new`.
inline std::string move_text(const Group& G, const Substitution& sub, const Move& m) {
  auto name = [&](int v) { return sub.names[static_cast<std::size_t>(v)]; };
  return std::visit(
      [&](const auto& mv) -> std::string {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, SubstMove>) {
          std::string s = name(mv.var) + " := ";
          const std::string l = detail::token_word_text(G, sub, mv.left);
          const std::string r = detail::token_word_text(G, sub, mv.right);
          if (!l.empty()) s += l + " ";
          s += name(mv.var);
          if (!r.empty()) s += " " + r;
          return s;
        } else if constexpr (std::is_same_v<T, InvertMove>) {
          std::string inv = name(mv.var);
          inv[0] = static_cast<char>(inv[0] - 'a' + 'A');
          return name(mv.var) + " := " + inv;
        } else if constexpr (std::is_same_v<T, DropMove>) {
          return name(mv.var) + " := 1";
        } else {
          return "fresh " + name(mv.var);
        }
      },
      m);
}

inline Record standard_form_record(const Group& G, const StandardForm& sf, const Substitution& sub) {
  Record r;
  r.push_back({"base", std::to_string(G.n())});
  r.push_back({"kind", to_string(sf.kind)});
  r.push_back({"genus", std::to_string(sf.genus)});
  r.push_back({"constants", std::to_string(sf.k())});
  for (std::size_t j = 0; j < sf.k(); ++j)
    r.push_back({"constant." + std::to_string(j + 1), word_of(G, sf.constants[j])});
  r.push_back({"equation", to_string(standard_form_equation(G, sf).word)});
  for (const auto& m : sub.moves) r.push_back({"move", move_text(G, sub, m)});
  return r;
}

}  // namespace bsq
