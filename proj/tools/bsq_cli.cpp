// Command-line front end.  Exit codes: 0 solvable / success, 1 unsolvable /
// check failed, 2 error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "bsq/bsq.hpp"
#include "support/acceptance.hpp"

namespace {

using namespace bsq;

struct RunConfig {
  std::int64_t base = 2;
  std::uint64_t seed = testing::SuiteConfig{}.seed;
  std::int64_t max_exponent = SearchCaps{}.max_exponent;
  std::uint64_t max_states = SearchCaps{}.max_states;
  std::string format = "human";

  SearchCaps caps() const {
    if (max_exponent <= 0 || max_states == 0) throw Error("search caps must be positive");
    SearchCaps c;
    c.max_exponent = max_exponent;
    c.max_states = max_states;
    return c;
  }
  Group group() const { return Group(base); }
  bool record() const { return format == "record"; }
};

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

/// The inline argument, or the contents of --file.
std::string equation_text(const std::string& inline_text, const std::string& file) {
  if (!file.empty()) return read_file(file);
  if (inline_text.empty()) throw Error("no equation given");
  return inline_text;
}

std::vector<std::int64_t> parse_integers(const std::string& text) {
  std::string s = text;
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '\t') c = ' ';
  std::istringstream in(s);
  std::vector<std::int64_t> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    out.push_back(std::stoll(tok, &used));
    if (used != tok.size()) throw Error("not an integer: " + tok);
  }
  return out;
}

std::vector<BigInt> parse_big_integers(const std::string& text) {
  std::string s = text;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<BigInt> out;
  std::string tok;
  while (in >> tok) {
    std::size_t i = 0;
    out.push_back(bsq::detail::parse_bigint(tok, i));
    if (i != tok.size()) throw Error("not an integer: " + tok);
  }
  return out;
}

int cmd_solve(const RunConfig& cfg, const std::string& text) {
  const Group G = cfg.group();
  const Verdict v = solve(G, parse_equation(text), cfg.caps());
  std::cout << (cfg.record() ? format_record(verdict_record(G, v)) : verdict_human(G, v));
  return v.solvable ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, const std::string& text, const std::string& record_path) {
  const Group G = cfg.group();
  const EquationAst ast = parse_equation(text);
  const Solution sol = solution_from_record(G, parse_record(read_file(record_path)));
  const bool ok = verify(G, ast, sol);
  if (cfg.record()) {
    std::cout << format_record({{"verified", ok ? "yes" : "no"}, {"value", to_string(G.base(), evaluate(G, ast, sol))}});
  } else {
    std::cout << (ok ? "verified" : "not a solution") << ": W = " << to_string(G.base(), evaluate(G, ast, sol)) << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_normalize(const RunConfig& cfg, const std::string& text) {
  const Group G = cfg.group();
  const auto [sf, sub] = to_standard_form(G, parse_equation(text));
  const Record r = standard_form_record(G, sf, sub);
  if (cfg.record()) {
    std::cout << format_record(r);
  } else {
    std::cout << to_string(sf.kind);
    if (sf.kind != StandardForm::Kind::trivial) std::cout << ", genus " << sf.genus << ", " << sf.k() << " constants";
    std::cout << "\n  " << to_string(standard_form_equation(G, sf).word) << " = 1\n";
    for (const auto& m : sub.moves) std::cout << "  " << move_text(G, sub, m) << "\n";
  }
  return 0;
}

int cmd_eval(const RunConfig& cfg, const std::string& text) {
  const Group G = cfg.group();
  const Element g = G.eval_word(parse_word(text));
  if (cfg.record()) {
    std::cout << format_record({{"element", to_string(G.base(), g)}, {"word", word_of(G, g)}});
  } else {
    std::cout << to_string(G.base(), g) << "  = " << word_of(G, g) << "\n";
  }
  return 0;
}

int cmd_expsolve(const RunConfig& cfg, const std::string& coeffs, const std::string& modulus, std::int64_t period) {
  const Base b(cfg.base);
  const auto q = parse_big_integers(coeffs);
  if (q.empty()) throw Error("no coefficients given");
  std::optional<Exponents> x;
  if (modulus.empty()) {
    x = solve_exact(b, q, cfg.caps());
  } else {
    std::size_t i = 0;
    const BigInt M = bsq::detail::parse_bigint(modulus, i);
    if (i != modulus.size()) throw Error("bad modulus: " + modulus);
    x = solve_congruence(b, q, M, period, cfg.caps());
  }
  const std::string value = x ? bsq::detail::join(*x) : "none";
  if (cfg.record()) {
    std::cout << format_record({{"solvable", x ? "yes" : "no"}, {"exponents", value}});
  } else {
    std::cout << (x ? "x = " + value : "no solution") << "\n";
  }
  return x ? 0 : 1;
}

int cmd_reduce(const RunConfig& cfg, const std::string& problem, const std::string& numbers, const std::string& file,
               const std::string& gadget) {
  const auto values = parse_integers(file.empty() ? numbers : read_file(file));
  Record r;
  if (problem == "3part") {
    const ThreePartInstance inst{values};
    const bool truth = brute_3part(inst);
    r.push_back({"instance", bsq::detail::join(values)});
    r.push_back({"k", std::to_string(inst.k())});
    r.push_back({"L", std::to_string(inst.L())});
    r.push_back({"positive", truth ? "yes" : "no"});
    r.push_back({"base", std::to_string(cfg.base)});
    if (gadget == "spherical") {
      const auto g = gen_spherical_from_3part(inst, cfg.base);
      r.push_back({"separation", std::to_string(g.c)});
      r.push_back({"equation", to_string(g.ast.word)});
    } else if (gadget == "genus1") {
      const auto g = gen_genus1_from_3part(inst, cfg.base);
      r.push_back({"M", std::to_string(g.M)});
      r.push_back({"equation", to_string(g.ast.word)});
    } else {
      throw Error("unknown gadget '" + gadget + "' (spherical or genus1)");
    }
    std::cout << format_record(r);
    return truth ? 0 : 1;
  }
  if (problem == "part") {
    const bool truth = brute_partition(values);
    r.push_back({"instance", bsq::detail::join(values)});
    r.push_back({"splittable", truth ? "yes" : "no"});
    r.push_back({"base", "-1"});
    r.push_back({"equation", to_string(gen_spherical_from_part(values).word)});
    std::cout << format_record(r);
    return truth ? 0 : 1;
  }
  throw Error("unknown problem '" + problem + "' (3part or part)");
}

int cmd_selftest(const RunConfig& cfg, const std::vector<int>& only, std::int64_t cubic, std::int64_t linear) {
  testing::SuiteConfig sc;
  sc.seed = cfg.seed;
  sc.caps = cfg.caps();
  if (cubic > 0) sc.cubic_constant = cubic;
  if (linear > 0) sc.linear_constant = linear;
  bool all = true, caps = false;
  for (const auto& r : testing::run_acceptance(sc, only)) {
    std::cout << testing::format_result(r) << std::endl;
    all = all && r.pass;
    caps = caps || r.cap_exceeded;
  }
  if (caps) return 2;
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic equations over Baumslag-Solitar groups BS(1,n)"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--base,-n", cfg.base, "the base n of BS(1,n)");
    sub->add_option("--max-exponent", cfg.max_exponent, "largest exponent bound searched");
    sub->add_option("--max-states", cfg.max_states, "largest number of search states");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"human", "record"}));
  };

  std::string text, file, record_path;
  auto* solve_cmd = app.add_subcommand("solve", "decide an equation and print a solution");
  common(solve_cmd);
  solve_cmd->add_option("equation", text, "the equation, e.g. \"x a X t\"");
  solve_cmd->add_option("--file,-f", file, "read the equation from a file");

  auto* verify_cmd = app.add_subcommand("verify", "check a solution record against an equation");
  common(verify_cmd);
  verify_cmd->add_option("equation", text, "the equation")->required();
  verify_cmd->add_option("record", record_path, "solution record file, - for stdin")->required();

  auto* normalize_cmd = app.add_subcommand("normalize", "print the standard form and the substitution");
  common(normalize_cmd);
  normalize_cmd->add_option("equation", text, "the equation");
  normalize_cmd->add_option("--file,-f", file, "read the equation from a file");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a word over {a, t}");
  common(eval_cmd);
  eval_cmd->add_option("word", text, "the word")->required();

  std::string coeffs, modulus;
  std::int64_t period = 1;
  auto* exp_cmd = app.add_subcommand("expsolve", "solve sum q_i n^x_i = 0, or the congruence mod M");
  common(exp_cmd);
  exp_cmd->add_option("coefficients", coeffs, "integer coefficients, space or comma separated")->required();
  exp_cmd->add_option("--modulus,-m", modulus, "solve modulo M instead of exactly");
  exp_cmd->add_option("--period,-p", period, "P with n^P = 1 mod M");

  std::string problem, numbers, gadget = "spherical";
  auto* reduce_cmd = app.add_subcommand("reduce", "build the gadget equation of a 3part or part instance");
  common(reduce_cmd);
  reduce_cmd->add_option("problem", problem, "3part or part")->required();
  reduce_cmd->add_option("numbers", numbers, "the instance, space or comma separated");
  reduce_cmd->add_option("--file,-f", file, "instance file, one integer per line");
  reduce_cmd->add_option("--gadget", gadget, "spherical or genus1 (3part only)");

  std::vector<int> only;
  std::int64_t cubic = 0, linear = 0;
  auto* self_cmd = app.add_subcommand("selftest", "run the acceptance suites");
  common(self_cmd);
  self_cmd->add_option("--seed", cfg.seed, "random seed");
  self_cmd->add_option("--only", only, "criteria to run")->delimiter(',');
  self_cmd->add_option("--size-constant", cubic, "override C in size <= C |W|^3");
  self_cmd->add_option("--linear-constant", linear, "override C' in size <= C' |W|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve_cmd) return cmd_solve(cfg, equation_text(text, file));
    if (*verify_cmd) return cmd_verify(cfg, text, record_path);
    if (*normalize_cmd) return cmd_normalize(cfg, equation_text(text, file));
    if (*eval_cmd) return cmd_eval(cfg, text);
    if (*exp_cmd) return cmd_expsolve(cfg, coeffs, modulus, period);
    if (*reduce_cmd) return cmd_reduce(cfg, problem, numbers, file, gadget);
    if (*self_cmd) return cmd_selftest(cfg, only, cubic, linear);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
