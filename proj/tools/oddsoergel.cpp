#include "oddsoergel/calculus.hpp"
#include "oddsoergel/complexes.hpp"
#include "oddsoergel/grothendieck.hpp"
#include "oddsoergel/threestrand.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

using namespace osb;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

int workers_from_env() {
  int w = int(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ODDSOERGEL_WORKERS")) {
    try {
      w = std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("ODDSOERGEL_WORKERS must be an integer, got '") + env + "'");
    }
  }
  return std::max(1, w);
}

// B*Bbar{2}, U{-1}*B, R: factors joined by '*', each with an optional shift.
Summand parse_word(const std::string& text) {
  static const std::regex factor(R"(\s*([A-Za-z]+)\s*(?:\{\s*(-?\d+)\s*\})?\s*)");
  std::vector<std::string> labels;
  int shift = 0;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '*')) {
    std::smatch m;
    if (!std::regex_match(part, m, factor)) throw UsageError("cannot parse factor '" + part + "' in " + text);
    if (!is_standard_label(m[1])) throw UsageError("unknown factor '" + m[1].str() + "' (use B, Bbar, U, R)");
    labels.push_back(m[1]);
    if (m[2].matched) shift += std::stoi(m[2]);
  }
  if (labels.empty() || text.back() == '*') throw UsageError("empty word '" + text + "'");
  std::string joined;
  for (size_t i = 0; i < labels.size(); ++i) joined += (i ? "*" : "") + labels[i];
  return word_summand(joined, shift);
}

std::string summand_str(const Summand& s) { return s.label() + "{" + std::to_string(s.shift) + "}"; }

std::string complex_line(const Complex& c) {
  std::ostringstream os;
  for (size_t k = 0; k < c.terms.size(); ++k) {
    if (k) os << " -> ";
    if (c.terms[k].empty()) os << "0";
    for (size_t a = 0; a < c.terms[k].size(); ++a) os << (a ? " + " : "") << summand_str(c.terms[k][a]);
  }
  return os.str();
}

int cmd_verify(bool as_json, int workers) {
  auto reps = relation_suite(workers);
  bool ok = std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.pass; });
  if (as_json)
    std::cout << relation_suite_json(reps) << "\n";
  else
    std::cout << relation_suite_table(reps) << (ok ? "all relations hold\n" : "some relations fail\n");
  return ok ? kPass : kFail;
}

int cmd_reduce(int n, bool inverse, bool as_json) {
  if (n < 1) throw UsageError("--power must be at least 1");
  std::vector<ReductionTrace> traces;
  Complex c = rouquier_power(n, inverse, &traces);
  Shape want = expected_rouquier_shape(n, inverse);
  auto rep = matches_shape(c, want, true);
  bool d2 = d_squared_zero(c);
  for (const auto& t : traces) d2 = d2 && t.d2_every_step;
  bool ok = rep.ok && d2;
  if (as_json) {
    json j = json::parse(complex_json(c, traces.empty() ? nullptr : &traces.back()));
    j["power"] = n;
    j["inverse"] = inverse;
    j["matches_expected"] = rep.ok;
    j["d_squared_zero"] = d2;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (inverse ? "R'^" : "R^") << n << " reduced, degrees " << c.lo << ".." << c.hi() << "\n";
    std::cout << "  " << complex_line(c) << "\n";
    std::cout << "  expected shape " << (rep.ok ? "matches" : "differs: " + rep.message) << "\n";
    std::cout << "  d^2 = 0 " << (d2 ? "after every step" : "FAILS") << "\n";
  }
  return ok ? kPass : kFail;
}

int cmd_hom(const std::string& src, const std::string& tgt, int d_max, bool as_json, int workers) {
  Summand x = parse_word(src), y = parse_word(tgt);
  HomCheck h = check_against_hom(x, y, d_max, workers);
  if (as_json) {
    json dims = json::object(), predicted = json::object();
    for (auto [d, p, n] : h.rows) {
      if (n) dims[std::to_string(d)] = n;
      if (p) predicted[std::to_string(d)] = p;
    }
    json j = {{"source", summand_str(x)},
              {"target", summand_str(y)},
              {"max_degree", d_max},
              {"dims", dims},
              {"form", form(class_of(x), class_of(y)).str()},
              {"predicted", predicted},
              {"agrees", h.ok}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "Hom(" << summand_str(x) << ", " << summand_str(y) << ") up to degree " << d_max << "\n";
    std::cout << "  form: " << form(class_of(x), class_of(y)).str() << "\n";
    std::cout << "  degree  dim  predicted\n";
    for (auto [d, p, n] : h.rows)
      if (n || p) std::cout << "  " << std::setw(6) << d << "  " << std::setw(3) << n << "  " << std::setw(9) << p << "\n";
    std::cout << "  " << (h.ok ? "agrees with the form" : "DISAGREES: " + h.message) << "\n";
  }
  return h.ok ? kPass : kFail;
}

int cmd_k0(const std::string& expr, int series, bool as_json) {
  K0Value v;
  try {
    v = parse_k0(expr);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json j = {{"expr", expr}};
  std::string text;
  if (auto* e = std::get_if<K0Elem>(&v)) {
    if (series != INT32_MIN) throw UsageError("--series applies to form(...) and trace(...) only");
    j["kind"] = "element";
    j["value"] = text = e->str();
  } else {
    const auto& f = std::get<FormValue>(v);
    j["kind"] = "form";
    j["value"] = text = f.str();
    if (series != INT32_MIN) {
      json s = json::object();
      std::ostringstream os;
      bool first = true;
      for (auto [d, n] : f.series(series)) {
        s[std::to_string(d)] = n;
        os << (first ? "" : " + ");
        if (n != 1 || d == 0) os << n;
        if (d == 1) os << "q";
        if (d != 0 && d != 1) os << "q^" << d;
        first = false;
      }
      j["series"] = s;
      text += "\n  = " + (first ? std::string("0") : os.str()) + " + O(q^" + std::to_string(series + 1) + ")";
    }
  }
  std::cout << (as_json ? j.dump(2) : text) << "\n";
  return kPass;
}

int cmd_obstruct(int d_max, bool as_json, int workers) {
  auto r = obstruction_report(d_max, workers);
  if (as_json) {
    std::cout << obstruction_json(r) << "\n";
  } else {
    std::cout << "B_121hat -> B1B2B1 -> Bbar1, degrees up to " << d_max << "\n";
    if (!r.note.empty()) std::cout << "  note: " << r.note << "\n";
    std::cout << "  degree  hat  B1B2B1  Bbar1  rank(incl)  rank(quot)\n";
    for (const auto& x : r.rows)
      std::cout << "  " << std::setw(6) << x.degree << "  " << std::setw(3) << x.hat_dim << "  " << std::setw(6)
                << x.triple_dim << "  " << std::setw(5) << x.bbar_dim << "  " << std::setw(10) << x.image_rank << "  "
                << std::setw(10) << x.quotient_rank << "\n";
    std::cout << "  inclusion space dim " << r.inclusion_dim << ", injective up to " << r.injective_upto
              << ", cokernel matches Bbar1: " << (r.cokernel_match ? "yes" : "no")
              << ", exact: " << (r.exact ? "yes" : "no") << "\n";
    std::cout << "  candidate sections " << r.section_candidates << ", splits: " << (r.split ? "yes" : "no") << "\n";
  }
  return r.ok() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Odd Soergel bimodules in two variables: relations, Rouquier complexes, Hom and K0"};
  app.require_subcommand(1);

  bool as_json = false;
  auto* verify = app.add_subcommand("verify", "Check the relation suite");
  verify->add_flag("--json", as_json, "JSON output");

  int power = 0;
  bool inverse = false;
  auto* reduce_cmd = app.add_subcommand("reduce", "Minimal complex of a Rouquier power");
  reduce_cmd->add_option("--power", power, "Exponent N >= 1")->required();
  reduce_cmd->add_flag("--inverse", inverse, "Use the inverse complex");
  reduce_cmd->add_flag("--json", as_json, "JSON output");

  std::string src, tgt;
  int max_degree = 12;
  auto* hom = app.add_subcommand("hom", "Graded Hom dimensions between tensor words");
  hom->add_option("--source", src, "Word such as B*Bbar{1}")->required();
  hom->add_option("--target", tgt, "Word such as R{-1}")->required();
  hom->add_option("--max-degree", max_degree, "Largest degree")->required();
  hom->add_flag("--json", as_json, "JSON output");

  std::string expr;
  int series = INT32_MIN;
  auto* k0 = app.add_subcommand("k0", "Evaluate an expression in K0");
  k0->add_option("--expr", expr, "Expression such as b*b or form(b, 1)")->required();
  k0->add_option("--series", series, "Expand a form value up to this degree");
  k0->add_flag("--json", as_json, "JSON output");

  int obstruct_degree = 12;
  auto* obstruct = app.add_subcommand("obstruct", "Three-strand non-splitting check");
  obstruct->add_option("--max-degree", obstruct_degree, "Largest degree (>= 8)");
  obstruct->add_flag("--json", as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    int workers = workers_from_env();
    if (*verify) return cmd_verify(as_json, workers);
    if (*reduce_cmd) return cmd_reduce(power, inverse, as_json);
    if (*hom) return cmd_hom(src, tgt, max_degree, as_json, workers);
    if (*k0) return cmd_k0(expr, series, as_json);
    if (*obstruct) return cmd_obstruct(obstruct_degree, as_json, workers);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
