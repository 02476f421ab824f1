#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "plinth/conductor.hpp"
#include "plinth/nagata.hpp"
#include "plinth/parse.hpp"
#include "plinth/rank3.hpp"

using namespace plinth;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string checks = "all";
  std::string json_path;
  u32 budget_degree = Budget{}.max_degree;
  u64 budget_pairs = Budget{}.max_pairs;
  u32 fixed_space_degree = 0;
  bool strict = false;

  Budget budget() const { return Budget{budget_degree, budget_pairs}; }
  std::vector<std::string> patterns() const {
    std::vector<std::string> out;
    std::stringstream ss(checks);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) out.push_back(item);
    return out;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--checks", c.checks, "Comma separated check ids or prefixes, or 'all'");
  cmd->add_option("--json", c.json_path, "Write the report as JSON to this path");
  cmd->add_option("--budget-degree", c.budget_degree, "Degree cap for Groebner computations (0: none)");
  cmd->add_option("--budget-pairs", c.budget_pairs, "Pair cap for Groebner computations (0: none)");
  cmd->add_option("--fixed-space-degree", c.fixed_space_degree, "Degree bound for the fixed-space oracle (0: skip)");
  cmd->add_flag("--strict", c.strict, "Treat inconclusive checks as failures");
}

ordered_json to_json(const CheckRecord& r) {
  ordered_json tel = ordered_json::object();
  for (const auto& [k, s] : r.telemetry) tel[k] = {{"degree", s.degree}, {"terms", s.terms}};
  return {{"check-id", r.check_id}, {"paper-anchor", r.anchor}, {"params", r.params},
          {"status", to_string(r.status)}, {"details", r.details}, {"elapsed-ms", r.elapsed_ms},
          {"telemetry", tel}};
}

void write_atomically(const std::string& path, const std::string& text) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

int report(const std::string& command, const std::map<std::string, std::string>& params,
           std::vector<CheckRecord> records, const Common& c) {
  std::stable_sort(records.begin(), records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.check_id < b.check_id; });
  bool ok = true;
  for (const CheckRecord& r : records) {
    std::string status = to_string(r.status);
    std::transform(status.begin(), status.end(), status.begin(), ::toupper);
    std::cout << status << "  " << r.check_id << "  (" << r.elapsed_ms << " ms)";
    if (!r.details.empty()) std::cout << "  " << r.details;
    std::cout << "\n";
    if (r.status == Status::fail || r.status == Status::budget_exceeded) ok = false;
    if (r.status == Status::inconclusive && c.strict) ok = false;
  }
  std::cout << records.size() << " checks, " << (ok ? "all passed" : "FAILED") << "\n";
  if (!c.json_path.empty()) {
    ordered_json doc;
    doc["tool-version"] = kVersion;
    ordered_json p = {{"command", command}};
    for (const auto& [k, v] : params) p[k] = v;
    doc["params"] = p;
    doc["records"] = ordered_json::array();
    for (const CheckRecord& r : records) doc["records"].push_back(to_json(r));
    write_atomically(c.json_path, doc.dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

std::vector<std::string> parse_zvars(const std::string& text) {
  if (!text.empty() && std::all_of(text.begin(), text.end(), ::isdigit))
    return nagata::default_zvars(std::stoul(text));
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification harness for exponential automorphisms in characteristic p"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->require_subcommand(1);

  Common c3, cn, cd;
  rank3::Params prm;
  std::string h = "f", route;
  bool a2 = false;
  CLI::App* r3 = verify->add_subcommand("rank3", "Rank three family on F_p[x1, x2, x3]");
  r3->add_option("--p", prm.p, "Characteristic")->required();
  r3->add_option("--l", prm.l, "Exponent l")->required();
  r3->add_option("--m", prm.m, "Exponent m")->required();
  r3->add_option("--t", prm.t, "Exponent t")->required();
  r3->add_option("--h", h, "Invariant h, a polynomial in f and g");
  r3->add_option("--route", route, "Image computation: direct or certified")
      ->check(CLI::IsMember({"direct", "certified"}));
  r3->add_flag("--a2", a2, "Also check coassociativity of the coaction");
  add_common(r3, c3);

  nagata::Input nin;
  std::string zvars = "1";
  nin.a = "z1";
  u32 search_degree = 4;
  CLI::App* ng = verify->add_subcommand("nagata", "Nagata type automorphism over F_p[z..][x, y]");
  ng->add_option("--p", nin.p, "Characteristic")->required();
  ng->add_option("--zvars", zvars, "Number of z-variables, or a comma separated list of names");
  ng->add_option("--a", nin.a, "Element a of R, nonzero");
  ng->add_option("--theta", nin.theta, "theta(y) in yR[y]");
  ng->add_option("--F", nin.F, "F as a polynomial in f over R");
  ng->add_option("--search-degree", search_degree, "Degree bound for the plinth witness search");
  add_common(ng, cn);

  conductor::SuiteOptions dopt;
  CLI::App* dk = verify->add_subcommand("dedekind", "Generic conductor decomposition");
  dk->add_option("--p", dopt.p, "Characteristic")->required();
  dk->add_option("--d", dopt.d, "Degree of g")->required();
  dk->add_option("--l", dopt.l, "Exponent l");
  add_common(dk, cd);

  CLI::App* poly = app.add_subcommand("poly", "Polynomial utilities");
  poly->require_subcommand(1);
  u32 pp = 2;
  std::string vars, expr;
  CLI::App* expand = poly->add_subcommand("expand", "Expand an expression into canonical form");
  expand->add_option("--p", pp, "Characteristic")->required();
  expand->add_option("--vars", vars, "Comma separated variable order (default: sorted identifiers)");
  expand->add_option("expr", expr, "Expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*r3) {
      rank3::validate(prm);
      rank3::SuiteOptions opt;
      opt.prm = prm;
      opt.h = h;
      opt.checks = c3.patterns();
      opt.budget = c3.budget();
      opt.fixed_space_degree = c3.fixed_space_degree;
      opt.check_a2 = a2;
      if (route == "direct") opt.route = rank3::Route::direct;
      if (route == "certified") opt.route = rank3::Route::certified;
      parse_expr(h, {"f", "g"});
      auto recs = rank3::run_suite(opt);
      return report("verify rank3",
                    {{"p", std::to_string(prm.p)}, {"l", std::to_string(prm.l)}, {"m", std::to_string(prm.m)},
                     {"t", std::to_string(prm.t)}, {"h", h}},
                    std::move(recs), c3);
    }
    if (*ng) {
      nin.zvars = parse_zvars(zvars);
      nagata::build(nin, cn.budget());
      nagata::SuiteOptions opt;
      opt.input = nin;
      opt.checks = cn.patterns();
      opt.budget = cn.budget();
      opt.fixed_space_degree = cn.fixed_space_degree;
      opt.search_degree = search_degree;
      auto recs = nagata::run_suite(opt);
      return report("verify nagata",
                    {{"p", std::to_string(nin.p)}, {"zvars", zvars}, {"a", nin.a}, {"theta", nin.theta}, {"F", nin.F}},
                    std::move(recs), cn);
    }
    if (*dk) {
      if (!is_prime(dopt.p) || dopt.d == 0 || dopt.d % dopt.p == 0)
        throw std::invalid_argument("need a prime p not dividing d >= 1");
      dopt.checks = cd.patterns();
      dopt.budget = cd.budget();
      auto recs = conductor::run_suite(dopt);
      return report("verify dedekind",
                    {{"p", std::to_string(dopt.p)}, {"d", std::to_string(dopt.d)}, {"l", std::to_string(dopt.l)}},
                    std::move(recs), cd);
    }
    if (*expand) {
      if (!is_prime(pp)) throw std::invalid_argument("p must be prime");
      AstPtr ast = parse_expr(expr);
      std::vector<std::string> names;
      if (vars.empty()) {
        for (const auto& id : identifiers(ast)) names.push_back(id);
      } else {
        std::stringstream ss(vars);
        for (std::string item; std::getline(ss, item, ',');) names.push_back(item);
      }
      if (names.empty()) names.push_back("x");
      RingPtr R = Ring::make(pp, names);
      Poly f = to_poly(ast, R);
      std::cout << (f.is_zero() ? "0" : f.str()) << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
