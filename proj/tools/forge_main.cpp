#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "forge/acc.hpp"
#include "forge/errors.hpp"
#include "forge/eval.hpp"
#include "forge/mfv.hpp"
#include "forge/nepo.hpp"
#include "forge/parser.hpp"
#include "forge/proof.hpp"
#include "forge/prop.hpp"
#include "forge/reflect.hpp"
#include "forge/suites.hpp"

using namespace forge;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kDomain = 1, kUsage = 2 };

// bad input the user can fix: reported with the subcommand's usage
struct UsageError : Error {
  using Error::Error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TM machine(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_tm(arg);
  auto stem = std::filesystem::path(arg).stem().string();
  for (auto& tm : corpus_machines())
    if (tm.name == stem) return tm;
  throw UsageError("no machine file '" + arg + "' (built in: scan1, parity, zeros)");
}

std::pair<std::string, std::string> split_eq(const std::string& s) {
  auto k = s.find('=');
  if (k == std::string::npos || k == 0) throw UsageError("expected NAME=VALUE, got '" + s + "'");
  return {s.substr(0, k), s.substr(k + 1)};
}

bool is_bits(const std::string& s) { return s.find_first_not_of("01") == std::string::npos; }

std::uint64_t to_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("expected a natural number, got '" + s + "'");
  return std::stoull(s);
}

void refuse_over_cap(std::size_t size) {
  if (size > node_cap())
    throw CapExceeded("formula has " + std::to_string(size) + " nodes, cap is " + std::to_string(node_cap()) +
                      " (FORGE_NODE_CAP)");
}

json suite_json(const SuiteReport& r) {
  return json{{"name", r.name},       {"pass", r.pass},     {"checked", r.checked},
              {"mismatches", r.mismatches}, {"detail", r.detail}, {"failures", r.failures}};
}

struct Options {
  bool json = false;
  std::uint64_t seed = 0;

  std::string tm, poly = "2,1", eps = "1/2", formula, proof, tree, input, system = "frege", t = "0,1";
  std::uint64_t m = 9, k = 1, c = 1, a = 1, x = 12, max_len = 6, inputs = 20;
  std::optional<unsigned> d, depth;
  std::string num_bound;
  std::size_t str_width = 64;
  std::vector<std::string> binds, lens, vals;
  bool sweep = false;
};

int cmd_compile_acc(const Options& o) {
  TM tm = machine(o.tm);
  auto p = PolyBound::parse(o.poly);
  auto f = compile_acc(tm, p);
  refuse_over_cap(formula_size(f));
  if (o.json)
    std::cout << json{{"machine", tm.name}, {"poly", p.str()}, {"class", to_string(classify(f))},
                      {"size", formula_size(f)}, {"formula", print_formula(f)}}.dump(2)
              << "\n";
  else
    std::cout << print_formula(f) << "\n";
  return kOk;
}

int cmd_compile_nepo(const Options& o) {
  TM tm = machine(o.tm);
  NepoBounds b;
  b.m = o.m;
  b.k = static_cast<unsigned>(o.k);
  b.c = static_cast<unsigned>(o.c);
  b.eps = Rational::parse(o.eps);
  if (b.eps.num >= b.eps.den || b.eps.num == 0) throw UsageError("--eps must be p/q with 0 < p < q");
  b.d = o.d;
  auto lay = nepo_layout(tm, b);
  auto rep = size_report(tm, b);
  if (rep.over_cap) throw CapExceeded("formula over FORGE_NODE_CAP = " + std::to_string(rep.cap) + "\n" + rep.str());
  auto f = compile_acceptance_sigma0(tm, b);
  if (o.json) {
    std::cout << json{{"machine", tm.name},
                      {"m", b.m},
                      {"k", b.k},
                      {"c", b.c},
                      {"eps", b.eps.str()},
                      {"W", lay.W},
                      {"B", lay.B},
                      {"T", lay.T.str()},
                      {"d", lay.d},
                      {"reach_sizes", rep.reach_sizes},
                      {"acceptance_size", rep.acceptance_size},
                      {"class", to_string(classify(f))},
                      {"formula", print_formula(f)}}.dump(2)
              << "\n";
  } else {
    std::cout << print_formula(f) << "\n";
    std::cout << "; W=" << lay.W << " B=" << lay.B << " T=" << lay.T << " d=" << lay.d << "\n";
    std::istringstream rs(rep.str());
    for (std::string line; std::getline(rs, line);) std::cout << "; " << line << "\n";
  }
  return kOk;
}

int cmd_eval(const Options& o) {
  auto f = parse_formula(slurp(o.formula));
  FiniteSlice s;
  s.numBound = Nat(o.num_bound);
  s.strWidth = o.str_width;
  Assignment env;
  for (const auto& bnd : o.binds) {
    auto [name, value] = split_eq(bnd);
    if (is_string_var(name)) {
      if (!is_bits(value)) throw UsageError("string binding " + name + " must be a bit string");
      env.str(name, value);
    } else {
      env.num(name, Nat(to_u64(value)));
    }
  }
  bool v;
  try {
    v = eval(f, s, env);
  } catch (const UnboundVariable& e) {
    throw UsageError(e.what());
  }
  if (o.json)
    std::cout << json{{"value", v}, {"class", to_string(classify(f))}}.dump(2) << "\n";
  else
    std::cout << (v ? "true" : "false") << "\n";
  return kOk;
}

int cmd_translate(const Options& o) {
  auto f = parse_formula(slurp(o.formula));
  SizeProfile sz;
  for (const auto& l : o.lens) {
    auto [name, value] = split_eq(l);
    sz.lengths[name] = to_u64(value);
  }
  for (const auto& v : o.vals) {
    auto [name, value] = split_eq(v);
    sz.values[name] = Nat(to_u64(value));
  }
  PropP p;
  try {
    p = translate(f, sz);
  } catch (const UnboundVariable& e) {
    throw UsageError(e.what());
  }
  if (o.json)
    std::cout << json{{"depth", prop_depth(p)}, {"size", prop_size(p)}, {"formula", print_prop(p)}}.dump(2) << "\n";
  else
    std::cout << print_prop(p) << "\n";
  return kOk;
}

int cmd_mfv(const Options& o) {
  if (!is_bits(o.tree) || !is_bits(o.input)) throw UsageError("--tree and --input take bit strings");
  MonotoneTree t{o.tree, o.a};
  validate_tree(t);
  NodeValueTrace tr;
  bool root = node_value(t, o.input, 1, &tr);
  auto Y = mfv_witness(t, o.input);
  bool ok = check_mfv(t, o.input, Y);
  if (o.json)
    std::cout << json{{"value", root}, {"Y", Y}, {"check", ok}, {"recursion_depth", tr.max_depth},
                      {"depth_bound", node_value_depth_bound(t)}}.dump(2)
              << "\n";
  else
    std::cout << "value " << root << "\nY " << Y << "\ncheck " << (ok ? "ok" : "failed") << "\n";
  return ok ? kOk : kDomain;
}

int cmd_check_proof(const Options& o) {
  auto text = slurp(o.proof);
  bool ok = false;
  std::string reason;
  std::optional<Proof> pi;
  try {
    pi = parse_proof(text);
  } catch (const ParseError& e) {
    reason = std::string("parse error: ") + e.what();
  }
  if (pi) {
    auto target = proved_formula(*pi);
    if (!target) {
      reason = "endsequent is not --> A";
    } else {
      auto sys = o.depth ? ProofSystem::depth_frege(*o.depth) : ProofSystem::frege();
      try {
        ok = sys.check(*pi, *target);
        if (!ok) reason = "rejected by " + sys.name();
      } catch (const MalformedProof& e) {
        reason = std::string("malformed: ") + e.what();
      }
    }
  }
  if (o.json) {
    json j{{"valid", ok}, {"lines", pi ? pi->lines.size() : 0}};
    if (pi && ok) {
      j["depth"] = proof_depth(*pi);
      j["formula"] = print_prop(*proved_formula(*pi));
    }
    if (!ok) j["reason"] = reason;
    std::cout << j.dump(2) << "\n";
  } else if (ok) {
    std::cout << "valid " << print_prop(*proved_formula(*pi)) << "\n";
  } else {
    std::cout << "invalid (" << reason << ")\n";
  }
  return ok ? kOk : kDomain;
}

ProofSystem system_of(const Options& o) {
  if (o.system == "frege") return ProofSystem::frege();
  if (o.system == "depth-frege") {
    if (!o.depth) throw UsageError("--system depth-frege needs --depth");
    return ProofSystem::depth_frege(*o.depth);
  }
  throw UsageError("unknown proof system '" + o.system + "' (frege, depth-frege)");
}

int cmd_reflect(const Options& o) {
  auto sys = system_of(o);
  auto t = PolyBound::parse(o.t);
  auto L = compact_layout(t(o.x), sys);
  auto phi = reflection_instance(sys, t, o.x);
  refuse_over_cap(formula_size(phi));
  if (!o.sweep) {
    if (o.json)
      std::cout << json{{"system", sys.name()}, {"n", L.n}, {"class", to_string(classify(phi))},
                        {"size", formula_size(phi)}, {"formula", print_formula(phi)}}.dump(2)
                << "\n";
    else
      std::cout << print_formula(phi) << "\n";
    return kOk;
  }
  auto r = reflection_check(sys, t, o.x);
  if (o.json)
    std::cout << suite_json(r).dump(2) << "\n";
  else
    std::cout << "reflection: " << (r.pass ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
  return r.pass ? kOk : kDomain;
}

int cmd_oracle_test(const Options& o) {
  TM tm = machine(o.tm);
  auto p = PolyBound::parse(o.poly);
  std::vector<SuiteReport> reps{acc_equivalence(tm, p, o.max_len),
                                witness_mutation(tm, p, o.max_len, o.inputs, o.seed)};
  bool all = true;
  json j = json::array();
  for (const auto& r : reps) {
    all = all && r.pass;
    if (o.json) {
      j.push_back(suite_json(r));
      continue;
    }
    std::cout << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
    for (const auto& f : r.failures) std::cout << "  " << f << "\n";
  }
  if (o.json) std::cout << json{{"machine", tm.name}, {"suites", j}}.dump(2) << "\n";
  return all ? kOk : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: bounded arithmetic and proof complexity workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "machine-readable report");
  app.add_option("--seed", o.seed, "seed for randomized sweeps")->capture_default_str();

  auto* acc = app.add_subcommand("compile-acc", "ACC formula of a machine");
  acc->add_option("--tm", o.tm, "machine file or built-in name")->required();
  acc->add_option("--poly", o.poly, "time/space bound coefficients c0,c1,...")->capture_default_str();

  auto* nepo = app.add_subcommand("compile-nepo", "Sigma_0 acceptance formula via Reach^d");
  nepo->add_option("--tm", o.tm, "machine file or built-in name")->required();
  nepo->add_option("--m", o.m, "input size parameter")->required();
  nepo->add_option("--eps", o.eps, "space exponent p/q")->required();
  nepo->add_option("--k", o.k, "input length m^k")->required();
  nepo->add_option("--c", o.c, "time m^c")->capture_default_str();
  nepo->add_option("--d", o.d, "recursion depth (derived when absent)");

  auto* ev = app.add_subcommand("eval", "evaluate a formula on a finite slice");
  ev->add_option("--formula", o.formula, "s-expression file")->required();
  ev->add_option("--num-bound", o.num_bound, "largest number quantifier bound")->required();
  ev->add_option("--str-width", o.str_width, "largest string length")->capture_default_str();
  ev->add_option("--bind", o.binds, "NAME=VALUE (bit string for uppercase names)");

  auto* tr = app.add_subcommand("translate", "propositional translation");
  tr->add_option("--formula", o.formula, "s-expression file")->required();
  tr->add_option("--len", o.lens, "X=n, length of a string parameter");
  tr->add_option("--val", o.vals, "x=v, value of a number parameter");

  auto* mfv = app.add_subcommand("mfv", "monotone formula value and its witness");
  mfv->add_option("--tree", o.tree, "gate labels G (1 = AND, 0 = OR; G[0] unused)")->required();
  mfv->add_option("--a", o.a, "number of leaves")->required();
  mfv->add_option("--input", o.input, "leaf values I")->required();

  auto* cp = app.add_subcommand("check-proof", "check a Frege proof");
  cp->add_option("--proof", o.proof, "proof file")->required();
  cp->add_option("--depth", o.depth, "check as depth-d Frege");

  auto* rf = app.add_subcommand("reflect", "reflection instance for a proof system");
  rf->add_option("--system", o.system, "frege or depth-frege")->capture_default_str();
  rf->add_option("--depth", o.depth, "d for depth-frege");
  rf->add_option("--t", o.t, "size bound coefficients")->capture_default_str();
  rf->add_option("--x", o.x, "argument of the size bound")->capture_default_str();
  rf->add_flag("--sweep", o.sweep, "evaluate over the whole slice, with the broken checker as control");

  auto* ot = app.add_subcommand("oracle-test", "ACC oracle suite for one machine");
  ot->add_option("--tm", o.tm, "machine file or built-in name")->required();
  ot->add_option("--max-len", o.max_len, "longest input")->capture_default_str();
  ot->add_option("--poly", o.poly, "bound coefficients")->capture_default_str();
  ot->add_option("--inputs", o.inputs, "inputs for the witness mutation sweep")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    auto subs = app.get_subcommands();
    if (!subs.empty()) std::cerr << subs.front()->help();
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    if (name == "compile-acc") return cmd_compile_acc(o);
    if (name == "compile-nepo") return cmd_compile_nepo(o);
    if (name == "eval") return cmd_eval(o);
    if (name == "translate") return cmd_translate(o);
    if (name == "mfv") return cmd_mfv(o);
    if (name == "check-proof") return cmd_check_proof(o);
    if (name == "reflect") return cmd_reflect(o);
    if (name == "oracle-test") return cmd_oracle_test(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << sub->help();
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << sub->help();
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
