// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is non-zero when any criterion fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "forge/suites.hpp"

using namespace forge;

namespace {

const std::string kData = FORGE_DATA_DIR;
const PolyBound kAccBound{{2, 1}};  // n + 2
constexpr std::size_t kMaxLen = 6;
constexpr std::uint64_t kSeed = 0;

// wall-clock limits in seconds
constexpr double kAccPerMachine = 60;
constexpr double kWitness = 120;
constexpr double kLevels = 300;
constexpr double kNepoAccept = 300;
constexpr double kNodeValue = 60;
constexpr double kMfv = 60;
constexpr double kTranslate = 120;
constexpr double kProofs = 60;
constexpr double kReflect = 300;

constexpr double kMinMutationRate = 0.95;
constexpr std::size_t kWitnessInputs = 20;
constexpr std::size_t kTautVarCap = 12;
constexpr std::size_t kReflectBound = 12;

NepoBounds nepo_bounds(std::uint64_t m, unsigned k, unsigned c, std::optional<unsigned> d) {
  NepoBounds b;
  b.m = m;
  b.k = k;
  b.c = c;
  b.eps = Rational{1, 2};
  b.d = d;
  return b;
}

struct Criterion {
  int id;
  std::string title;
  double limit;
  std::function<std::vector<SuiteReport>()> run;
  bool limit_per_report = false;
};

bool report(const Criterion& c) {
  std::vector<SuiteReport> reps;
  std::string error;
  try {
    reps = c.run();
  } catch (const std::exception& e) {
    error = e.what();
  }
  bool ok = error.empty();
  double total = 0, worst = 0;
  std::ostringstream detail;
  for (const auto& r : reps) {
    ok = ok && r.pass;
    total += r.seconds;
    worst = std::max(worst, r.seconds);
    detail << "\n    " << r.name << ": " << (r.pass ? "ok" : "FAILED") << " (" << r.detail << ", "
           << std::fixed;
    detail.precision(2);
    detail << r.seconds << " s)";
    for (const auto& f : r.failures) detail << "\n      " << f;
  }
  double measured = c.limit_per_report ? worst : total;
  bool in_time = measured <= c.limit;
  char line[256];
  std::snprintf(line, sizeof line, "CRITERION %d %s: %s  [%.2f s, limit %.0f s%s]", c.id, c.title.c_str(),
                ok && in_time ? "PASS" : "FAIL", measured, c.limit, c.limit_per_report ? " each" : "");
  std::cout << line;
  if (!error.empty()) std::cout << "\n    error: " << error;
  if (!in_time) std::cout << "\n    over the time limit";
  std::cout << detail.str() << std::endl;
  return ok && in_time;
}

}  // namespace

int main() {
  const auto machines = corpus_machines();

  std::vector<Criterion> criteria{
      {1, "acc-oracle-equivalence", kAccPerMachine,
       [&] {
         std::vector<SuiteReport> v;
         for (const auto& tm : machines) {
           v.push_back(acc_equivalence(tm, kAccBound, kMaxLen));
           v.back().name += " " + tm.name;
         }
         return v;
       },
       true},
      {2, "witness-mutation", kWitness,
       [&] {
         std::vector<SuiteReport> v;
         for (const auto& tm : machines) {
           v.push_back(witness_mutation(tm, kAccBound, kMaxLen, kWitnessInputs, kSeed, kMinMutationRate));
           v.back().name += " " + tm.name;
         }
         return v;
       }},
      {3, "nepo-level-equivalence", kLevels,
       [&] {
         // m = 16, k = 2, eps = 1/2: W = 16, B = 1, so the single level above 0 is d = 1
         auto b = nepo_bounds(16, 2, 1, 1);
         std::vector<std::string> inputs = all_inputs(4);
         std::mt19937_64 rng(kSeed);
         for (int i = 0; i < 8; ++i) {
           std::string x(5 + rng() % 12, '0');
           for (auto& ch : x) ch = (rng() & 1) ? '1' : '0';
           inputs.push_back(x);
         }
         std::vector<SuiteReport> v;
         for (const auto& tm : {scan1(), parity()}) {
           v.push_back(nepo_level_equivalence(tm, b, 1, inputs));
           v.back().name += " " + tm.name;
         }
         return v;
       }},
      {4, "sigma0-acceptance", kNepoAccept,
       [&] {
         // m = 36, k = 1, c = 1: a tape of 6 cells holds every input up to length 6
         auto b = nepo_bounds(36, 1, 1, {});
         std::vector<SuiteReport> v;
         for (const auto& tm : machines) {
           v.push_back(nepo_acceptance(tm, b, kMaxLen));
           v.back().name += " " + tm.name;
         }
         return v;
       }},
      {5, "node-value", kNodeValue,
       [&] { return std::vector<SuiteReport>{node_value_sweep({1, 2, 4}, {8}, 100, kSeed, false)}; }},
      {6, "mfv-clauses", kMfv,
       [&] { return std::vector<SuiteReport>{node_value_sweep({1, 2, 4}, {8}, 100, kSeed, true)}; }},
      {7, "translation", kTranslate,
       [&] {
         auto s = load_sentences(kData + "/sentences");
         std::vector<SuiteReport> v{translation_adequacy(s, 6), translation_growth(s)};
         if (s.size() != 10) v.front().fail("expected 10 sentences, found " + std::to_string(s.size()));
         return v;
       }},
      {8, "proof-checking", kProofs,
       [&] {
         auto corpus = load_proof_corpus(kData + "/proofs");
         std::vector<SuiteReport> v{proof_checking(corpus, kTautVarCap)};
         if (corpus.size() != 10) v.front().fail("expected 10 proofs, found " + std::to_string(corpus.size()));
         return v;
       }},
      {9, "reflection-sweep", kReflect,
       [&] { return std::vector<SuiteReport>{reflection_check(ProofSystem::frege(), PolyBound{{0, 1}}, kReflectBound)}; }},
  };

  int failed = 0;
  for (const auto& c : criteria) failed += !report(c);
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
