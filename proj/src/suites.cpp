#include "forge/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "forge/acc.hpp"
#include "forge/errors.hpp"
#include "forge/eval.hpp"
#include "forge/mfv.hpp"
#include "forge/parser.hpp"
#include "forge/prop.hpp"
#include "forge/reflect.hpp"

namespace forge {

namespace {

constexpr std::size_t kKeepFailures = 8;

class Stopwatch {
 public:
  explicit Stopwatch(SuiteReport& r) : r_(r), t0_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() { r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  SuiteReport& r_;
  std::chrono::steady_clock::time_point t0_;
};

std::string bits(std::uint64_t v, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if ((v >> i) & 1) s[i] = '1';
  return s;
}

std::uint64_t to_u64(const Nat& n) { return n.convert_to<std::uint64_t>(); }

}  // namespace

void SuiteReport::fail(const std::string& what) {
  pass = false;
  ++mismatches;
  if (failures.size() < kKeepFailures) failures.push_back(what);
}

SuiteReport acc_equivalence(const TM& tm, const PolyBound& p, std::size_t max_len) {
  SuiteReport r{"acc-equivalence"};
  Stopwatch sw(r);
  Evaluator ev(compile_acc(tm, p), FiniteSlice{Nat(1) << 32, 1 << 16});
  for (const auto& x : all_inputs(max_len)) {
    ++r.checked;
    bool got = ev(Assignment{}.str("X", x));
    if (got != accepts(tm, x, p)) r.fail(tm.name + " X=" + x + " eval=" + (got ? "1" : "0"));
  }
  r.detail = std::to_string(r.checked) + " inputs";
  return r;
}

SuiteReport witness_mutation(const TM& tm, const PolyBound& p, std::size_t max_len, std::size_t count,
                             std::uint64_t seed, double min_rate) {
  SuiteReport r{"witness-mutation"};
  Stopwatch sw(r);
  // machines with few accepting inputs (zeros accepts only 0^n) get longer
  // inputs until the pool is large enough
  constexpr std::size_t kLongest = 24;
  std::vector<std::string> pool;
  for (const auto& x : all_inputs(max_len))
    if (accepts(tm, x, p)) pool.push_back(x);
  for (std::size_t n = max_len + 1; pool.size() < count && n <= kLongest; ++n)
    for (std::uint64_t v = 0; v < (1ull << n); ++v) {
      auto x = bits(v, n);
      if (accepts(tm, x, p)) pool.push_back(x);
    }
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > count) pool.resize(count);
  std::sort(pool.begin(), pool.end(), [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });

  std::uint64_t flips = 0, rejected = 0;
  for (const auto& x : pool) {
    std::size_t P = p(x.size());
    auto w = tableau_to_witness(run(tm, x, P, P), tm.state_bits());
    ++r.checked;
    if (!check_witness(tm, p, x, w)) r.fail(tm.name + " X=" + x + " simulator witness rejected");
    for (auto pos : constrained_positions(tm, p, x.size())) {
      auto m = w;
      m[pos] = m[pos] == '1' ? '0' : '1';
      ++flips;
      if (!check_witness(tm, p, x, m))
        ++rejected;
      else if (r.failures.size() < kKeepFailures)
        r.failures.push_back(tm.name + " X=" + x + " flip at " + std::to_string(pos) + " survives");
    }
  }
  r.checked += flips;
  double rate = flips ? double(rejected) / double(flips) : 0.0;
  if (pool.size() < count) {
    r.pass = false;
    r.failures.push_back("only " + std::to_string(pool.size()) + " accepting inputs");
  }
  if (rate < min_rate) r.pass = false;
  std::ostringstream os;
  os << pool.size() << " inputs, " << rejected << "/" << flips << " flips rejected";
  r.detail = os.str();
  return r;
}

SuiteReport nepo_level_equivalence(const TM& tm, const NepoBounds& b, unsigned levels,
                                   const std::vector<std::string>& inputs) {
  SuiteReport r{"nepo-levels"};
  Stopwatch sw(r);
  auto lay = nepo_layout(tm, b);
  if (levels > lay.d) throw LayoutError("level " + std::to_string(levels) + " exceeds depth " + std::to_string(lay.d));
  auto slice = nepo_slice(lay);
  std::uint64_t cell_max = to_u64(lay.cell_max);
  std::uint64_t scale = 1;
  for (unsigned l = 0; l <= levels; ++l, scale *= lay.B) {
    Evaluator ev(compile_Reach(tm, b, l), slice);
    for (const auto& X : inputs) {
      if (X.size() > lay.W) continue;
      auto t = run(tm, X, lay.B * scale, lay.W);
      Nat I = config_to_number(t.rows[0], lay.sb);
      for (std::uint64_t p1 = 0; p1 <= lay.B; ++p1)
        for (std::uint64_t p2 = 0; p2 < lay.W; ++p2)
          for (std::uint64_t c = 0; c <= cell_max; ++c) {
            bool want = c == cell_code(t.rows[p1 * scale][p2]);
            ++r.checked;
            if (ev(Assignment{}.num("cfg", I).num("p1", p1).num("p2", p2).num("cell", c)) != want)
              r.fail(tm.name + " l=" + std::to_string(l) + " X=" + X + " p1=" + std::to_string(p1) +
                     " p2=" + std::to_string(p2) + " cell=" + std::to_string(c));
          }
    }
  }
  std::ostringstream os;
  os << "W=" << lay.W << " B=" << lay.B << " d=" << lay.d << ", " << r.checked << " queries";
  r.detail = os.str();
  return r;
}

SuiteReport nepo_acceptance(const TM& tm, const NepoBounds& b, std::size_t max_len) {
  SuiteReport r{"nepo-acceptance"};
  Stopwatch sw(r);
  auto lay = nepo_layout(tm, b);
  auto f = compile_acceptance_sigma0(tm, b);
  if (classify(f) != QuantClass{QuantClass::SigmaB, 0}) r.fail("classified as " + to_string(classify(f)));
  Evaluator ev(f, nepo_slice(lay));
  auto inputs = all_inputs(max_len);
  std::uint64_t T = to_u64(lay.T);
  for (const auto& X : inputs) {
    bool want = false;
    if (X.size() <= lay.W) {
      auto t = run(tm, X, T, lay.W);
      for (const auto& cell : t.rows[T]) want = want || cell.mark == tm.k;
    }
    ++r.checked;
    if (ev(Assignment{}.str("X", X)) != want) r.fail(tm.name + " X=" + X);
  }
  std::ostringstream os;
  os << "W=" << lay.W << " B=" << lay.B << " T=" << T << " d=" << lay.d << ", " << r.checked << " inputs, "
     << to_string(classify(f));
  r.detail = os.str();
  return r;
}

SuiteReport node_value_sweep(const std::vector<std::size_t>& exhaustive, const std::vector<std::size_t>& sampled,
                             std::size_t random_labelings, std::uint64_t seed, bool mfv) {
  SuiteReport r{mfv ? "mfv-clauses" : "node-value"};
  Stopwatch sw(r);
  auto one = [&](std::size_t a, std::uint64_t g) {
    MonotoneTree t{"0" + bits(g, a - 1), a};
    std::size_t bound = node_value_depth_bound(t);
    for (std::uint64_t v = 0; v < (1ull << a); ++v) {
      auto I = bits(v, a);
      std::string where = "G=" + t.G + " I=" + I;
      if (mfv) {
        auto Y = mfv_witness(t, I);
        ++r.checked;
        if (!check_mfv(t, I, Y)) r.fail(where + " witness fails");
        if ((Y[1] == '1') != eval_tree_naive(t, I, 1)) r.fail(where + " Y(1) differs");
        continue;
      }
      for (std::size_t x = 1; x < 2 * a; ++x) {
        NodeValueTrace tr;
        ++r.checked;
        if (node_value(t, I, x, &tr) != eval_tree_naive(t, I, x)) r.fail(where + " node " + std::to_string(x));
        if (tr.max_depth > bound) r.fail(where + " depth " + std::to_string(tr.max_depth));
      }
    }
  };
  for (auto a : exhaustive)
    for (std::uint64_t g = 0; g < (1ull << (a - 1)); ++g) one(a, g);
  std::mt19937_64 rng(seed);
  for (auto a : sampled)
    for (std::size_t k = 0; k < random_labelings; ++k) one(a, rng() & ((1ull << (a - 1)) - 1));
  r.detail = std::to_string(r.checked) + (mfv ? " instances" : " node evaluations");
  return r;
}

std::vector<NamedSentence> load_sentences(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".sexp") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<NamedSentence> out;
  for (const auto& p : files) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back({p.stem().string(), parse_formula(ss.str())});
  }
  return out;
}

SuiteReport translation_adequacy(const std::vector<NamedSentence>& sentences, std::uint64_t max_n) {
  SuiteReport r{"translation-adequacy"};
  Stopwatch sw(r);
  std::size_t valid = 0;
  for (const auto& s : sentences) {
    bool valid_all = true;
    for (std::uint64_t n = 0; n <= max_n; ++n) {
      SizeProfile sz;
      sz.lengths["X"] = n;
      auto p = translate(s.f, sz);
      bool all = true;
      for (std::uint64_t v = 0; v < (1ull << n) && all; ++v)
        all = eval_naive(s.f, FiniteSlice{Nat(2 * n + 2), n}, Assignment{}.str("X", bits(v, n)));
      ++r.checked;
      if (taut_check(p) != all) r.fail(s.name + " n=" + std::to_string(n));
      valid_all = valid_all && all;
    }
    valid += valid_all;
  }
  r.detail = std::to_string(sentences.size()) + " sentences (" + std::to_string(valid) + " valid up to n=" +
             std::to_string(max_n) + ")";
  return r;
}

SuiteReport translation_growth(const std::vector<NamedSentence>& sentences) {
  SuiteReport r{"translation-growth"};
  Stopwatch sw(r);
  std::ostringstream os;
  for (const auto& s : sentences) {
    std::vector<std::pair<std::uint64_t, std::size_t>> fit;
    unsigned d1 = 0;
    for (std::uint64_t n = 1; n <= 8; ++n) {
      SizeProfile sz;
      sz.lengths["X"] = n;
      auto p = translate(s.f, sz);
      ++r.checked;
      unsigned d = prop_depth(p);
      if (n == 1) d1 = d;
      if (d != d1) r.fail(s.name + " depth " + std::to_string(d) + " at n=" + std::to_string(n));
      std::size_t size = prop_size(p);
      if (n <= 4) {
        fit.push_back({n, size});
      } else {
        auto f = fit_power(fit);
        if (double(size) > 2 * f.at(double(n)))
          r.fail(s.name + " size " + std::to_string(size) + " at n=" + std::to_string(n));
      }
    }
    os << s.name << ":D=" << fit_power(fit).D << " ";
  }
  r.detail = os.str();
  if (!r.detail.empty()) r.detail.pop_back();
  return r;
}

SuiteReport proof_checking(const std::vector<SweepItem>& corpus, std::size_t var_cap) {
  SuiteReport r{"proof-checking"};
  Stopwatch sw(r);
  auto rejects = [](const Proof& pi, const PropP& target) {
    try {
      return !check_frege(pi, target);
    } catch (const MalformedProof&) {
      return true;
    }
  };
  std::uint64_t mutants = 0;
  for (const auto& item : corpus) {
    ++r.checked;
    if (!check_frege(item.proof, item.target)) r.fail(item.name + " rejected");
    for (const auto& [what, m] : single_line_mutations(item.proof)) {
      ++mutants;
      if (!rejects(m, item.target)) r.fail(item.name + " " + what + " accepted");
    }
    bool prev = false;
    for (unsigned d = 1; d <= 4; ++d) {
      bool ok = check_depth_frege(item.proof, item.target, d);
      if (prev && !ok) r.fail(item.name + " accepted at depth " + std::to_string(d - 1) + " but not " + std::to_string(d));
      prev = ok;
    }
  }
  r.checked += mutants;
  auto sweep = soundness_sweep(ProofSystem::frege(), var_cap, corpus);
  for (const auto& f : sweep.failures) r.fail(f + " endsequent not a tautology");
  std::ostringstream os;
  os << corpus.size() << " proofs, " << mutants << " mutants, " << sweep.accepted << " endsequents tautological";
  r.detail = os.str();
  return r;
}

SuiteReport reflection_check(const ProofSystem& sys, const PolyBound& t, std::uint64_t x) {
  SuiteReport r{"reflection"};
  Stopwatch sw(r);
  auto L = compact_layout(t(x), sys);
  auto slice = reflection_slice(L);
  bool honest = eval(reflection_instance(sys, t, x), slice, {});
  bool broken = eval(reflection_instance(sys, t, x, CheckerVariant::BrokenAxiom), slice, {});
  r.checked = 2;
  if (!honest) r.fail("honest instance false");
  if (broken) r.fail("broken instance true");
  auto dh = reflection_sweep_direct(L);
  auto db = reflection_sweep_direct(L, CheckerVariant::BrokenAxiom);
  r.checked += 2;
  if (dh.holds != honest) r.fail("direct sweep disagrees (honest)");
  if (db.holds != broken) r.fail("direct sweep disagrees (broken)");
  std::ostringstream os;
  os << sys.name() << " n=" << L.n << " honest=" << (honest ? "true" : "false")
     << " broken=" << (broken ? "true" : "false") << ", " << dh.accepted_pairs << " accepted encodings";
  r.detail = os.str();
  return r;
}

}  // namespace forge
