#include "forge/proof.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "forge/errors.hpp"
#include "forge/sexpr.hpp"

namespace forge {

namespace {

using FSet = std::set<PropP, PropLess>;

FSet as_set(const std::vector<PropP>& v) { return FSet(v.begin(), v.end()); }

bool same(const FSet& a, const FSet& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](const PropP& x, const PropP& y) {
           return equal(x, y);
         });
}

bool subset(const FSet& a, const FSet& b) {
  for (const auto& x : a)
    if (!b.count(x)) return false;
  return true;
}

FSet with(FSet s, const PropP& x) {
  s.insert(x);
  return s;
}

bool is_const(const PropP& p, bool v) { return p->kind == PKind::Const && p->value == v; }

// There is one context C with prem_i = C + aux_i for every premise and
// concl = C + principal (set union).
bool shared_context(const std::vector<std::pair<const FSet*, PropP>>& prems, const FSet& concl, const PropP& principal) {
  if (!concl.count(principal)) return false;
  FSet need;
  for (const auto& [s, aux] : prems) {
    if (!s->count(aux)) return false;
    for (const auto& x : *s)
      if (!equal(x, aux)) need.insert(x);
  }
  for (const auto& x : concl)
    if (!equal(x, principal)) need.insert(x);
  for (const auto& [s, aux] : prems)
    if (!subset(need, *s)) return false;
  return subset(need, concl);
}

const char* kRuleNames[] = {"axiom",  "weak-left", "weak-right", "and-left",  "and-right",
                            "or-left", "or-right",  "not-left",   "not-right", "cut"};

std::size_t arity_for(Rule r) {
  switch (r) {
    case Rule::Axiom:
      return 0;
    case Rule::Cut:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

std::string rule_name(const RuleTag& t) {
  if (t.rule == Rule::Cut) return "cut(" + std::to_string(t.cut_index) + ")";
  return kRuleNames[static_cast<int>(t.rule)];
}

RuleTag parse_rule(const std::string& tok) {
  for (int r = 0; r < 9; ++r)
    if (tok == kRuleNames[r]) return {static_cast<Rule>(r), 0};
  if (tok.size() > 5 && tok.compare(0, 4, "cut(") == 0 && tok.back() == ')') {
    std::string num = tok.substr(4, tok.size() - 5);
    if (!num.empty() && std::all_of(num.begin(), num.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return {Rule::Cut, static_cast<std::size_t>(std::stoull(num))};
  }
  throw ParseError("unknown rule '" + tok + "'", 0, 0);
}

bool equal(const Sequent& a, const Sequent& b) {
  return same(as_set(a.left), as_set(b.left)) && same(as_set(a.right), as_set(b.right));
}

bool equal(const Proof& a, const Proof& b) {
  if (a.lines.size() != b.lines.size()) return false;
  auto list_eq = [](const std::vector<PropP>& x, const std::vector<PropP>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!equal(x[i], y[i])) return false;
    return true;
  };
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    const auto &p = a.lines[i], &q = b.lines[i];
    if (p.tag.rule != q.tag.rule || p.tag.cut_index != q.tag.cut_index || p.premises != q.premises) return false;
    if (!list_eq(p.seq.left, q.seq.left) || !list_eq(p.seq.right, q.seq.right)) return false;
  }
  return true;
}

bool line_ok(const Proof& pi, std::size_t i) {
  const ProofLine& ln = pi.lines[i];
  if (ln.tag.rule != Rule::AndRight && ln.tag.rule != Rule::OrLeft && ln.premises.size() != arity_for(ln.tag.rule))
    return false;
  FSet L = as_set(ln.seq.left), R = as_set(ln.seq.right);
  std::vector<FSet> PL, PR;
  for (std::size_t p : ln.premises) {
    PL.push_back(as_set(pi.lines[p].seq.left));
    PR.push_back(as_set(pi.lines[p].seq.right));
  }

  switch (ln.tag.rule) {
    case Rule::Axiom:
      if (L.size() == 1 && R.size() == 1 && equal(*L.begin(), *R.begin())) return true;
      if (L.empty() && R.size() == 1 && is_const(*R.begin(), true)) return true;
      return R.empty() && L.size() == 1 && is_const(*L.begin(), false);

    case Rule::WeakLeft:
    case Rule::WeakRight: {
      bool left = ln.tag.rule == Rule::WeakLeft;
      const FSet &grow = left ? L : R, &keep = left ? R : L;
      const FSet &pgrow = left ? PL[0] : PR[0], &pkeep = left ? PR[0] : PL[0];
      return same(keep, pkeep) && subset(pgrow, grow) && grow.size() <= pgrow.size() + 1;
    }

    case Rule::NotLeft:
    case Rule::NotRight: {
      bool left = ln.tag.rule == Rule::NotLeft;
      const FSet &home = left ? L : R, &other = left ? R : L;
      const FSet &phome = left ? PL[0] : PR[0], &pother = left ? PR[0] : PL[0];
      for (const auto& v : home) {
        if (v->kind != PKind::Not) continue;
        if (same(home, with(phome, v)) && same(pother, with(other, v->kids[0]))) return true;
      }
      return false;
    }

    case Rule::AndLeft:
    case Rule::OrRight: {
      bool left = ln.tag.rule == Rule::AndLeft;
      PKind want = left ? PKind::And : PKind::Or;
      const FSet &home = left ? L : R, &other = left ? R : L;
      const FSet &phome = left ? PL[0] : PR[0], &pother = left ? PR[0] : PL[0];
      if (!same(other, pother)) return false;
      for (const auto& v : home) {
        if (v->kind != want) continue;
        for (const auto& c : v->kids)
          if (shared_context({{&phome, c}}, home, v)) return true;
      }
      return false;
    }

    case Rule::AndRight:
    case Rule::OrLeft: {
      bool left = ln.tag.rule == Rule::OrLeft;
      PKind want = left ? PKind::Or : PKind::And;
      const FSet &home = left ? L : R, &other = left ? R : L;
      const auto &phome = left ? PL : PR, &pother = left ? PR : PL;
      for (const auto& s : pother)
        if (!same(s, other)) return false;
      for (const auto& v : home) {
        if (v->kind != want || v->kids.size() != ln.premises.size()) continue;
        std::vector<std::pair<const FSet*, PropP>> prems;
        for (std::size_t k = 0; k < v->kids.size(); ++k) prems.push_back({&phome[k], v->kids[k]});
        if (shared_context(prems, home, v)) return true;
      }
      return false;
    }

    case Rule::Cut: {
      const auto& first_right = pi.lines[ln.premises[0]].seq.right;
      if (ln.tag.cut_index >= first_right.size()) return false;
      const PropP& A = first_right[ln.tag.cut_index];
      return same(PL[0], L) && same(PR[1], R) && same(PR[0], with(R, A)) && same(PL[1], with(L, A));
    }
  }
  return false;
}

bool check_frege(const Proof& pi, const PropP& target) {
  for (std::size_t i = 0; i < pi.lines.size(); ++i)
    for (std::size_t p : pi.lines[i].premises)
      if (p >= i)
        throw MalformedProof("line " + std::to_string(i) + " cites premise " + std::to_string(p) +
                             ", which is not an earlier line");
  if (pi.lines.empty()) return false;
  for (std::size_t i = 0; i < pi.lines.size(); ++i)
    if (!line_ok(pi, i)) return false;
  const Sequent& end = pi.lines.back().seq;
  return end.left.empty() && same(as_set(end.right), FSet{target});
}

unsigned proof_depth(const Proof& pi) {
  unsigned d = 0;
  for (const auto& ln : pi.lines) {
    for (const auto& f : ln.seq.left) d = std::max(d, prop_depth(f));
    for (const auto& f : ln.seq.right) d = std::max(d, prop_depth(f));
  }
  return d;
}

bool check_depth_frege(const Proof& pi, const PropP& target, unsigned d) {
  return check_frege(pi, target) && proof_depth(pi) <= d;
}

bool ProofSystem::check(const Proof& pi, const PropP& target) const {
  return bounded ? check_depth_frege(pi, target, d) : check_frege(pi, target);
}

std::string ProofSystem::name() const { return bounded ? "depth-" + std::to_string(d) + " frege" : "frege"; }

std::optional<PropP> proved_formula(const Proof& pi) {
  if (pi.lines.empty()) return std::nullopt;
  const Sequent& end = pi.lines.back().seq;
  FSet r = as_set(end.right);
  if (!end.left.empty() || r.size() != 1) return std::nullopt;
  return *r.begin();
}

SoundnessReport soundness_sweep(const ProofSystem& sys, std::size_t var_cap, const std::vector<SweepItem>& corpus) {
  SoundnessReport rep;
  for (const auto& item : corpus) {
    bool ok = false;
    try {
      ok = sys.check(item.proof, item.target);
    } catch (const MalformedProof&) {
      ok = false;
    }
    if (!ok) {
      ++rep.rejected;
      rep.rejected_names.push_back(item.name);
      continue;
    }
    ++rep.accepted;
    if (!taut_check(item.target, var_cap)) rep.failures.push_back(item.name);
  }
  return rep;
}

std::vector<SweepItem> load_proof_corpus(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".proof") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<SweepItem> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    SweepItem item{f.stem().string(), parse_proof(ss.str()), nullptr};
    auto t = proved_formula(item.proof);
    if (!t) throw ParseError(f.string() + ": last line is not of the form --> A", 0, 0);
    item.target = *t;
    out.push_back(std::move(item));
  }
  return out;
}

// ---- text format ----

namespace {

std::string side_text(const std::vector<PropP>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + print_prop(v[i]);
  return s + ")";
}

std::vector<PropP> side_from(const SExpr& e) {
  if (e.atom) throw ParseError("expected a list of formulas", e.line, e.col);
  std::vector<PropP> out;
  for (const auto& it : e.items) out.push_back(prop_from_sexpr(it));
  return out;
}

}  // namespace

std::string print_proof(const Proof& pi) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pi.lines.size(); ++i) {
    const auto& ln = pi.lines[i];
    os << i << ": (seq " << side_text(ln.seq.left) << " " << side_text(ln.seq.right) << ") " << rule_name(ln.tag)
       << " [";
    for (std::size_t k = 0; k < ln.premises.size(); ++k) os << (k ? " " : "") << ln.premises[k];
    os << "]\n";
  }
  return os.str();
}

Proof parse_proof(const std::string& text) {
  Proof pi;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string s = raw.substr(0, raw.find(';'));
    std::size_t pos = 0;
    auto skip = [&] {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    auto fail = [&](const std::string& m) -> void { throw ParseError(m, lineno, static_cast<int>(pos) + 1); };
    skip();
    if (pos == s.size()) continue;

    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || pos >= s.size() || s[pos] != ':') fail("expected 'n:' line label");
    if (std::stoull(s.substr(start, pos - start)) != pi.lines.size())
      fail("line label out of sequence, expected " + std::to_string(pi.lines.size()));
    ++pos;
    skip();

    if (pos >= s.size() || s[pos] != '(') fail("expected (seq ...)");
    std::size_t open = pos;
    int depth = 0;
    for (; pos < s.size(); ++pos) {
      if (s[pos] == '(') ++depth;
      if (s[pos] == ')' && --depth == 0) break;
    }
    if (depth != 0) fail("unbalanced parentheses");
    ++pos;
    SExpr e;
    try {
      e = read_one_sexpr(s.substr(open, pos - open));
    } catch (const ParseError& err) {
      throw ParseError(std::string("in sequent: ") + err.what(), lineno, static_cast<int>(open) + 1);
    }
    if (e.atom || e.items.size() != 3 || !e.items[0].atom || e.items[0].text != "seq")
      fail("expected (seq (left ...) (right ...))");
    ProofLine ln;
    ln.seq.left = side_from(e.items[1]);
    ln.seq.right = side_from(e.items[2]);

    skip();
    start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '[') ++pos;
    try {
      ln.tag = parse_rule(s.substr(start, pos - start));
    } catch (const ParseError& err) {
      throw ParseError(err.what(), lineno, static_cast<int>(start) + 1);
    }

    skip();
    if (pos >= s.size() || s[pos] != '[') fail("expected [premises]");
    ++pos;
    for (;;) {
      skip();
      if (pos < s.size() && s[pos] == ']') {
        ++pos;
        break;
      }
      start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) fail("expected a premise index or ']'");
      ln.premises.push_back(std::stoull(s.substr(start, pos - start)));
    }
    skip();
    if (pos != s.size()) fail("trailing text after premises");
    pi.lines.push_back(std::move(ln));
  }
  return pi;
}

std::vector<std::pair<std::string, Proof>> single_line_mutations(const Proof& pi) {
  std::vector<std::pair<std::string, Proof>> out;
  auto fresh = pvar("z", 9);
  for (std::size_t i = 0; i < pi.lines.size(); ++i) {
    auto push = [&](const std::string& what, const ProofLine& ln) {
      Proof m = pi;
      m.lines[i] = ln;
      out.push_back({"line " + std::to_string(i) + ": " + what, std::move(m)});
    };
    const ProofLine& ln = pi.lines[i];
    for (int r = 0; r <= static_cast<int>(Rule::Cut); ++r)
      for (std::size_t ci = 0; ci < (r == static_cast<int>(Rule::Cut) ? 3u : 1u); ++ci) {
        RuleTag t{static_cast<Rule>(r), ci};
        if (t.rule == ln.tag.rule && t.cut_index == ln.tag.cut_index) continue;
        ProofLine m = ln;
        m.tag = t;
        push("rule " + rule_name(t), m);
      }
    for (std::size_t k = 0; k < ln.premises.size(); ++k) {
      for (std::size_t j = 0; j <= i; ++j) {
        if (j == ln.premises[k]) continue;
        ProofLine m = ln;
        m.premises[k] = j;
        push("premise " + std::to_string(k) + " -> " + std::to_string(j), m);
      }
      ProofLine m = ln;
      m.premises.erase(m.premises.begin() + static_cast<long>(k));
      push("drop premise", m);
    }
    for (std::size_t j = 0; j < i; ++j) {
      ProofLine m = ln;
      m.premises.push_back(j);
      push("extra premise", m);
    }
    for (int side = 0; side < 2; ++side) {
      auto& v = side ? ln.seq.right : ln.seq.left;
      for (std::size_t k = 0; k < v.size(); ++k) {
        ProofLine m = ln;
        auto& mv = side ? m.seq.right : m.seq.left;
        auto f = mv[k];
        mv.erase(mv.begin() + static_cast<long>(k));
        push("remove formula", m);
        (side ? m.seq.left : m.seq.right).push_back(f);
        push("move formula", m);
        ProofLine n = ln;
        auto& nv = side ? n.seq.right : n.seq.left;
        nv[k] = pnot(nv[k]);
        push("negate formula", n);
      }
      ProofLine m = ln;
      (side ? m.seq.right : m.seq.left).push_back(fresh);
      push("add formula", m);
    }
  }
  return out;
}

}  // namespace forge
