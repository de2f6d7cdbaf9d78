#include "forge/prop.hpp"

#include <cmath>
#include <functional>
#include <optional>

#include "forge/errors.hpp"
#include "forge/seq.hpp"
#include "forge/sexpr.hpp"

namespace forge {

PropP pconst(bool v) {
  static const PropP t = std::make_shared<Prop>(Prop{PKind::Const, true, "", 0, {}});
  static const PropP f = std::make_shared<Prop>(Prop{PKind::Const, false, "", 0, {}});
  return v ? t : f;
}

PropP pvar(const std::string& name, std::uint64_t index) {
  return std::make_shared<Prop>(Prop{PKind::Var, false, name, index, {}});
}

PropP pnot(PropP p) { return std::make_shared<Prop>(Prop{PKind::Not, false, "", 0, {std::move(p)}}); }

PropP pnode(PKind k, std::vector<PropP> kids) {
  if ((k == PKind::Not && kids.size() != 1) || ((k == PKind::Const || k == PKind::Var) && !kids.empty()))
    throw Error("bad arity for propositional node");
  return std::make_shared<Prop>(Prop{k, false, "", 0, std::move(kids)});
}

namespace {

PropP junction(PKind k, std::vector<PropP> kids) {
  std::vector<PropP> out;
  for (auto& c : kids) {
    if (c->kind == k)
      out.insert(out.end(), c->kids.begin(), c->kids.end());
    else
      out.push_back(std::move(c));
  }
  return std::make_shared<Prop>(Prop{k, false, "", 0, std::move(out)});
}

int cmp(const Prop& a, const Prop& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case PKind::Const:
      return a.value == b.value ? 0 : (a.value ? 1 : -1);
    case PKind::Var:
      if (a.name != b.name) return a.name < b.name ? -1 : 1;
      return a.index == b.index ? 0 : (a.index < b.index ? -1 : 1);
    default:
      break;
  }
  for (std::size_t i = 0; i < a.kids.size() && i < b.kids.size(); ++i)
    if (int c = cmp(*a.kids[i], *b.kids[i])) return c;
  if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
  return 0;
}

}  // namespace

PropP pand(std::vector<PropP> kids) { return junction(PKind::And, std::move(kids)); }
PropP por(std::vector<PropP> kids) { return junction(PKind::Or, std::move(kids)); }

PropP simplify(const PropP& p) {
  switch (p->kind) {
    case PKind::Const:
    case PKind::Var:
      return p;
    case PKind::Not: {
      auto c = simplify(p->kids[0]);
      if (c->kind == PKind::Const) return pconst(!c->value);
      return pnot(c);
    }
    default:
      break;
  }
  bool unit = p->kind == PKind::And;
  std::vector<PropP> out;
  for (const auto& k : p->kids) {
    auto c = simplify(k);
    if (c->kind == PKind::Const) {
      if (c->value == unit) continue;
      return pconst(!unit);
    }
    out.push_back(c);
  }
  if (out.empty()) return pconst(unit);
  if (out.size() == 1) return out[0];
  return junction(p->kind, std::move(out));
}

bool operator<(const Prop& a, const Prop& b) { return cmp(a, b) < 0; }
bool equal(const PropP& a, const PropP& b) { return cmp(*a, *b) == 0; }

std::string print_prop(const PropP& p) {
  switch (p->kind) {
    case PKind::Const:
      return p->value ? "(pc 1)" : "(pc 0)";
    case PKind::Var:
      return "(pv " + p->name + " " + std::to_string(p->index) + ")";
    case PKind::Not:
      return "(pnot " + print_prop(p->kids[0]) + ")";
    default: {
      std::string s = p->kind == PKind::And ? "(pand" : "(por";
      for (const auto& c : p->kids) s += " " + print_prop(c);
      return s + ")";
    }
  }
}

PropP prop_from_sexpr(const SExpr& e) {
  auto fail = [&](const std::string& m) { throw ParseError(m, e.line, e.col); };
  if (e.atom || e.items.empty() || !e.items[0].atom) fail("expected a propositional form");
  const std::string& op = e.items[0].text;
  std::size_t n = e.items.size() - 1;
  if (op == "pc") {
    if (n != 1 || !e.items[1].atom || (e.items[1].text != "0" && e.items[1].text != "1")) fail("(pc 0|1) expected");
    return pconst(e.items[1].text == "1");
  }
  if (op == "pv") {
    if (n != 2 || !e.items[1].atom || !e.items[2].atom) fail("(pv NAME INDEX) expected");
    std::uint64_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoull(e.items[2].text, &used);
      if (used != e.items[2].text.size()) fail("bad index");
    } catch (const std::logic_error&) {
      fail("bad index");
    }
    return pvar(e.items[1].text, idx);
  }
  std::vector<PropP> kids;
  for (std::size_t i = 1; i <= n; ++i) kids.push_back(prop_from_sexpr(e.items[i]));
  if (op == "pnot") {
    if (n != 1) fail("pnot takes one argument");
    return pnode(PKind::Not, std::move(kids));
  }
  if (op == "pand") return pnode(PKind::And, std::move(kids));
  if (op == "por") return pnode(PKind::Or, std::move(kids));
  fail("unknown propositional operator '" + op + "'");
  return nullptr;
}

PropP parse_prop(const std::string& text) { return prop_from_sexpr(read_one_sexpr(text)); }

std::set<PropVar> prop_vars(const PropP& p) {
  std::set<PropVar> out;
  std::function<void(const PropP&)> go = [&](const PropP& q) {
    if (q->kind == PKind::Var) out.insert({q->name, q->index});
    for (const auto& c : q->kids) go(c);
  };
  go(p);
  return out;
}

bool eval_prop(const PropP& p, const std::map<PropVar, bool>& a) {
  switch (p->kind) {
    case PKind::Const:
      return p->value;
    case PKind::Var: {
      auto it = a.find({p->name, p->index});
      if (it == a.end()) throw UnboundVariable("unassigned propositional variable " + print_prop(p));
      return it->second;
    }
    case PKind::Not:
      return !eval_prop(p->kids[0], a);
    case PKind::And:
      for (const auto& c : p->kids)
        if (!eval_prop(c, a)) return false;
      return true;
    case PKind::Or:
      for (const auto& c : p->kids)
        if (eval_prop(c, a)) return true;
      return false;
  }
  return false;
}

namespace {

// variables renumbered densely for the sweep
struct Compiled {
  PKind kind;
  bool value = false;
  std::size_t var = 0;
  std::vector<Compiled> kids;
};

Compiled compile(const PropP& p, const std::map<PropVar, std::size_t>& ids) {
  Compiled c;
  c.kind = p->kind;
  c.value = p->value;
  if (p->kind == PKind::Var) c.var = ids.at({p->name, p->index});
  for (const auto& k : p->kids) c.kids.push_back(compile(k, ids));
  return c;
}

bool run(const Compiled& c, std::uint64_t bits) {
  switch (c.kind) {
    case PKind::Const:
      return c.value;
    case PKind::Var:
      return (bits >> c.var) & 1;
    case PKind::Not:
      return !run(c.kids[0], bits);
    case PKind::And:
      for (const auto& k : c.kids)
        if (!run(k, bits)) return false;
      return true;
    case PKind::Or:
      for (const auto& k : c.kids)
        if (run(k, bits)) return true;
      return false;
  }
  return false;
}

}  // namespace

bool taut_check(const PropP& p, std::size_t cap) {
  auto vars = prop_vars(p);
  if (vars.size() > cap || vars.size() > 40)
    throw CapExceeded(std::to_string(vars.size()) + " variables exceed the tautology-check cap of " +
                      std::to_string(cap));
  std::map<PropVar, std::size_t> ids;
  for (const auto& v : vars) ids.emplace(v, ids.size());
  auto c = compile(p, ids);
  for (std::uint64_t a = 0; a < (std::uint64_t(1) << vars.size()); ++a)
    if (!run(c, a)) return false;
  return true;
}

unsigned prop_depth(const PropP& p) {
  unsigned best = 0;
  for (const auto& c : p->kids) {
    unsigned d = prop_depth(c);
    // a child of the same connective merges with its parent
    if (c->kind == p->kind && d > 0) --d;
    best = std::max(best, d);
  }
  return (p->kind == PKind::Const || p->kind == PKind::Var) ? 0 : best + 1;
}

std::size_t prop_size(const PropP& p) {
  std::size_t n = 1;
  for (const auto& c : p->kids) n += prop_size(c);
  return n;
}

namespace {

struct Translator {
  const SizeProfile& sz;
  std::map<std::string, Nat> env;

  std::uint64_t length(const std::string& X) const {
    auto it = sz.lengths.find(X);
    if (it == sz.lengths.end()) throw UnboundVariable("no length given for string parameter '" + X + "'");
    return it->second;
  }

  Nat term(const TermP& t) const {
    switch (t->kind) {
      case TermKind::Num:
        return t->value;
      case TermKind::Var: {
        if (auto it = env.find(t->name); it != env.end()) return it->second;
        if (auto it = sz.values.find(t->name); it != sz.values.end()) return it->second;
        throw UnboundVariable("no value given for number parameter '" + t->name + "'");
      }
      case TermKind::Len:
        return length(t->name);
      case TermKind::Plus:
        return term(t->a) + term(t->b);
      case TermKind::Times:
        return term(t->a) * term(t->b);
      case TermKind::Pair:
        return pair(term(t->a), term(t->b));
    }
    return 0;
  }

  PropP member(const Nat& v, const std::string& X) const {
    if (v >= length(X)) return pconst(false);
    return pvar(X, static_cast<std::uint64_t>(v));
  }

  PropP go(const FormulaP& f) {
    switch (f->kind) {
      case FKind::Eq:
        return pconst(term(f->s) == term(f->t));
      case FKind::Leq:
        return pconst(term(f->s) <= term(f->t));
      case FKind::Bit: {
        Nat v = term(f->s), i = term(f->t);
        return pconst(i < Nat(bit_length(v)) && bit_test(v, static_cast<unsigned>(i)));
      }
      case FKind::In:
        return member(term(f->s), f->x);
      case FKind::SetEq: {
        std::uint64_t n = length(f->x);
        if (n != length(f->y)) return pconst(false);
        if (f->x == f->y) return pconst(true);
        std::vector<PropP> cl;
        for (std::uint64_t i = 0; i < n; ++i) {
          auto a = pvar(f->x, i), b = pvar(f->y, i);
          cl.push_back(por({pnot(a), b}));
          cl.push_back(por({a, pnot(b)}));
        }
        return pand(std::move(cl));
      }
      case FKind::And:
        return pand({go(f->f), go(f->g)});
      case FKind::Or:
        return por({go(f->f), go(f->g)});
      case FKind::Not:
        return pnot(go(f->f));
      case FKind::Imp:
        return por({pnot(go(f->f)), go(f->g)});
      case FKind::ExN:
      case FKind::AlN: {
        Nat b = term(f->s);
        if (b > sz.max_bound)
          throw SliceExceeded("quantifier bound " + b.str() + " exceeds the expansion limit " +
                              std::to_string(sz.max_bound));
        auto saved = env.find(f->x) != env.end() ? std::optional<Nat>(env[f->x]) : std::nullopt;
        std::vector<PropP> parts;
        for (std::uint64_t v = 0; v <= static_cast<std::uint64_t>(b); ++v) {
          env[f->x] = v;
          parts.push_back(go(f->f));
        }
        if (saved)
          env[f->x] = *saved;
        else
          env.erase(f->x);
        return f->kind == FKind::ExN ? por(std::move(parts)) : pand(std::move(parts));
      }
      case FKind::ExS:
      case FKind::AlS:
        throw ClassError("string quantifier in a formula passed to translate");
    }
    return nullptr;
  }
};

}  // namespace

PropP translate(const FormulaP& phi, const SizeProfile& sizes) {
  auto q = classify(phi);
  if (q.i != 0) throw ClassError("translate needs a Sigma_0 formula, got " + to_string(q));
  Translator t{sizes, {}};
  return t.go(phi);
}

double PowerFit::at(double n) const { return C * std::pow(n, D); }

PowerFit fit_power(const std::vector<std::pair<std::uint64_t, std::size_t>>& samples) {
  PowerFit f;
  double slope = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    auto [n0, s0] = samples[i - 1];
    auto [n1, s1] = samples[i];
    if (n0 == 0 || n1 <= n0) throw Error("fit samples need increasing positive n");
    slope = std::max(slope, std::log(double(s1) / s0) / std::log(double(n1) / n0));
  }
  f.D = static_cast<unsigned>(std::ceil(slope - 1e-9));
  for (auto [n, s] : samples) f.C = std::max(f.C, s / std::pow(double(n), f.D));
  return f;
}

}  // namespace forge
