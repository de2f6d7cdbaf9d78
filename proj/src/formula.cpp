#include "forge/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace forge {

namespace {

TermP mk(TermKind k, Nat v, std::string n, TermP a, TermP b) {
  return std::make_shared<const Term>(Term{k, std::move(v), std::move(n), std::move(a), std::move(b)});
}

FormulaP mkf(FKind k, TermP s, TermP t, std::string x, std::string y, FormulaP f, FormulaP g) {
  return std::make_shared<const Formula>(
      Formula{k, std::move(s), std::move(t), std::move(x), std::move(y), std::move(f), std::move(g)});
}

void need_number_var(const std::string& x) {
  if (x.empty() || is_string_var(x)) throw SortError("expected number variable, got '" + x + "'");
}
void need_string_var(const std::string& X) {
  if (X.empty() || !is_string_var(X)) throw SortError("expected string variable, got '" + X + "'");
}

}  // namespace

bool is_string_var(const std::string& name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

TermP num(const Nat& v) { return mk(TermKind::Num, v, "", nullptr, nullptr); }
TermP zero() { return num(0); }
TermP one() { return num(1); }
TermP var(const std::string& name) {
  need_number_var(name);
  return mk(TermKind::Var, 0, name, nullptr, nullptr);
}
TermP plus(TermP a, TermP b) { return mk(TermKind::Plus, 0, "", std::move(a), std::move(b)); }
TermP times(TermP a, TermP b) { return mk(TermKind::Times, 0, "", std::move(a), std::move(b)); }
TermP len(const std::string& X) {
  need_string_var(X);
  return mk(TermKind::Len, 0, X, nullptr, nullptr);
}
TermP tpair(TermP a, TermP b) { return mk(TermKind::Pair, 0, "", std::move(a), std::move(b)); }
TermP tuple(const std::vector<TermP>& xs) {
  if (xs.empty()) throw IndexError("empty tuple");
  TermP r = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) r = tpair(r, xs[i]);
  return r;
}

FormulaP eq(TermP a, TermP b) { return mkf(FKind::Eq, std::move(a), std::move(b), "", "", nullptr, nullptr); }
FormulaP leq(TermP a, TermP b) { return mkf(FKind::Leq, std::move(a), std::move(b), "", "", nullptr, nullptr); }
FormulaP lt(TermP a, TermP b) { return leq(plus(std::move(a), one()), std::move(b)); }
FormulaP seteq(const std::string& X, const std::string& Y) {
  need_string_var(X);
  need_string_var(Y);
  return mkf(FKind::SetEq, nullptr, nullptr, X, Y, nullptr, nullptr);
}
FormulaP in(TermP t, const std::string& X) {
  need_string_var(X);
  return mkf(FKind::In, std::move(t), nullptr, X, "", nullptr, nullptr);
}
FormulaP bit(TermP t, TermP i) { return mkf(FKind::Bit, std::move(t), std::move(i), "", "", nullptr, nullptr); }
FormulaP land(FormulaP a, FormulaP b) { return mkf(FKind::And, nullptr, nullptr, "", "", std::move(a), std::move(b)); }
FormulaP lor(FormulaP a, FormulaP b) { return mkf(FKind::Or, nullptr, nullptr, "", "", std::move(a), std::move(b)); }
FormulaP lnot(FormulaP a) { return mkf(FKind::Not, nullptr, nullptr, "", "", std::move(a), nullptr); }
FormulaP imp(FormulaP a, FormulaP b) { return mkf(FKind::Imp, nullptr, nullptr, "", "", std::move(a), std::move(b)); }
FormulaP iff(FormulaP a, FormulaP b) { return land(imp(a, b), imp(b, a)); }
FormulaP exN(const std::string& x, TermP bound, FormulaP body) {
  need_number_var(x);
  return mkf(FKind::ExN, std::move(bound), nullptr, x, "", std::move(body), nullptr);
}
FormulaP alN(const std::string& x, TermP bound, FormulaP body) {
  need_number_var(x);
  return mkf(FKind::AlN, std::move(bound), nullptr, x, "", std::move(body), nullptr);
}
FormulaP exS(const std::string& X, TermP bound, FormulaP body) {
  need_string_var(X);
  return mkf(FKind::ExS, std::move(bound), nullptr, X, "", std::move(body), nullptr);
}
FormulaP alS(const std::string& X, TermP bound, FormulaP body) {
  need_string_var(X);
  return mkf(FKind::AlS, std::move(bound), nullptr, X, "", std::move(body), nullptr);
}
FormulaP truth() { return eq(zero(), zero()); }
FormulaP falsity() { return eq(zero(), one()); }

FormulaP conj(const std::vector<FormulaP>& fs) {
  if (fs.empty()) return truth();
  FormulaP r = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) r = land(fs[i], r);
  return r;
}
FormulaP disj(const std::vector<FormulaP>& fs) {
  if (fs.empty()) return falsity();
  FormulaP r = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) r = lor(fs[i], r);
  return r;
}

bool is_quantifier(FKind k) {
  return k == FKind::ExN || k == FKind::AlN || k == FKind::ExS || k == FKind::AlS;
}

bool is_atom(const FormulaP& f) {
  switch (f->kind) {
    case FKind::Eq: case FKind::Leq: case FKind::SetEq: case FKind::In: case FKind::Bit:
      return true;
    default:
      return false;
  }
}

bool equal(const TermP& a, const TermP& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Num: return a->value == b->value;
    case TermKind::Var:
    case TermKind::Len: return a->name == b->name;
    default: return equal(a->a, b->a) && equal(a->b, b->b);
  }
}

bool equal(const FormulaP& a, const FormulaP& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->x != b->x || a->y != b->y) return false;
  return equal(a->s, b->s) && equal(a->t, b->t) && equal(a->f, b->f) && equal(a->g, b->g);
}

std::string print_term(const TermP& t) {
  switch (t->kind) {
    case TermKind::Num: return t->value.str();
    case TermKind::Var: return t->name;
    case TermKind::Len: return "(len " + t->name + ")";
    case TermKind::Plus: return "(+ " + print_term(t->a) + " " + print_term(t->b) + ")";
    case TermKind::Times: return "(* " + print_term(t->a) + " " + print_term(t->b) + ")";
    case TermKind::Pair: return "(pair " + print_term(t->a) + " " + print_term(t->b) + ")";
  }
  return "";
}

namespace {

const char* head(FKind k) {
  switch (k) {
    case FKind::Eq: return "=";
    case FKind::Leq: return "leq";
    case FKind::SetEq: return "seteq";
    case FKind::In: return "in";
    case FKind::Bit: return "bit";
    case FKind::And: return "and";
    case FKind::Or: return "or";
    case FKind::Not: return "not";
    case FKind::Imp: return "imp";
    case FKind::ExN: return "exN";
    case FKind::AlN: return "alN";
    case FKind::ExS: return "exS";
    case FKind::AlS: return "alS";
  }
  return "?";
}

std::string flat(const FormulaP& f) {
  std::string h = head(f->kind);
  switch (f->kind) {
    case FKind::Eq: case FKind::Leq: case FKind::Bit:
      return "(" + h + " " + print_term(f->s) + " " + print_term(f->t) + ")";
    case FKind::SetEq: return "(seteq " + f->x + " " + f->y + ")";
    case FKind::In: return "(in " + print_term(f->s) + " " + f->x + ")";
    case FKind::Not: return "(not " + flat(f->f) + ")";
    case FKind::And: case FKind::Or: case FKind::Imp:
      return "(" + h + " " + flat(f->f) + " " + flat(f->g) + ")";
    default:
      return "(" + h + " " + f->x + " " + print_term(f->s) + " " + flat(f->f) + ")";
  }
}

void pretty_rec(const FormulaP& f, int ind, std::string& out) {
  std::string one_line = flat(f);
  if (one_line.size() + ind <= 100 || is_atom(f)) {
    out += std::string(ind, ' ') + one_line;
    return;
  }
  std::string h = head(f->kind);
  out += std::string(ind, ' ') + "(" + h;
  if (is_quantifier(f->kind)) out += " " + f->x + " " + print_term(f->s);
  out += "\n";
  pretty_rec(f->f, ind + 2, out);
  if (f->g) {
    out += "\n";
    pretty_rec(f->g, ind + 2, out);
  }
  out += ")";
}

}  // namespace

std::string print_formula(const FormulaP& f, bool pretty) {
  if (!pretty) return flat(f);
  std::string out;
  pretty_rec(f, 0, out);
  return out;
}

std::string to_string(const QuantClass& q) {
  return (q.kind == QuantClass::SigmaB ? "SigmaB(" : "PiB(") + std::to_string(q.i) + ")";
}

namespace {

// smallest sigma / pi levels containing the formula
std::pair<unsigned, unsigned> levels(const FormulaP& f) {
  switch (f->kind) {
    case FKind::Eq: case FKind::Leq: case FKind::SetEq: case FKind::In: case FKind::Bit:
      return {0, 0};
    case FKind::Not: {
      auto [s, p] = levels(f->f);
      return {p, s};
    }
    case FKind::And: case FKind::Or: {
      auto a = levels(f->f), b = levels(f->g);
      return {std::max(a.first, b.first), std::max(a.second, b.second)};
    }
    case FKind::Imp: {
      auto a = levels(f->f), b = levels(f->g);
      return {std::max(a.second, b.first), std::max(a.first, b.second)};
    }
    case FKind::ExN: case FKind::AlN:
      return levels(f->f);
    case FKind::ExS: {
      unsigned s = std::max(1u, levels(f->f).first);
      return {s, s + 1};
    }
    case FKind::AlS: {
      unsigned p = std::max(1u, levels(f->f).second);
      return {p + 1, p};
    }
  }
  return {0, 0};
}

enum class DepthClass { None, And, Or, Not, Imp, Ex, Al };

DepthClass dclass(FKind k) {
  switch (k) {
    case FKind::And: return DepthClass::And;
    case FKind::Or: return DepthClass::Or;
    case FKind::Not: return DepthClass::Not;
    case FKind::Imp: return DepthClass::Imp;
    case FKind::ExN: case FKind::ExS: return DepthClass::Ex;
    case FKind::AlN: case FKind::AlS: return DepthClass::Al;
    default: return DepthClass::None;
  }
}

unsigned depth_rec(const FormulaP& f, DepthClass parent) {
  if (is_atom(f)) return 0;
  DepthClass c = dclass(f->kind);
  unsigned sub = depth_rec(f->f, c);
  if (f->g) sub = std::max(sub, depth_rec(f->g, c));
  return sub + (c == parent ? 0 : 1);
}

}  // namespace

QuantClass classify(const FormulaP& f) {
  auto [s, p] = levels(f);
  if (s == 0) return {QuantClass::SigmaB, 0};
  if (s <= p) return {QuantClass::SigmaB, s};
  return {QuantClass::PiB, p};
}

unsigned depth(const FormulaP& f) { return depth_rec(f, DepthClass::None); }

std::size_t term_size(const TermP& t) {
  std::size_t n = 1;
  if (t->a) n += term_size(t->a);
  if (t->b) n += term_size(t->b);
  return n;
}

std::size_t formula_size(const FormulaP& f) {
  std::size_t n = 1;
  if (f->s) n += term_size(f->s);
  if (f->t) n += term_size(f->t);
  if (f->f) n += formula_size(f->f);
  if (f->g) n += formula_size(f->g);
  return n;
}

void collect_free(const TermP& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var: case TermKind::Len: out.insert(t->name); break;
    case TermKind::Num: break;
    default: collect_free(t->a, out); collect_free(t->b, out);
  }
}

std::set<std::string> free_vars(const TermP& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

std::set<std::string> free_vars(const FormulaP& f) {
  std::set<std::string> out;
  if (f->s) collect_free(f->s, out);
  if (f->t) collect_free(f->t, out);
  if (f->kind == FKind::SetEq) { out.insert(f->x); out.insert(f->y); }
  if (f->kind == FKind::In) out.insert(f->x);
  if (is_quantifier(f->kind)) {
    auto body = free_vars(f->f);
    body.erase(f->x);
    out.insert(body.begin(), body.end());
    return out;
  }
  if (f->f) { auto a = free_vars(f->f); out.insert(a.begin(), a.end()); }
  if (f->g) { auto b = free_vars(f->g); out.insert(b.begin(), b.end()); }
  return out;
}

namespace {
bool term_has_len(const TermP& t, const std::string& X) {
  if (t->kind == TermKind::Len) return t->name == X;
  return (t->a && term_has_len(t->a, X)) || (t->b && term_has_len(t->b, X));
}
}  // namespace

bool string_len_referenced(const FormulaP& f, const std::string& X) {
  if (f->kind == FKind::SetEq && (f->x == X || f->y == X)) return true;
  if (is_quantifier(f->kind) && f->x == X) return term_has_len(f->s, X);
  if (f->s && term_has_len(f->s, X)) return true;
  if (f->t && term_has_len(f->t, X)) return true;
  if (f->f && string_len_referenced(f->f, X)) return true;
  if (f->g && string_len_referenced(f->g, X)) return true;
  return false;
}

TermP substitute(const TermP& s, const std::string& v, const TermP& t) {
  switch (s->kind) {
    case TermKind::Var: return s->name == v ? t : s;
    case TermKind::Num: case TermKind::Len: return s;
    default: {
      auto a = substitute(s->a, v, t), b = substitute(s->b, v, t);
      if (a == s->a && b == s->b) return s;
      return mk(s->kind, 0, "", a, b);
    }
  }
}

namespace {
FormulaP subst_rec(const FormulaP& f, const std::string& v, const TermP& t, const std::set<std::string>& tv) {
  if (free_vars(f).count(v) == 0) return f;
  switch (f->kind) {
    case FKind::Eq: case FKind::Leq: case FKind::Bit:
      return mkf(f->kind, substitute(f->s, v, t), substitute(f->t, v, t), "", "", nullptr, nullptr);
    case FKind::In:
      return mkf(f->kind, substitute(f->s, v, t), nullptr, f->x, "", nullptr, nullptr);
    case FKind::SetEq:
      return f;
    case FKind::Not:
      return lnot(subst_rec(f->f, v, t, tv));
    case FKind::And: case FKind::Or: case FKind::Imp:
      return mkf(f->kind, nullptr, nullptr, "", "", subst_rec(f->f, v, t, tv), subst_rec(f->g, v, t, tv));
    default: {
      auto bound = substitute(f->s, v, t);
      if (f->x == v) return mkf(f->kind, bound, nullptr, f->x, "", f->f, nullptr);
      auto bodyfree = free_vars(f->f);
      if (bodyfree.count(v) && tv.count(f->x))
        throw CaptureError("substituting for '" + v + "' would capture '" + f->x + "'");
      return mkf(f->kind, bound, nullptr, f->x, "", subst_rec(f->f, v, t, tv), nullptr);
    }
  }
}
}  // namespace

FormulaP substitute(const FormulaP& f, const std::string& v, const TermP& t) {
  return subst_rec(f, v, t, free_vars(t));
}

}  // namespace forge
