#include "forge/parser.hpp"

#include <cctype>
#include <map>
#include <set>

namespace forge {

namespace {

struct Reader {
  const std::string& s;
  std::size_t pos = 0;
  int line = 1, col = 1;

  void advance() {
    if (s[pos] == '\n') { ++line; col = 1; } else { ++col; }
    ++pos;
  }
  void skip() {
    while (pos < s.size()) {
      char c = s[pos];
      if (c == ';') {
        while (pos < s.size() && s[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  bool at_end() { skip(); return pos >= s.size(); }

  SExpr read() {
    skip();
    if (pos >= s.size()) throw ParseError("unexpected end of input", line, col);
    SExpr e;
    e.line = line;
    e.col = col;
    char c = s[pos];
    if (c == ')') throw ParseError("unexpected ')'", line, col);
    if (c == '(') {
      advance();
      while (true) {
        skip();
        if (pos >= s.size()) throw ParseError("unterminated list opened at " + std::to_string(e.line) + ":" + std::to_string(e.col), line, col);
        if (s[pos] == ')') { advance(); break; }
        e.items.push_back(read());
      }
      return e;
    }
    e.atom = true;
    while (pos < s.size()) {
      char d = s[pos];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      e.text += d;
      advance();
    }
    return e;
  }
};

}  // namespace

std::vector<SExpr> read_sexprs(const std::string& text) {
  Reader r{text};
  std::vector<SExpr> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

SExpr read_one_sexpr(const std::string& text) {
  Reader r{text};
  if (r.at_end()) throw ParseError("empty input", r.line, r.col);
  SExpr e = r.read();
  if (!r.at_end()) throw ParseError("trailing input after expression", r.line, r.col);
  return e;
}

namespace {

[[noreturn]] void fail(const SExpr& e, const std::string& msg) { throw ParseError(msg, e.line, e.col); }

bool is_ident(const std::string& t) {
  if (t.empty() || !std::isalpha(static_cast<unsigned char>(t[0]))) return false;
  for (char c : t)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

bool is_numeral(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

void collect_idents(const SExpr& e, std::set<std::string>& out) {
  if (e.atom) {
    if (is_ident(e.text)) out.insert(e.text);
    return;
  }
  for (auto& i : e.items) collect_idents(i, out);
}

struct Builder {
  std::set<std::string> used;       // every identifier seen in the text plus fresh names
  std::set<std::string> binders;    // names already used as a binder somewhere
  std::vector<std::pair<std::string, std::string>> scope;  // original -> renamed

  std::string lookup(const std::string& n) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == n) return it->second;
    return n;
  }
  bool in_scope(const std::string& n) const {
    for (auto& p : scope)
      if (p.first == n) return true;
    return false;
  }
  std::string fresh(const std::string& base) {
    for (int i = 1;; ++i) {
      std::string c = base + "_" + std::to_string(i);
      if (!used.count(c)) {
        used.insert(c);
        return c;
      }
    }
  }

  std::string ident(const SExpr& e) {
    if (!e.atom || !is_ident(e.text)) fail(e, "expected identifier");
    return e.text;
  }
  std::string string_name(const SExpr& e) {
    std::string n = ident(e);
    if (!is_string_var(n)) throw SortError(pos(e) + "'" + n + "' is a number variable in string position");
    return lookup(n);
  }
  static std::string pos(const SExpr& e) {
    return std::to_string(e.line) + ":" + std::to_string(e.col) + ": ";
  }

  TermP term(const SExpr& e) {
    if (e.atom) {
      if (is_numeral(e.text)) return num(Nat(e.text));
      if (!is_ident(e.text)) fail(e, "bad term '" + e.text + "'");
      if (is_string_var(e.text)) throw SortError(pos(e) + "'" + e.text + "' is a string variable in number position");
      return var(lookup(e.text));
    }
    if (e.items.empty() || !e.items[0].atom) fail(e, "expected term operator");
    const std::string& op = e.items[0].text;
    auto arity = [&](std::size_t n) {
      if (e.items.size() != n + 1) fail(e, "'" + op + "' expects " + std::to_string(n) + " arguments");
    };
    if (op == "+") { arity(2); auto a = term(e.items[1]); return plus(a, term(e.items[2])); }
    if (op == "*") { arity(2); auto a = term(e.items[1]); return times(a, term(e.items[2])); }
    if (op == "pair") { arity(2); auto a = term(e.items[1]); return tpair(a, term(e.items[2])); }
    if (op == "len") { arity(1); return len(string_name(e.items[1])); }
    fail(e, "unknown term operator '" + op + "'");
  }

  FormulaP formula(const SExpr& e) {
    if (e.atom || e.items.empty() || !e.items[0].atom) fail(e, "expected formula");
    const std::string& op = e.items[0].text;
    auto arity = [&](std::size_t n) {
      if (e.items.size() != n + 1) fail(e, "'" + op + "' expects " + std::to_string(n) + " arguments");
    };
    if (op == "=") { arity(2); auto a = term(e.items[1]); return eq(a, term(e.items[2])); }
    if (op == "leq") { arity(2); auto a = term(e.items[1]); return leq(a, term(e.items[2])); }
    if (op == "bit") { arity(2); auto a = term(e.items[1]); return bit(a, term(e.items[2])); }
    if (op == "seteq") { arity(2); auto a = string_name(e.items[1]); return seteq(a, string_name(e.items[2])); }
    if (op == "in" || op == "memb") { arity(2); auto a = term(e.items[1]); return in(a, string_name(e.items[2])); }
    if (op == "and") { arity(2); auto a = formula(e.items[1]); return land(a, formula(e.items[2])); }
    if (op == "or") { arity(2); auto a = formula(e.items[1]); return lor(a, formula(e.items[2])); }
    if (op == "imp") { arity(2); auto a = formula(e.items[1]); return imp(a, formula(e.items[2])); }
    if (op == "not") { arity(1); return lnot(formula(e.items[1])); }
    bool numq = op == "exN" || op == "alN";
    bool strq = op == "exS" || op == "alS";
    if (numq || strq) {
      arity(3);
      std::string x = ident(e.items[1]);
      if (numq && is_string_var(x)) throw SortError(pos(e.items[1]) + "'" + op + "' binds a number variable, got '" + x + "'");
      if (strq && !is_string_var(x)) throw SortError(pos(e.items[1]) + "'" + op + "' binds a string variable, got '" + x + "'");
      if (in_scope(x)) throw DuplicateBindingError(pos(e.items[1]) + "'" + x + "' is already bound on this path");
      TermP bound = term(e.items[2]);
      std::string renamed = binders.count(x) ? fresh(x) : x;
      binders.insert(x);
      binders.insert(renamed);
      scope.emplace_back(x, renamed);
      FormulaP body = formula(e.items[3]);
      scope.pop_back();
      if (op == "exN") return exN(renamed, bound, body);
      if (op == "alN") return alN(renamed, bound, body);
      if (op == "exS") return exS(renamed, bound, body);
      return alS(renamed, bound, body);
    }
    fail(e, "unknown formula operator '" + op + "'");
  }
};

}  // namespace

FormulaP formula_from_sexpr(const SExpr& e) {
  Builder b;
  collect_idents(e, b.used);
  return b.formula(e);
}

FormulaP parse_formula(const std::string& text) { return formula_from_sexpr(read_one_sexpr(text)); }

TermP parse_term(const std::string& text) {
  SExpr e = read_one_sexpr(text);
  Builder b;
  collect_idents(e, b.used);
  return b.term(e);
}

}  // namespace forge
