#include "forge/reflect.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "forge/errors.hpp"

namespace forge {

CompactLayout compact_layout(std::size_t n, const ProofSystem& sys) {
  CompactLayout best;
  best.n = n;
  best.bounded = sys.bounded;
  best.d = sys.d;
  unsigned dl = 0;
  if (sys.bounded) {
    dl = 1;
    while ((1ull << dl) - 1 < sys.d) ++dl;
  }
  best.dl = dl;
  bool found = false;
  for (std::size_t N = 1; N <= 64; ++N) {
    CompactLayout L = best;
    L.N = N;
    L.w = 1;
    while ((1ull << L.w) + 1 < N) ++L.w;
    L.K = 2 + 2 * L.w;
    if (N * L.K > n) break;
    for (L.wl = 1;; ++L.wl) {
      L.Lw = 4 + 2 * L.wl + 2 * N;
      L.M = n >= N * dl ? (n - N * dl) / L.Lw : 0;
      if (L.M <= 1 || (1ull << L.wl) + 1 >= L.M) break;
    }
    // keep the widest table that still leaves room for as many lines as nodes
    if (!found || L.M >= N) {
      best = L;
      found = true;
    }
  }
  return best;
}

// ---- direct checkers ----

namespace {

bool sbit(const std::string& s, std::size_t i) { return i < s.size() && s[i] == '1'; }

std::uint64_t field(const std::string& s, std::size_t pos, unsigned w) {
  std::uint64_t v = 0;
  for (unsigned b = 0; b < w; ++b)
    if (sbit(s, pos + b)) v |= 1ull << b;
  return v;
}

struct Table {
  const CompactLayout& L;
  const std::string& X;
  unsigned op(std::size_t v) const { return static_cast<unsigned>(field(X, v * L.K, 2)); }
  std::uint64_t a(std::size_t v) const { return field(X, v * L.K + 2, L.w); }
  std::uint64_t b(std::size_t v) const { return field(X, v * L.K + 2 + L.w, L.w); }
};

using Mask = std::uint64_t;

Mask one(const CompactLayout& L, std::uint64_t v) { return v < L.N ? Mask(1) << v : 0; }

bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

}  // namespace

bool compact_fla(const CompactLayout& L, const std::string& X) {
  if (L.N == 0 || X.empty() || X.size() % L.K != 0 || X.size() / L.K > L.N) return false;
  Table t{L, X};
  for (std::size_t j = 0; j < X.size() / L.K; ++j) {
    auto a = t.a(j), b = t.b(j);
    switch (t.op(j)) {
      case 0:
        if (a > 1 || (a == 0 && b > 1)) return false;
        break;
      case 1:
        if (a >= j || b != 0) return false;
        break;
      default:
        if (a >= j || b >= j) return false;
    }
  }
  return true;
}

bool compact_sat(const CompactLayout& L, const std::string& Z, const std::string& X) {
  Table t{L, X};
  std::size_t nx = X.size() / L.K;
  std::vector<bool> val(nx);
  for (std::size_t j = 0; j < nx; ++j) {
    auto a = t.a(j), b = t.b(j);
    switch (t.op(j)) {
      case 0:
        val[j] = (a == 0 && b == 1) || (a == 1 && sbit(Z, b));
        break;
      case 1:
        val[j] = !val[a];
        break;
      case 2:
        val[j] = val[a] && val[b];
        break;
      default:
        val[j] = val[a] || val[b];
    }
  }
  return nx > 0 && val[nx - 1];
}

bool compact_prf(const CompactLayout& L, const std::string& P, const std::string& X, CheckerVariant variant) {
  if (L.N == 0 || L.M == 0) return false;
  if (X.empty() || X.size() % L.K != 0 || X.size() / L.K > L.N) return false;
  std::size_t nx = X.size() / L.K, root = nx - 1;
  std::size_t labels = L.bounded ? L.N * L.dl : 0;
  if (P.size() < labels + L.Lw || (P.size() - labels) % L.Lw != 0) return false;
  std::size_t m = (P.size() - labels) / L.Lw;
  if (m > L.M) return false;
  Table t{L, X};

  auto mask = [&](std::size_t i, bool right) {
    Mask s = 0;
    std::size_t base = i * L.Lw + 4 + 2 * L.wl + (right ? L.N : 0);
    for (std::size_t v = 0; v < L.N; ++v)
      if (sbit(P, base + v)) s |= Mask(1) << v;
    return s;
  };
  Mask valid = nx >= 64 ? ~Mask(0) : (Mask(1) << nx) - 1;

  for (std::size_t i = 0; i < m; ++i)
    if (!subset(mask(i, false) | mask(i, true), valid)) return false;
  if (mask(m - 1, false) != 0 || mask(m - 1, true) != one(L, root)) return false;

  auto const_leaf = [&](std::size_t v, std::uint64_t val) { return t.op(v) == 0 && t.a(v) == 0 && t.b(v) == val; };

  for (std::size_t i = 0; i < m; ++i) {
    std::size_t base = i * L.Lw;
    std::uint64_t code = field(P, base, 4);
    std::uint64_t p = field(P, base + 4, L.wl), q = field(P, base + 4 + L.wl, L.wl);
    Mask Lc = mask(i, false), Rc = mask(i, true);
    bool ok = false;
    auto unary = [&] { return p < i && q == 0; };
    auto binary = [&] { return p < i && q < i; };
    switch (code) {
      case 0:  // axiom
        if (p != 0 || q != 0) break;
        for (std::size_t v = 0; v < L.N && !ok; ++v) {
          Mask e = Mask(1) << v;
          if (variant == CheckerVariant::BrokenAxiom)
            ok = Rc == e && subset(Lc, e);
          else
            ok = (Lc == e && Rc == e) || (Lc == 0 && Rc == e && const_leaf(v, 1)) ||
                 (Lc == e && Rc == 0 && const_leaf(v, 0));
        }
        break;
      case 1:
      case 2: {  // weakening
        if (!unary()) break;
        bool left = code == 1;
        Mask grow = left ? Lc : Rc, keep = left ? Rc : Lc;
        Mask pgrow = mask(p, !left), pkeep = mask(p, left);
        if (keep != pkeep) break;
        for (std::size_t v = 0; v < L.N && !ok; ++v) ok = grow == (pgrow | (Mask(1) << v));
        break;
      }
      case 7:
      case 8: {  // negation
        if (!unary()) break;
        bool left = code == 7;
        Mask home = left ? Lc : Rc, other = left ? Rc : Lc;
        Mask phome = mask(p, !left), pother = mask(p, left);
        for (std::size_t v = 0; v < L.N && !ok; ++v) {
          if (t.op(v) != 1) continue;
          ok = home == (phome | (Mask(1) << v)) && pother == (other | one(L, t.a(v)));
        }
        break;
      }
      case 3:
      case 6: {  // and-left, or-right
        if (!unary()) break;
        bool left = code == 3;
        Mask home = left ? Lc : Rc, other = left ? Rc : Lc;
        Mask phome = mask(p, !left), pother = mask(p, left);
        if (other != pother) break;
        for (std::size_t v = 0; v < L.N && !ok; ++v) {
          if (!((home >> v) & 1) || t.op(v) != (left ? 2u : 3u)) continue;
          for (std::uint64_t c : {t.a(v), t.b(v)}) {
            Mask cm = one(L, c);
            if (cm && (phome & cm) && subset(phome & ~cm, home) && subset(home & ~(Mask(1) << v), phome)) ok = true;
          }
        }
        break;
      }
      case 4:
      case 5: {  // and-right, or-left
        if (!binary()) break;
        bool left = code == 5;
        Mask home = left ? Lc : Rc, other = left ? Rc : Lc;
        Mask ph = mask(p, !left), qh = mask(q, !left);
        if (mask(p, left) != other || mask(q, left) != other) break;
        for (std::size_t v = 0; v < L.N && !ok; ++v) {
          if (!((home >> v) & 1) || t.op(v) != (left ? 3u : 2u)) continue;
          Mask am = one(L, t.a(v)), bm = one(L, t.b(v));
          if (!am || !bm || !(ph & am) || !(qh & bm)) continue;
          Mask need = (ph & ~am) | (qh & ~bm) | (home & ~(Mask(1) << v));
          ok = subset(need, ph & qh & home);
        }
        break;
      }
      case 9: {  // cut
        if (!binary()) break;
        if (mask(p, false) != Lc || mask(q, true) != Rc) break;
        for (std::size_t c = 0; c < L.N && !ok; ++c) {
          Mask cm = Mask(1) << c;
          ok = mask(p, true) == (Rc | cm) && mask(q, false) == (Lc | cm);
        }
        break;
      }
      default:
        break;
    }
    if (!ok) return false;
  }

  if (L.bounded) {
    std::size_t lab = m * L.Lw;
    auto label = [&](std::uint64_t j) { return field(P, lab + j * L.dl, L.dl); };
    for (std::size_t j = 0; j < nx; ++j) {
      std::uint64_t l = label(j);
      unsigned o = t.op(j);
      if (l > L.d) return false;
      if (o == 0) continue;
      if (l < 1) return false;
      std::vector<std::uint64_t> kids{t.a(j)};
      if (o >= 2) kids.push_back(t.b(j));
      for (std::uint64_t c : kids) {
        if (c >= L.N) return false;
        unsigned oc = t.op(c);
        if (oc == 0) continue;
        if (oc == o ? label(c) > l : label(c) + 1 > l) return false;
      }
    }
  }
  return true;
}

// ---- encoding proofs into the tables ----

std::optional<CompactInstance> compact_encode(const CompactLayout& L, const Proof& pi, const PropP& target) {
  if (L.N == 0 || pi.lines.empty() || pi.lines.size() > L.M) return std::nullopt;
  CompactInstance out;
  std::map<PropP, std::size_t, PropLess> index;
  struct Node {
    unsigned op;
    std::uint64_t a, b;
    unsigned depth;
  };
  std::vector<Node> nodes;
  bool ok = true;

  std::function<void(const PropP&, bool)> add = [&](const PropP& f, bool is_root) {
    if (!ok || index.count(f)) return;
    if (!is_root && equal(f, target)) {
      ok = false;  // the root has to be the last node
      return;
    }
    Node nd{0, 0, 0, prop_depth(f)};
    switch (f->kind) {
      case PKind::Const:
        nd.b = f->value;
        break;
      case PKind::Var: {
        PropVar key{f->name, f->index};
        auto it = out.vars.find(key);
        unsigned id = it == out.vars.end() ? static_cast<unsigned>(out.vars.size()) : it->second;
        out.vars.emplace(key, id);
        if (id >= (1u << L.w)) ok = false;
        nd.a = 1;
        nd.b = id;
        break;
      }
      case PKind::Not:
        add(f->kids[0], false);
        nd.op = 1;
        nd.a = ok ? index.at(f->kids[0]) : 0;
        break;
      default:
        if (f->kids.size() != 2) {
          ok = false;
          return;
        }
        add(f->kids[0], false);
        add(f->kids[1], false);
        if (!ok) return;
        nd.op = f->kind == PKind::And ? 2 : 3;
        nd.a = index.at(f->kids[0]);
        nd.b = index.at(f->kids[1]);
    }
    if (!ok) return;
    index.emplace(f, nodes.size());
    nodes.push_back(nd);
  };

  for (const auto& k : target->kids) add(k, false);
  for (const auto& ln : pi.lines)
    for (const auto* side : {&ln.seq.left, &ln.seq.right})
      for (const auto& f : *side)
        if (!equal(f, target)) add(f, false);
  add(target, true);
  if (!ok || nodes.size() > L.N) return std::nullopt;

  for (const auto& nd : nodes) {
    out.X += nd.op & 1 ? '1' : '0';
    out.X += nd.op & 2 ? '1' : '0';
    for (unsigned b = 0; b < L.w; ++b) out.X += (nd.a >> b) & 1 ? '1' : '0';
    for (unsigned b = 0; b < L.w; ++b) out.X += (nd.b >> b) & 1 ? '1' : '0';
  }

  for (const auto& ln : pi.lines) {
    unsigned code = static_cast<unsigned>(ln.tag.rule);
    std::uint64_t p = 0, q = 0;
    bool two = ln.tag.rule == Rule::AndRight || ln.tag.rule == Rule::OrLeft || ln.tag.rule == Rule::Cut;
    if (ln.premises.size() != (ln.tag.rule == Rule::Axiom ? 0u : two ? 2u : 1u)) return std::nullopt;
    if (!ln.premises.empty()) p = ln.premises[0];
    if (two) q = ln.premises[1];
    if (p >= (1ull << L.wl) || q >= (1ull << L.wl)) return std::nullopt;
    for (unsigned b = 0; b < 4; ++b) out.P += (code >> b) & 1 ? '1' : '0';
    for (unsigned b = 0; b < L.wl; ++b) out.P += (p >> b) & 1 ? '1' : '0';
    for (unsigned b = 0; b < L.wl; ++b) out.P += (q >> b) & 1 ? '1' : '0';
    for (const auto* side : {&ln.seq.left, &ln.seq.right}) {
      std::string m(L.N, '0');
      for (const auto& f : *side) m[index.at(f)] = '1';
      out.P += m;
    }
  }
  if (L.bounded)
    for (std::size_t j = 0; j < L.N; ++j) {
      // too deep for the label field: saturate, the checker rejects it anyway
      std::uint64_t l = std::min<std::uint64_t>(j < nodes.size() ? nodes[j].depth : 0, (1ull << L.dl) - 1);
      for (unsigned b = 0; b < L.dl; ++b) out.P += (l >> b) & 1 ? '1' : '0';
    }
  return out;
}

// ---- the same checks as Sigma_0 formulas ----

namespace {

struct Builder {
  const CompactLayout& L;
  CheckerVariant variant = CheckerVariant::Honest;
  int counter = 0;

  std::string fresh(const std::string& base) { return base + std::to_string(++counter); }
  static TermP n(std::uint64_t v) { return num(Nat(v)); }

  // c < 2^w and S(pos + b) <-> bit(c, b) for b < w
  static FormulaP field_is(const std::string& S, const TermP& pos, unsigned w, const TermP& c) {
    std::vector<FormulaP> fs{leq(c, n((1ull << w) - 1))};
    for (unsigned b = 0; b < w; ++b) fs.push_back(iff(in(plus(pos, n(b)), S), bit(c, n(b))));
    return conj(fs);
  }
  static FormulaP field_const(const std::string& S, const TermP& pos, unsigned w, std::uint64_t k) {
    std::vector<FormulaP> fs;
    for (unsigned b = 0; b < w; ++b) {
      auto a = in(plus(pos, n(b)), S);
      fs.push_back((k >> b) & 1 ? a : lnot(a));
    }
    return conj(fs);
  }

  TermP node_pos(const TermP& v, std::uint64_t off) const { return plus(times(v, n(L.K)), n(off)); }
  FormulaP op_is(const TermP& v, unsigned k) const {
    auto b0 = in(node_pos(v, 0), "X"), b1 = in(node_pos(v, 1), "X");
    return land(k & 1 ? b0 : lnot(b0), k & 2 ? b1 : lnot(b1));
  }
  FormulaP fa_is(const TermP& v, const TermP& c) const { return field_is("X", node_pos(v, 2), L.w, c); }
  FormulaP fb_is(const TermP& v, const TermP& c) const { return field_is("X", node_pos(v, 2 + L.w), L.w, c); }

  TermP line_pos(const TermP& i, std::uint64_t off) const { return plus(times(i, n(L.Lw)), n(off)); }
  FormulaP mem(const TermP& i, bool right, const TermP& u) const {
    return in(plus(line_pos(i, 4 + 2 * L.wl + (right ? L.N : 0)), u), "P");
  }

  using Pred = std::function<FormulaP(const TermP&)>;
  FormulaP all_nodes(const Pred& f) {
    std::string u = fresh("u");
    return alN(u, n(L.N - 1), f(var(u)));
  }
  FormulaP ex_node(const Pred& f) {
    std::string u = fresh("v");
    return exN(u, n(L.N - 1), f(var(u)));
  }
  FormulaP ex_below(std::uint64_t bound, const std::string& base, const Pred& f) {
    std::string u = fresh(base);
    return exN(u, n(bound), f(var(u)));
  }
  // set equality / subset between two membership predicates
  FormulaP same(const Pred& a, const Pred& b) {
    return all_nodes([&](const TermP& u) { return iff(a(u), b(u)); });
  }
  Pred side(const TermP& i, bool right) const {
    return [this, i, right](const TermP& u) { return mem(i, right, u); };
  }
  static Pred plus_one(const Pred& s, const TermP& v) {
    return [s, v](const TermP& u) { return lor(s(u), eq(u, v)); };
  }
  static Pred singleton(const TermP& v) {
    return [v](const TermP& u) { return eq(u, v); };
  }
  static Pred empty() {
    return [](const TermP&) { return falsity(); };
  }

  FormulaP const_leaf(const TermP& v, unsigned val) const {
    return conj({op_is(v, 0), fa_is(v, n(0)), fb_is(v, n(val))});
  }

  FormulaP axiom(const TermP& i) {
    auto Lc = side(i, false), Rc = side(i, true);
    return ex_node([&](const TermP& v) {
      if (variant == CheckerVariant::BrokenAxiom)
        return land(same(Rc, singleton(v)), all_nodes([&](const TermP& u) { return imp(Lc(u), eq(u, v)); }));
      return disj({land(same(Lc, singleton(v)), same(Rc, singleton(v))),
                   conj({same(Lc, empty()), same(Rc, singleton(v)), const_leaf(v, 1)}),
                   conj({same(Lc, singleton(v)), same(Rc, empty()), const_leaf(v, 0)})});
    });
  }

  FormulaP weak(const TermP& i, const TermP& p, bool left) {
    auto home = side(i, !left), other = side(i, left), phome = side(p, !left), pother = side(p, left);
    return land(same(other, pother), ex_node([&](const TermP& v) { return same(home, plus_one(phome, v)); }));
  }

  FormulaP negation(const TermP& i, const TermP& p, bool left) {
    auto home = side(i, !left), other = side(i, left), phome = side(p, !left), pother = side(p, left);
    return ex_node([&](const TermP& v) {
      return conj({op_is(v, 1), same(home, plus_one(phome, v)), all_nodes([&](const TermP& u) {
                     // u in pother <-> u in other or u = child of v
                     return iff(pother(u), lor(other(u), fa_is(v, u)));
                   })});
    });
  }

  // one component of the principal connective; left: and-left, else or-right
  FormulaP one_component(const TermP& i, const TermP& p, bool left) {
    auto home = side(i, !left), other = side(i, left), phome = side(p, !left), pother = side(p, left);
    return land(same(other, pother), ex_node([&](const TermP& v) {
                  return conj({home(v), op_is(v, left ? 2 : 3), ex_node([&](const TermP& c) {
                                 return conj({lor(fa_is(v, c), fb_is(v, c)), phome(c),
                                              all_nodes([&](const TermP& u) {
                                                return land(imp(land(phome(u), lnot(eq(u, c))), home(u)),
                                                            imp(land(home(u), lnot(eq(u, v))), phome(u)));
                                              })});
                               })});
                }));
  }

  // both components; left: or-left, else and-right
  FormulaP two_premises(const TermP& i, const TermP& p, const TermP& q, bool left) {
    auto home = side(i, !left), other = side(i, left);
    auto ph = side(p, !left), po = side(p, left), qh = side(q, !left), qo = side(q, left);
    return conj({same(po, other), same(qo, other), ex_node([&](const TermP& v) {
                   return conj({home(v), op_is(v, left ? 3 : 2), ex_node([&](const TermP& a) {
                                  return ex_node([&](const TermP& b) {
                                    return conj({fa_is(v, a), fb_is(v, b), ph(a), qh(b),
                                                 all_nodes([&](const TermP& u) {
                                                   auto need = disj({land(ph(u), lnot(eq(u, a))),
                                                                     land(qh(u), lnot(eq(u, b))),
                                                                     land(home(u), lnot(eq(u, v)))});
                                                   return imp(need, conj({ph(u), qh(u), home(u)}));
                                                 })});
                                  });
                                })});
                 })});
  }

  FormulaP cut(const TermP& i, const TermP& p, const TermP& q) {
    auto Lc = side(i, false), Rc = side(i, true);
    return conj({same(side(p, false), Lc), same(side(q, true), Rc), ex_node([&](const TermP& c) {
                   return land(same(side(p, true), plus_one(Rc, c)), same(side(q, false), plus_one(Lc, c)));
                 })});
  }

  FormulaP rule_ok(unsigned code, const TermP& i, const TermP& p, const TermP& q) {
    auto unary = [&] { return land(lt(p, i), eq(q, n(0))); };
    auto binary = [&] { return land(lt(p, i), lt(q, i)); };
    switch (code) {
      case 0:
        return conj({eq(p, n(0)), eq(q, n(0)), axiom(i)});
      case 1:
      case 2:
        return land(unary(), weak(i, p, code == 1));
      case 3:
      case 6:
        return land(unary(), one_component(i, p, code == 3));
      case 4:
      case 5:
        return land(binary(), two_premises(i, p, q, code == 5));
      case 7:
      case 8:
        return land(unary(), negation(i, p, code == 7));
      default:
        return land(binary(), cut(i, p, q));
    }
  }

  FormulaP labels(const TermP& m) {
    auto lab_pos = [&](const TermP& j) { return plus(times(m, n(L.Lw)), times(j, n(L.dl))); };
    auto lab_is = [&](const TermP& j, const TermP& l) { return field_is("P", lab_pos(j), L.dl, l); };
    std::uint64_t lmax = (1ull << L.dl) - 1;
    return all_nodes([&](const TermP& j) {
      return imp(lt(j, plus(var("r"), n(1))), ex_below(lmax, "l", [&](const TermP& l) {
                   auto child_ok = [&](bool second) {
                     return ex_node([&](const TermP& c) {
                       return ex_below(lmax, "lc", [&](const TermP& lc) {
                         std::vector<FormulaP> same_op, diff_op;
                         for (unsigned k = 1; k <= 3; ++k) same_op.push_back(land(op_is(j, k), op_is(c, k)));
                         auto same_kind = disj(same_op);
                         return conj({second ? fb_is(j, c) : fa_is(j, c), lab_is(c, lc),
                                      lor(op_is(c, 0), land(imp(same_kind, leq(lc, l)),
                                                             imp(lnot(same_kind), leq(plus(lc, n(1)), l))))});
                       });
                     });
                   };
                   auto connective = lnot(op_is(j, 0));
                   auto binop = lor(op_is(j, 2), op_is(j, 3));
                   return conj({lab_is(j, l), leq(l, n(L.d)), imp(connective, leq(n(1), l)),
                                imp(connective, child_ok(false)), imp(binop, child_ok(true))});
                 }));
    });
  }

  FormulaP prf() {
    if (L.N == 0 || L.M == 0) return falsity();
    TermP m = var("m"), r = var("r");
    std::uint64_t lab_bits = L.bounded ? L.N * L.dl : 0;
    std::uint64_t pmax = (1ull << L.wl) - 1;

    auto lines_ok = alN("i", n(L.M - 1), imp(lt(var("i"), m), [&] {
      TermP i = var("i");
      return exN("p", n(pmax), exN("q", n(pmax), [&] {
                   TermP p = var("p"), q = var("q");
                   std::vector<FormulaP> cases;
                   for (unsigned code = 0; code < 10; ++code)
                     cases.push_back(land(field_const("P", line_pos(i, 0), 4, code), rule_ok(code, i, p, q)));
                   return conj({field_is("P", line_pos(i, 4), L.wl, p), field_is("P", line_pos(i, 4 + L.wl), L.wl, q),
                                disj(cases)});
                 }()));
    }()));

    auto masks_in_table = alN("i", n(L.M - 1), imp(lt(var("i"), m), all_nodes([&](const TermP& u) {
                                 return imp(lt(r, u), land(lnot(mem(var("i"), false, u)), lnot(mem(var("i"), true, u))));
                               })));
    auto endsequent = alN("i", n(L.M - 1), imp(eq(plus(var("i"), n(1)), m), all_nodes([&](const TermP& u) {
                             return land(lnot(mem(var("i"), false, u)), iff(mem(var("i"), true, u), eq(u, r)));
                           })));
    std::vector<FormulaP> body{masks_in_table, endsequent, lines_ok};
    if (L.bounded) body.push_back(labels(m));

    return exN("m", n(L.M),
               conj({leq(n(1), m), eq(len("P"), plus(times(m, n(L.Lw)), n(lab_bits))),
                     exN("r", n(L.N - 1), land(eq(len("X"), times(plus(r, n(1)), n(L.K))), conj(body)))}));
  }

  FormulaP fla() {
    if (L.N == 0) return falsity();
    std::uint64_t fmax = (1ull << L.w) - 1;
    auto shape = exN("k", n(L.N), land(leq(n(1), var("k")), eq(len("X"), times(var("k"), n(L.K)))));
    auto nodes = alN("j", n(L.N - 1), imp(leq(node_pos(var("j"), L.K), len("X")), [&] {
      TermP j = var("j"), a = var("a"), b = var("b");
      return exN("a", n(fmax), exN("b", n(fmax), conj({fa_is(j, a), fb_is(j, b),
                                                       imp(op_is(j, 0), land(leq(a, n(1)), imp(eq(a, n(0)), leq(b, n(1))))),
                                                       imp(op_is(j, 1), land(lt(a, j), eq(b, n(0)))),
                                                       imp(lor(op_is(j, 2), op_is(j, 3)), land(lt(a, j), lt(b, j)))})));
    }()));
    return land(shape, nodes);
  }

  // node values E consistent with X and Z on every node up to r
  FormulaP sat_matrix() {
    std::uint64_t fmax = (1ull << L.w) - 1;
    TermP r = var("r");
    return alN("j", n(L.N - 1), imp(leq(var("j"), r), [&] {
      TermP j = var("j"), a = var("a"), b = var("b");
      auto Ej = in(j, "E"), Ea = in(a, "E"), Eb = in(b, "E");
      auto leaf = lor(land(eq(a, n(0)), eq(b, n(1))), land(eq(a, n(1)), in(b, "Z")));
      return exN("a", n(fmax), exN("b", n(fmax), conj({fa_is(j, a), fb_is(j, b), imp(op_is(j, 0), iff(Ej, leaf)),
                                                       imp(op_is(j, 1), iff(Ej, lnot(Ea))),
                                                       imp(op_is(j, 2), iff(Ej, land(Ea, Eb))),
                                                       imp(op_is(j, 3), iff(Ej, lor(Ea, Eb)))})));
    }()));
  }

  FormulaP sat() {
    if (L.N == 0) return truth();
    TermP r = var("r");
    return alS("E", n(L.N), alN("r", n(L.N - 1), imp(land(eq(len("X"), times(plus(r, n(1)), n(L.K))), sat_matrix()),
                                                      in(r, "E"))));
  }
};

}  // namespace

FormulaP fla_formula(const CompactLayout& L) { return Builder{L}.fla(); }
FormulaP prf_formula(const CompactLayout& L, CheckerVariant v) { return Builder{L, v}.prf(); }
FormulaP sat_matrix(const CompactLayout& L) { return Builder{L}.sat_matrix(); }
FormulaP sat_formula(const CompactLayout& L) { return Builder{L}.sat(); }

FormulaP reflection_instance(const ProofSystem& sys, const PolyBound& t, std::uint64_t x, CheckerVariant v) {
  CompactLayout L = compact_layout(t(x), sys);
  TermP b = num(Nat(L.n));
  return alS("P", b, alS("X", b, alS("Z", b, imp(land(fla_formula(L), prf_formula(L, v)), sat_formula(L)))));
}

FiniteSlice reflection_slice(const CompactLayout& L) {
  std::uint64_t nb = std::max<std::uint64_t>({L.M, L.N, 1ull << L.w, 1ull << L.wl, L.dl ? 1ull << L.dl : 1, 1});
  return FiniteSlice{Nat(nb), std::max<std::size_t>(L.n, L.N)};
}

ReflectionSweep reflection_sweep_direct(const CompactLayout& L, CheckerVariant v) {
  ReflectionSweep out;
  auto all_strings = [&](const std::function<bool(const std::string&)>& f) {
    for (std::size_t len = 0; len <= L.n; ++len)
      for (std::uint64_t bits = 0; bits < (1ull << len); ++bits) {
        std::string s(len, '0');
        for (std::size_t i = 0; i < len; ++i)
          if ((bits >> i) & 1) s[i] = '1';
        if (!f(s)) return false;
      }
    return true;
  };
  all_strings([&](const std::string& X) {
    if (!compact_fla(L, X)) return true;
    return all_strings([&](const std::string& P) {
      if (!compact_prf(L, P, X, v)) return true;
      ++out.accepted_pairs;
      bool taut = all_strings([&](const std::string& Z) { return compact_sat(L, Z, X); });
      if (!taut) {
        out.holds = false;
        out.counterexample = std::make_pair(P, X);
      }
      return taut;
    });
  });
  return out;
}

}  // namespace forge
