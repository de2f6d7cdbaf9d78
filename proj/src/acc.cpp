#include "forge/acc.hpp"

#include "forge/eval.hpp"
#include "tableau.hpp"

namespace forge {

namespace {

using detail::Tab;
using detail::evolution;

// W stores field f of cell i in row j at <<j,i>,f>
TermP wpos(const TermP& j, const TermP& i, unsigned f) { return tpair(tpair(j, i), num(f)); }

Tab string_tab(const std::string& W, unsigned sb) {
  return Tab{[W](const TermP& j, const TermP& i, unsigned f) { return in(wpos(j, i, f), W); }, sb};
}

TermP tableau_bound(const TermP& rows, const TermP& w, unsigned sb) {
  return plus(tpair(tpair(rows, w), num(sb)), one());
}

}  // namespace

FormulaP acc_matrix(const TM& tm, const PolyBound& p) {
  Tab tab = string_tab("W", tm.state_bits());
  TermP P = p.as_term(len("X"));
  TermP i = var("c");
  TermP z = zero();
  auto init = alN("c", P,
                  imp(lt(i, P),
                      conj({imp(lt(i, len("X")), iff(tab.bit(z, i), in(i, "X"))),
                            imp(leq(len("X"), i), lnot(tab.bit(z, i))),
                            imp(eq(i, z), tab.state_is(z, z, 1)),
                            imp(lnot(eq(i, z)), tab.state_is(z, i, 0))})));
  auto accept = exN("e", P, land(lt(var("e"), P), tab.state_is(P, var("e"), tm.k)));
  return conj({init, evolution(tm, tab, P, P), accept});
}

FormulaP compile_acc(const TM& tm, const PolyBound& p) {
  TermP P = p.as_term(len("X"));
  return exS("W", tableau_bound(P, P, tm.state_bits()), acc_matrix(tm, p));
}

std::string config_to_string(const Configuration& c, unsigned sb) {
  std::string s(c.size() * (1 + sb), '0');
  for (std::size_t i = 0; i < c.size(); ++i) {
    s[i * (1 + sb)] = c[i].bit ? '1' : '0';
    for (unsigned f = 0; f < sb; ++f) s[i * (1 + sb) + 1 + f] = ((c[i].mark >> f) & 1) ? '1' : '0';
  }
  return s;
}

Configuration config_from_string(const std::string& s, unsigned sb) {
  if (s.size() % (1 + sb)) throw LayoutError("configuration string length is not a multiple of the cell size");
  Configuration c(s.size() / (1 + sb));
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i].bit = s[i * (1 + sb)] == '1';
    for (unsigned f = 0; f < sb; ++f)
      if (s[i * (1 + sb) + 1 + f] == '1') c[i].mark |= 1u << f;
  }
  return c;
}

FormulaP compile_reach(const TM& tm, const PolyBound& p) {
  unsigned sb = tm.state_bits();
  Tab tab = string_tab("W", sb);
  TermP w = var("w");
  TermP T = p.as_term(w);
  TermP cs = num(1 + sb);
  TermP i = var("c");
  std::vector<FormulaP> pins;
  for (const auto& [row, Y] : {std::pair<TermP, std::string>{zero(), "Y"}, {T, "Yp"}}) {
    std::vector<FormulaP> fs;
    fs.push_back(iff(tab.bit(row, i), in(times(i, cs), Y)));
    for (unsigned f = 0; f < sb; ++f)
      fs.push_back(iff(tab.field(row, i, f + 1), in(plus(times(i, cs), num(f + 1)), Y)));
    pins.push_back(alN("c", w, imp(lt(i, w), conj(fs))));
  }
  auto body = conj({pins[0], evolution(tm, tab, T, w), pins[1]});
  return exN("w", len("Y"),
             conj({eq(times(w, cs), len("Y")), eq(len("Yp"), len("Y")), exS("W", tableau_bound(T, w, sb), body)}));
}

bool check_witness(const TM& tm, const PolyBound& p, const std::string& X, const std::string& W) {
  std::size_t P = p(X.size());
  std::size_t need = witness_length(P, P, tm.state_bits());
  if (W.size() < need)
    throw LayoutError("witness has " + std::to_string(W.size()) + " bits, layout needs " + std::to_string(need));
  FiniteSlice s{Nat(need) + 1, W.size() + X.size() + 1};
  Assignment a;
  a.str("X", X).str("W", W);
  return eval(acc_matrix(tm, p), s, a);
}

std::vector<std::size_t> constrained_positions(const TM& tm, const PolyBound& p, std::size_t n) {
  std::size_t P = p(n);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= P; ++j)
    for (std::size_t i = 0; i < P; ++i)
      for (unsigned f = 0; f <= tm.state_bits(); ++f) out.push_back(witness_position(j, i, f));
  return out;
}

}  // namespace forge
