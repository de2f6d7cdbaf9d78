#pragma once
#include <functional>
#include <string>

#include "forge/formula.hpp"
#include "forge/tm.hpp"

namespace forge::detail {

// A tableau viewed through a field accessor: field(row, cell, 0) is the tape
// bit, fields 1..sb the state (lsb first, 0 = head absent).
struct Tab {
  std::function<FormulaP(const TermP&, const TermP&, unsigned)> field;
  unsigned sb;

  FormulaP bit(const TermP& j, const TermP& i) const { return field(j, i, 0); }
  FormulaP state_is(const TermP& j, const TermP& i, unsigned a) const {
    std::vector<FormulaP> lits;
    for (unsigned f = 0; f < sb; ++f) {
      auto b = field(j, i, f + 1);
      lits.push_back(((a >> f) & 1) ? b : lnot(b));
    }
    return conj(lits);
  }
  FormulaP bit_is(const TermP& j, const TermP& i, unsigned v) const { return v ? bit(j, i) : lnot(bit(j, i)); }
  FormulaP head(const TermP& j, const TermP& i, unsigned a, unsigned b) const {
    return land(state_is(j, i, a), bit_is(j, i, b));
  }
};

inline TermP succ(const TermP& t) { return plus(t, one()); }

// transition clauses from row j to row j+1 at cell i, tape width P
inline FormulaP step_clauses(const TM& tm, const Tab& tab, const TermP& j, const TermP& i, const TermP& P) {
  TermP j1 = succ(j), i1 = succ(i);
  std::vector<FormulaP> cl;
  cl.push_back(imp(tab.state_is(j, i, 0), iff(tab.bit(j1, i), tab.bit(j, i))));
  for (unsigned a = 1; a <= tm.k; ++a)
    for (unsigned b = 0; b < 2; ++b) {
      const Transition& d = tm.delta(a, b);
      auto h = tab.head(j, i, a, b);
      cl.push_back(imp(h, tab.bit_is(j1, i, d.write)));
      switch (d.move) {
        case Stay:
          cl.push_back(imp(h, tab.state_is(j1, i, d.state)));
          break;
        case Right:
          cl.push_back(imp(land(h, lt(i1, P)), tab.state_is(j1, i1, d.state)));
          cl.push_back(imp(land(h, eq(i1, P)), tab.state_is(j1, i, d.state)));
          break;
        case Left:
          cl.push_back(imp(land(h, eq(i, zero())), tab.state_is(j1, i, d.state)));
          cl.push_back(imp(land(lt(i1, P), tab.head(j, i1, a, b)), tab.state_is(j1, i, d.state)));
          break;
      }
    }
  return conj(cl);
}

inline FormulaP single_head(const Tab& tab, const TermP& j, const TermP& i, const std::string& ip, const TermP& P) {
  TermP vip = var(ip);
  return alN(ip, P,
             imp(land(lt(vip, P), lnot(eq(i, vip))),
                 imp(lnot(tab.state_is(j, i, 0)), tab.state_is(j, vip, 0))));
}

// rows 0..T, cells 0..w-1; sfx keeps nested copies' binders distinct
inline FormulaP evolution(const TM& tm, const Tab& tab, const TermP& T, const TermP& w,
                          const std::string& sfx = "") {
  std::string jn = "j" + sfx, in_ = "i" + sfx;
  TermP j = var(jn), i = var(in_);
  return alN(jn, T,
             alN(in_, w,
                 imp(lt(i, w),
                     land(single_head(tab, j, i, "ip" + sfx, w),
                          imp(lt(j, T), step_clauses(tm, tab, j, i, w))))));
}

}  // namespace forge::detail
