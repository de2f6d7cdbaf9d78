#include "forge/nepo.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

#include "forge/errors.hpp"
#include "forge/seq.hpp"
#include "tableau.hpp"

namespace forge {

Rational Rational::parse(const std::string& text) {
  Rational r;
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    r.num = std::stoull(text.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? text.size() : slash)) throw std::invalid_argument(text);
    r.den = 1;
    if (slash != std::string::npos) {
      r.den = std::stoull(text.substr(slash + 1), &used);
      if (used != text.size() - slash - 1) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw Error("bad rational '" + text + "', expected p/q");
  }
  if (r.den == 0) throw Error("bad rational '" + text + "': zero denominator");
  auto g = std::gcd(r.num, r.den);
  if (g > 1) r.num /= g, r.den /= g;
  return r;
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

Nat ceil_rational_power(const Nat& base, std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error("zero denominator");
  Nat target = boost::multiprecision::pow(base, static_cast<unsigned>(num));
  // binary search on x with x^den >= target
  Nat lo = 0, hi = 1;
  while (boost::multiprecision::pow(hi, static_cast<unsigned>(den)) < target) hi <<= 1;
  while (lo < hi) {
    Nat mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, static_cast<unsigned>(den)) >= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

namespace {

constexpr std::uint64_t kMaxCompBits = 1u << 16;

std::uint64_t small(const Nat& n, const char* what) {
  if (n > Nat(kMaxCompBits)) throw Error(std::string(what) + " is too large for an explicit construction");
  return static_cast<std::uint64_t>(n);
}

Nat ones(std::uint64_t bits) { return pow2(bits) - 1; }

}  // namespace

NepoLayout nepo_layout(const TM& tm, const NepoBounds& b) {
  if (b.m < 1) throw Error("m must be at least 1");
  if (b.k < 1) throw Error("k must be at least 1");
  if (b.eps.num == 0 || b.eps.den == 0) throw Error("eps must be positive");
  if (b.eps.num * b.k > b.eps.den)
    throw Error("eps = " + b.eps.str() + " exceeds 1/k = 1/" + std::to_string(b.k));
  NepoLayout lay;
  lay.L = boost::multiprecision::pow(Nat(b.m), b.k);
  lay.W = small(ceil_rational_power(lay.L, b.eps.num, b.eps.den), "tape width");
  lay.B = small(ceil_rational_power(lay.L, b.eps.den - b.k * b.eps.num, b.k * b.eps.den), "line count");
  lay.T = boost::multiprecision::pow(Nat(b.m), b.c);
  if (b.d) {
    lay.d = *b.d;
  } else if (lay.B >= 2) {
    // top digit may reach B, so depth d covers (B+1)*B^d - 1 steps
    lay.d = 0;
    Nat scale = 1;
    while ((Nat(lay.B) + 1) * scale - 1 < lay.T) scale *= lay.B, ++lay.d;
  } else if (lay.T <= 1) {
    lay.d = 0;
  } else {
    throw Error("one line per level (B = 1) never covers m^c steps; give d explicitly");
  }
  lay.sb = tm.state_bits();
  lay.cw = 1 + lay.sb;
  lay.cfg_bits = lay.W * lay.cw;
  lay.comp_bits = (lay.B + 1) * lay.cfg_bits;
  if (lay.comp_bits > kMaxCompBits) throw Error("computation of " + std::to_string(lay.comp_bits) + " bits is too large");
  lay.cfg_max = ones(lay.cfg_bits);
  lay.comp_max = ones(lay.comp_bits);
  lay.cell_max = ones(lay.cw);
  lay.num_bound = lay.comp_max > lay.T ? lay.comp_max : lay.T;
  if (lay.num_bound < lay.B + 1) lay.num_bound = lay.B + 1;
  return lay;
}

FiniteSlice nepo_slice(const NepoLayout& lay) {
  return FiniteSlice{lay.num_bound, std::max<std::size_t>(lay.W, 64)};
}

std::uint64_t cell_code(const Cell& c) { return c.bit | (std::uint64_t(c.mark) << 1); }

Nat config_to_number(const Configuration& c, unsigned sb) { return rows_to_number({c}, sb); }

Configuration config_from_number(const Nat& n, std::size_t width, unsigned sb) {
  unsigned cw = 1 + sb;
  Configuration c(width);
  for (std::size_t z = 0; z < width; ++z) {
    c[z].bit = bit_test(n, z * cw) ? 1 : 0;
    for (unsigned f = 0; f < sb; ++f)
      if (bit_test(n, z * cw + 1 + f)) c[z].mark |= 1u << f;
  }
  return c;
}

Nat rows_to_number(const std::vector<Configuration>& rows, unsigned sb) {
  unsigned cw = 1 + sb;
  Nat n = 0;
  std::size_t off = 0;
  for (const auto& row : rows)
    for (const auto& cell : row) {
      std::uint64_t code = cell_code(cell);
      for (unsigned f = 0; f < cw; ++f)
        if ((code >> f) & 1) bit_set(n, off + f);
      off += cw;
    }
  return n;
}

std::vector<std::uint64_t> radix_digits(const Nat& i, std::uint64_t B, unsigned d) {
  std::vector<std::uint64_t> r(d + 1, 0);
  Nat rest = i;
  for (unsigned l = 0; l < d; ++l) {
    r[l] = static_cast<std::uint64_t>(rest % B);
    rest /= B;
  }
  if (rest > B) throw Error("step count exceeds the radix range");
  r[d] = static_cast<std::uint64_t>(rest);
  return r;
}

namespace {

struct Builder {
  const TM& tm;
  NepoLayout lay;

  static std::string nm(const char* base, unsigned l) { return base + std::to_string(l); }
  TermP N(const Nat& v) const { return num(v); }

  // bit position of (row, cell, field) in a computation number
  TermP cpos(const TermP& j, const TermP& i, unsigned f) const {
    TermP p = plus(times(j, N(lay.cfg_bits)), times(i, N(lay.cw)));
    return f ? plus(p, N(f)) : p;
  }
  detail::Tab tab(const TermP& comp) const {
    return detail::Tab{[this, comp](const TermP& j, const TermP& i, unsigned f) { return bit(comp, cpos(j, i, f)); },
                       lay.sb};
  }

  // for all t < W*cw: bit(a, ofs_a + t) <-> bit(b, ofs_b + t)
  FormulaP block_eq(const std::string& t, const TermP& a, const TermP& oa, const TermP& b, const TermP& ob) const {
    TermP tv = var(t);
    auto at = [&](const TermP& o) { return o ? plus(o, tv) : tv; };
    return alN(t, N(lay.cfg_bits - 1), iff(bit(a, at(oa)), bit(b, at(ob))));
  }

  // field-wise equality of cell (row p1, cell p2) of comp with the number cell
  FormulaP cell_is(const TermP& comp, const TermP& p1, const TermP& p2, const TermP& cell) const {
    std::vector<FormulaP> fs{leq(cell, N(lay.cell_max))};
    for (unsigned f = 0; f < lay.cw; ++f) fs.push_back(iff(bit(cell, N(f)), bit(comp, cpos(p1, p2, f))));
    return conj(fs);
  }

  // init and transition part of reach^level: comp starts at I and each line
  // follows from the previous one
  FormulaP body(unsigned level, const TermP& I, const TermP& comp) const {
    auto init = block_eq(nm("t", level), comp, nullptr, I, nullptr);
    if (level == 0) return land(init, detail::evolution(tm, tab(comp), N(lay.B), N(lay.W), "0"));
    std::string jr = nm("jr", level), row = nm("row", level), cp = nm("comp", level - 1);
    TermP vj = var(jr), vrow = var(row), vcp = var(cp);
    auto row_eq = block_eq(nm("u", level), vrow, nullptr, comp, times(vj, N(lay.cfg_bits)));
    auto handoff = block_eq(nm("v", level), comp, times(detail::succ(vj), N(lay.cfg_bits)), vcp,
                            N(Nat(lay.B) * lay.cfg_bits));
    auto trans =
        alN(jr, N(lay.B - 1),
            alN(row, N(lay.cfg_max), imp(row_eq, exN(cp, N(lay.comp_max), land(body(level - 1, vrow, vcp), handoff)))));
    return land(init, trans);
  }

  FormulaP reach_body(unsigned level, const TermP& I, const TermP& p1, const TermP& p2, const TermP& cell,
                      const TermP& comp) const {
    auto pick = conj({leq(p1, N(lay.B)), lt(p2, N(lay.W)), cell_is(comp, p1, p2, cell)});
    return land(body(level, I, comp), pick);
  }

  FormulaP Reach(unsigned level, const TermP& I, const TermP& p1, const TermP& p2, const TermP& cell) const {
    std::string c = nm("comp", level);
    return exN(c, N(lay.comp_max), reach_body(level, I, p1, p2, cell, var(c)));
  }

  // cell z of configuration con equals cell
  FormulaP cfg_cell_is(const TermP& con, const TermP& z, const TermP& cell) const {
    std::vector<FormulaP> fs;
    for (unsigned f = 0; f < lay.cw; ++f) {
      TermP p = times(z, N(lay.cw));
      fs.push_back(iff(bit(con, f ? plus(p, N(f)) : p), bit(cell, N(f))));
    }
    return conj(fs);
  }

  FormulaP initial_config(const TermP& x0) const {
    TermP z = var("zi");
    TermP base = times(z, N(lay.cw));
    std::vector<FormulaP> fs{iff(bit(x0, base), in(z, "X"))};
    for (unsigned f = 0; f < lay.sb; ++f) {
      auto b = bit(x0, plus(base, N(f + 1)));
      fs.push_back(imp(eq(z, zero()), f == 0 ? b : lnot(b)));
      fs.push_back(imp(lnot(eq(z, zero())), lnot(b)));
    }
    return alN("zi", N(lay.W - 1), conj(fs));
  }

  // after r_l * B^l steps from prev the configuration is con
  FormulaP link(unsigned level, const TermP& prev, const TermP& con) const {
    std::string z = nm("z", level), c = nm("c", level);
    return alN(z, N(lay.W - 1),
               exN(c, N(lay.cell_max),
                   land(Reach(level, prev, var(nm("r", level)), var(z), var(c)), cfg_cell_is(con, var(z), var(c)))));
  }

  FormulaP chain(unsigned level, const TermP& prev, const TermP& j, const TermP& cell) const {
    if (level == 0) return Reach(0, prev, var("r0"), j, cell);
    std::string con = nm("con", level);
    return exN(con, N(lay.cfg_max), land(link(level, prev, var(con)), chain(level - 1, var(con), j, cell)));
  }

  FormulaP cell_predicate(const TermP& i, const TermP& j, const TermP& cell) const {
    std::vector<TermP> parts;
    Nat scale = 1;
    for (unsigned l = 0; l <= lay.d; ++l) {
      parts.push_back(l == 0 ? var("r0") : times(var(nm("r", l)), N(scale)));
      scale *= lay.B;
    }
    TermP sum = parts[0];
    for (std::size_t l = 1; l < parts.size(); ++l) sum = plus(sum, parts[l]);
    auto inner = land(eq(i, sum), exN("x0", N(lay.cfg_max), land(initial_config(var("x0")), chain(lay.d, var("x0"), j, cell))));
    for (unsigned l = 0; l <= lay.d; ++l)
      inner = exN(nm("r", l), N(l == lay.d ? lay.B : lay.B - 1), inner);
    return inner;
  }
};

void check_level(const NepoLayout& lay, unsigned level) {
  if (level > lay.d)
    throw Error("level " + std::to_string(level) + " exceeds depth d = " + std::to_string(lay.d));
}

}  // namespace

FormulaP compile_reach_body(const TM& tm, const NepoBounds& b, unsigned level) {
  Builder bl{tm, nepo_layout(tm, b)};
  check_level(bl.lay, level);
  return bl.reach_body(level, var("cfg"), var("p1"), var("p2"), var("cell"), var("comp"));
}

FormulaP compile_reach0(const TM& tm, const NepoBounds& b) { return compile_reach_body(tm, b, 0); }

FormulaP compile_Reach(const TM& tm, const NepoBounds& b, unsigned level) {
  Builder bl{tm, nepo_layout(tm, b)};
  check_level(bl.lay, level);
  return bl.Reach(level, var("cfg"), var("p1"), var("p2"), var("cell"));
}

FormulaP compile_cell_predicate(const TM& tm, const NepoBounds& b) {
  Builder bl{tm, nepo_layout(tm, b)};
  return bl.cell_predicate(var("i"), var("j"), var("cell"));
}

FormulaP compile_acceptance_sigma0(const TM& tm, const NepoBounds& b) {
  Builder bl{tm, nepo_layout(tm, b)};
  const auto& lay = bl.lay;
  Nat reach = Nat(lay.B) + 1;
  for (unsigned l = 0; l < lay.d; ++l) reach *= lay.B;
  if (lay.T >= reach)
    throw Error("d = " + std::to_string(lay.d) + " covers fewer than m^c steps");
  std::vector<FormulaP> acc;
  for (unsigned f = 0; f < lay.sb; ++f) {
    auto b2 = bit(var("cell"), num(f + 1));
    acc.push_back(((tm.k >> f) & 1) ? b2 : lnot(b2));
  }
  auto body = land(bl.cell_predicate(num(lay.T), var("j"), var("cell")), conj(acc));
  return land(leq(len("X"), num(lay.W)),
              exN("j", num(lay.W - 1), exN("cell", num(lay.cell_max), body)));
}

std::size_t node_cap() {
  if (const char* s = std::getenv("FORGE_NODE_CAP")) {
    try {
      return std::stoull(s);
    } catch (const std::logic_error&) {
    }
  }
  return 5'000'000;
}

SizeReport size_report(const TM& tm, const NepoBounds& b) {
  auto lay = nepo_layout(tm, b);
  SizeReport r;
  r.cap = node_cap();
  for (unsigned l = 0; l <= lay.d; ++l) r.reach_sizes.push_back(formula_size(compile_Reach(tm, b, l)));
  r.acceptance_size = formula_size(compile_acceptance_sigma0(tm, b));
  r.over_cap = r.acceptance_size > r.cap;
  return r;
}

std::string SizeReport::str() const {
  std::ostringstream os;
  for (std::size_t l = 0; l < reach_sizes.size(); ++l) os << "Reach^" << l << ": " << reach_sizes[l] << " nodes\n";
  os << "acceptance: " << acceptance_size << " nodes";
  if (over_cap) os << "\nwarning: exceeds node cap " << cap;
  return os.str();
}

}  // namespace forge
