#include "forge/tm.hpp"

#include <fstream>
#include <sstream>

namespace forge {

const Transition& TM::delta(unsigned q, unsigned b) const {
  if (q < 1 || q > k || b > 1) throw TMError("delta queried outside its domain");
  return table[(q - 1) * 2 + b];
}

unsigned TM::state_bits() const {
  unsigned n = 0;
  for (unsigned v = k; v; v >>= 1) ++n;
  return n;
}

TM parse_tm(const std::string& text, const std::string& name) {
  TM tm;
  tm.name = name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<bool> seen;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto bad = [&](const std::string& msg) { throw TMError("line " + std::to_string(lineno) + ": " + msg); };
    if (first == "states") {
      if (tm.k) bad("duplicate 'states' line");
      long k;
      if (!(ls >> k) || k < 2) bad("expected 'states <k>' with k >= 2");
      tm.k = static_cast<unsigned>(k);
      tm.table.assign(tm.k * 2, Transition{0, 0, 0});
      seen.assign(tm.k * 2, false);
      continue;
    }
    if (!tm.k) bad("transition before 'states' line");
    long q, b, q2, b2, m;
    std::string arrow;
    try {
      q = std::stol(first);
    } catch (...) {
      bad("expected state number");
    }
    if (!(ls >> b >> arrow >> q2 >> b2 >> m) || arrow != "->") bad("expected '<q> <b> -> <q'> <b'> <m>'");
    std::string extra;
    if (ls >> extra) bad("trailing text");
    if (q < 1 || q > long(tm.k) || q2 < 1 || q2 > long(tm.k)) bad("state out of range");
    if (b < 0 || b > 1 || b2 < 0 || b2 > 1) bad("bit out of range");
    if (m < 0 || m > 2) bad("move must be 0, 1 or 2");
    std::size_t idx = (q - 1) * 2 + b;
    Transition t{unsigned(q2), unsigned(b2), unsigned(m)};
    if (seen[idx]) {
      auto& old = tm.table[idx];
      if (old.state != t.state || old.write != t.write || old.move != t.move)
        bad("nondeterministic transition for (" + std::to_string(q) + "," + std::to_string(b) + ")");
    }
    seen[idx] = true;
    tm.table[idx] = t;
  }
  if (!tm.k) throw TMError("missing 'states' line");
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw TMError("transition map not total: missing (" + std::to_string(i / 2 + 1) + "," + std::to_string(i % 2) + ")");
  return tm;
}

TM load_tm(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw TMError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string name = path;
  auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  return parse_tm(ss.str(), name);
}

std::string print_tm(const TM& tm) {
  std::ostringstream o;
  o << "states " << tm.k << "\n";
  for (unsigned q = 1; q <= tm.k; ++q)
    for (unsigned b = 0; b < 2; ++b) {
      auto& t = tm.delta(q, b);
      o << q << " " << b << " -> " << t.state << " " << t.write << " " << t.move << "\n";
    }
  return o.str();
}

TM scan1() {
  return parse_tm(
      "states 2\n"
      "1 0 -> 1 0 2\n"
      "1 1 -> 2 1 0\n"
      "2 0 -> 2 0 0\n"
      "2 1 -> 2 1 0\n",
      "scan1");
}

// state 2 = odd number of ones read so far; ones are erased so that a
// head parked on the clamped last cell does not count them again
TM parity() {
  return parse_tm(
      "states 2\n"
      "1 0 -> 1 0 2\n"
      "1 1 -> 2 0 2\n"
      "2 0 -> 2 0 2\n"
      "2 1 -> 1 0 2\n",
      "parity");
}

// 3 = only zeros so far, 2 = a one was seen (sink)
TM zeros() {
  return parse_tm(
      "states 3\n"
      "1 0 -> 3 0 2\n"
      "1 1 -> 2 1 0\n"
      "2 0 -> 2 0 0\n"
      "2 1 -> 2 1 0\n"
      "3 0 -> 3 0 2\n"
      "3 1 -> 2 1 0\n",
      "zeros");
}

std::vector<TM> corpus_machines() { return {scan1(), parity(), zeros()}; }

Configuration initial_configuration(const std::string& input, std::size_t width) {
  if (width < input.size() || width == 0) throw TMError("tape width smaller than input");
  Configuration c(width);
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i] != '0' && input[i] != '1') throw TMError("input is not a bit string");
    c[i].bit = input[i] == '1';
  }
  c[0].mark = 1;
  return c;
}

std::size_t head_position(const Configuration& c) {
  std::size_t pos = c.size(), n = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].mark) {
      pos = i;
      ++n;
    }
  if (n != 1) throw TMError("configuration must have exactly one head");
  return pos;
}

Configuration step(const TM& tm, const Configuration& c) {
  std::size_t h = head_position(c);
  const Transition& t = tm.delta(c[h].mark, c[h].bit);
  Configuration out = c;
  out[h].bit = t.write;
  out[h].mark = 0;
  std::size_t nh = h;
  if (t.move == Left && h > 0) nh = h - 1;
  if (t.move == Right && h + 1 < c.size()) nh = h + 1;
  out[nh].mark = t.state;
  return out;
}

Tableau run(const TM& tm, const std::string& input, std::size_t steps, std::size_t width) {
  Tableau t;
  t.width = width;
  t.rows.push_back(initial_configuration(input, width));
  for (std::size_t i = 0; i < steps; ++i) t.rows.push_back(step(tm, t.rows.back()));
  return t;
}

std::uint64_t PolyBound::operator()(std::uint64_t n) const {
  std::uint64_t r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * n + coeffs[i];
  return r;
}

TermP PolyBound::as_term(const TermP& n) const {
  TermP r;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    TermP c = num(coeffs[i]);
    if (!r) {
      r = c;
    } else {
      r = plus(times(r, n), c);
    }
  }
  return r ? r : zero();
}

std::string PolyBound::str() const {
  std::string s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) s += (i ? "," : "") + std::to_string(coeffs[i]);
  return s;
}

PolyBound PolyBound::parse(const std::string& text) {
  PolyBound p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw Error("bad polynomial coefficient list '" + text + "'");
    p.coeffs.push_back(std::stoull(item));
  }
  if (p.coeffs.empty()) throw Error("empty polynomial");
  return p;
}

bool accepts(const TM& tm, const std::string& input, const PolyBound& p) {
  std::size_t T = p(input.size());
  if (T == 0) return false;
  auto t = run(tm, input, T, T);
  for (auto& c : t.rows.back())
    if (c.mark == tm.k) return true;
  return false;
}

std::size_t witness_position(std::size_t i, std::size_t j, std::size_t field) {
  auto pr = [](std::size_t x, std::size_t y) { return (x + y) * (x + y + 1) / 2 + y; };
  return pr(pr(i, j), field);
}

std::size_t witness_length(std::size_t last_row, std::size_t width, unsigned state_bits) {
  return witness_position(last_row, width, state_bits) + 1;
}

std::string tableau_to_witness(const Tableau& t, unsigned state_bits) {
  if (t.rows.empty()) return "";
  std::string w(witness_length(t.rows.size() - 1, t.width, state_bits), '0');
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t j = 0; j < t.width; ++j) {
      const Cell& c = t.rows[i][j];
      w[witness_position(i, j, 0)] = c.bit ? '1' : '0';
      for (unsigned f = 0; f < state_bits; ++f)
        w[witness_position(i, j, f + 1)] = ((c.mark >> f) & 1) ? '1' : '0';
    }
  return w;
}

std::vector<std::string> all_inputs(std::size_t max_len) {
  std::vector<std::string> out;
  for (std::size_t n = 0; n <= max_len; ++n)
    for (std::size_t v = 0; v < (std::size_t(1) << n); ++v) {
      std::string s(n, '0');
      for (std::size_t i = 0; i < n; ++i) s[i] = ((v >> i) & 1) ? '1' : '0';
      out.push_back(s);
    }
  return out;
}

}  // namespace forge
