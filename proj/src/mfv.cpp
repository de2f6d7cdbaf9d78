#include "forge/mfv.hpp"

#include "forge/errors.hpp"

namespace forge {

namespace {

bool at(const std::string& s, std::size_t i) { return i < s.size() && s[i] == '1'; }

bool nv(const MonotoneTree& t, const std::string& I, std::size_t i, std::size_t depth,
        NodeValueTrace* tr) {
  if (tr) {
    ++tr->calls;
    if (depth > tr->max_depth) tr->max_depth = depth;
  }
  // I is 0-indexed, so the leaf band is [a, 2a) rather than (a, 2a]
  if (i >= 2 * t.a) return false;
  if (i >= t.a) return at(I, i - t.a);
  if (i >= t.G.size()) return false;
  bool left = nv(t, I, 2 * i, depth + 1, tr);
  bool right = nv(t, I, 2 * i + 1, depth + 1, tr);
  return t.G[i] == '1' ? (left && right) : (left || right);
}

}  // namespace

void validate_tree(const MonotoneTree& t) {
  if (t.a == 0 || (t.a & (t.a - 1)) != 0)
    throw LayoutError("leaf count a must be a power of two, got " + std::to_string(t.a));
  if (t.G.size() != t.a)
    throw LayoutError("gate string must have length a = " + std::to_string(t.a) + ", got " +
                      std::to_string(t.G.size()));
  for (char c : t.G)
    if (c != '0' && c != '1') throw LayoutError("gate string must be over {0,1}");
}

bool node_value(const MonotoneTree& t, const std::string& I, std::size_t i, NodeValueTrace* trace) {
  if (i == 0) throw IndexError("node 0 is not part of the tree; the root is node 1");
  return nv(t, I, i, 1, trace);
}

std::size_t node_value_depth_bound(const MonotoneTree& t) {
  std::size_t n = 2 * t.a + 1, lg = 0;
  while ((std::size_t(1) << lg) < n) ++lg;
  return lg + 1;
}

bool eval_tree_naive(const MonotoneTree& t, const std::string& I, std::size_t i) {
  if (i >= t.a) return at(I, i - t.a);
  bool l = eval_tree_naive(t, I, 2 * i), r = eval_tree_naive(t, I, 2 * i + 1);
  return t.G[i] == '1' ? l && r : l || r;
}

std::string mfv_witness(const MonotoneTree& t, const std::string& I) {
  validate_tree(t);
  if (I.size() != t.a)
    throw LayoutError("input length " + std::to_string(I.size()) + " does not match a = " +
                      std::to_string(t.a));
  std::string Y(2 * t.a, '0');
  Y[0] = '1';
  for (std::size_t x = 1; x < 2 * t.a; ++x) Y[x] = node_value(t, I, x) ? '1' : '0';
  return Y;
}

bool check_mfv(const MonotoneTree& t, const std::string& I, const std::string& Y) {
  for (std::size_t x = 0; x < t.a; ++x) {
    if (at(Y, x + t.a) != at(I, x)) return false;
    if (!at(Y, 0)) return false;
    if (x > 0) {
      bool l = at(Y, 2 * x), r = at(Y, 2 * x + 1);
      bool want = at(t.G, x) ? (l && r) : (l || r);
      if (at(Y, x) != want) return false;
    }
  }
  return true;
}

FormulaP delta_mfv_formula() {
  auto x = var("x");
  auto two_x = plus(x, x);
  auto l = in(two_x, "Y"), r = in(plus(two_x, one()), "Y");
  auto gate = lor(land(in(x, "G"), land(l, r)), land(lnot(in(x, "G")), lor(l, r)));
  auto body = conj({iff(in(plus(x, var("a")), "Y"), in(x, "I")),
                    in(zero(), "Y"),
                    imp(lt(zero(), x), iff(in(x, "Y"), gate))});
  // forall x < a  is  forall x <= a (x < a -> ...)
  return alN("x", var("a"), imp(lt(x, var("a")), body));
}

}  // namespace forge
