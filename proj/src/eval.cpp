#include "forge/eval.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <unordered_map>

#include "forge/seq.hpp"

namespace forge {

namespace {

constexpr int8_t kUnknown = -1;

enum Truth : int8_t { F = 0, T = 1, U = 2 };

struct Res {
  Truth v = F;
  int slot = -1;        // for U: variable whose bit is needed
  std::size_t bit = 0;
  int8_t hint = -1;     // preferred value for that bit, if known
};

Res mk(bool b) { return Res{b ? T : F}; }
Res unknown(int slot, std::size_t bit, int8_t hint = -1) { return Res{U, slot, bit, hint}; }

struct TVal {
  enum State : uint8_t { Small, Big, Unk } st = Small;
  uint64_t v = 0;
  std::unique_ptr<Nat> big;
  int slot = -1;
  std::size_t bit = 0;
  Nat as_nat() const { return st == Big ? *big : Nat(v); }
};

TVal tv_nat(const Nat& n) {
  TVal r;
  if (n <= std::numeric_limits<uint64_t>::max()) {
    r.v = static_cast<uint64_t>(n);
  } else {
    r.st = TVal::Big;
    r.big = std::make_unique<Nat>(n);
  }
  return r;
}

struct TN {
  TermKind k;
  uint64_t v = 0;
  bool big = false;
  Nat bv;
  int slot = -1;
  int a = -1, b = -1;
};

struct FN {
  FKind k;
  int s = -1, t = -1;  // terms
  int x = -1, y = -1;  // slots
  int f = -1, g = -1;  // children
  // quantifiers
  bool len_ref = false;
  bool witness_form = false;   // body is (A and B) for exists, (A imp B) for forall
  std::vector<int> afree;      // free slots of A and of the bound, minus x
};

struct Slot {
  std::string name;
  bool is_string = false;
  bool bound = false;
  bool partial = false;  // number held as a bit vector
  uint64_t small = 0;
  bool isbig = false;
  Nat big;
  std::vector<int8_t> bits;
  std::size_t len = 0;
  std::size_t unknown = 0;
  std::size_t scan = 0;  // no unknown bit below this index
};

}  // namespace

struct Evaluator::Impl {
  FiniteSlice slice;
  EvalOptions opt;
  EvalStats st;
  std::vector<TN> terms;
  std::vector<FN> nodes;
  std::vector<Slot> slots;
  std::map<std::string, int> free_slots;
  int root = -1;

  struct WitnessList {
    bool aborted = false;
    std::vector<std::vector<int8_t>> values;  // bit vectors (numbers lsb-first, strings by position)
    std::vector<std::size_t> lens;
  };
  std::unordered_map<std::string, WitnessList> wcache;

  // ---------- compilation ----------
  std::vector<std::pair<std::string, int>> scope;

  int slot_for(const std::string& name, bool is_string) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return it->second;
    auto f = free_slots.find(name);
    if (f != free_slots.end()) return f->second;
    int id = static_cast<int>(slots.size());
    slots.push_back(Slot{});
    slots.back().name = name;
    slots.back().is_string = is_string;
    free_slots[name] = id;
    return id;
  }

  int cterm(const TermP& t, std::set<int>& fv) {
    TN n;
    n.k = t->kind;
    switch (t->kind) {
      case TermKind::Num:
        if (t->value <= std::numeric_limits<uint64_t>::max()) {
          n.v = static_cast<uint64_t>(t->value);
        } else {
          n.big = true;
          n.bv = t->value;
        }
        break;
      case TermKind::Var:
        n.slot = slot_for(t->name, false);
        fv.insert(n.slot);
        break;
      case TermKind::Len:
        n.slot = slot_for(t->name, true);
        fv.insert(n.slot);
        break;
      default:
        n.a = cterm(t->a, fv);
        n.b = cterm(t->b, fv);
    }
    terms.push_back(std::move(n));
    return static_cast<int>(terms.size()) - 1;
  }

  int cform(const FormulaP& f, std::set<int>& fv) {
    FN n;
    n.k = f->kind;
    switch (f->kind) {
      case FKind::Eq: case FKind::Leq: case FKind::Bit:
        n.s = cterm(f->s, fv);
        n.t = cterm(f->t, fv);
        break;
      case FKind::In:
        n.s = cterm(f->s, fv);
        n.x = slot_for(f->x, true);
        fv.insert(n.x);
        break;
      case FKind::SetEq:
        n.x = slot_for(f->x, true);
        n.y = slot_for(f->y, true);
        fv.insert(n.x);
        fv.insert(n.y);
        break;
      case FKind::Not:
        n.f = cform(f->f, fv);
        break;
      case FKind::And: case FKind::Or: case FKind::Imp:
        n.f = cform(f->f, fv);
        n.g = cform(f->g, fv);
        break;
      default: {
        bool is_str = f->kind == FKind::ExS || f->kind == FKind::AlS;
        std::set<int> bfv;
        n.s = cterm(f->s, bfv);
        int id = static_cast<int>(slots.size());
        slots.push_back(Slot{});
        slots.back().name = f->x;
        slots.back().is_string = is_str;
        n.x = id;
        scope.emplace_back(f->x, id);
        std::set<int> body_fv;
        const FormulaP& body = f->f;
        bool ex = f->kind == FKind::ExN || f->kind == FKind::ExS;
        if ((ex && body->kind == FKind::And) || (!ex && body->kind == FKind::Imp)) {
          n.witness_form = true;
          std::set<int> afv, bfv2;
          FN bn;
          bn.k = body->kind;
          bn.f = cform(body->f, afv);
          bn.g = cform(body->g, bfv2);
          nodes.push_back(std::move(bn));
          n.f = static_cast<int>(nodes.size()) - 1;
          afv.erase(id);
          afv.insert(bfv.begin(), bfv.end());
          n.afree.assign(afv.begin(), afv.end());
          body_fv.insert(afv.begin(), afv.end());
          body_fv.insert(bfv2.begin(), bfv2.end());
        } else {
          n.f = cform(body, body_fv);
        }
        scope.pop_back();
        body_fv.erase(id);
        fv.insert(body_fv.begin(), body_fv.end());
        fv.insert(bfv.begin(), bfv.end());
        if (is_str) n.len_ref = string_len_referenced(body, f->x);
      }
    }
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  // ---------- values ----------
  void set_small(int id, uint64_t v) {
    Slot& s = slots[id];
    s.bound = true;
    s.partial = false;
    s.isbig = false;
    s.small = v;
  }

  static Nat bits_value(const Slot& s) {
    Nat r = 0;
    for (std::size_t i = s.len; i-- > 0;) {
      r <<= 1;
      if (s.bits[i] == 1) r |= 1;
    }
    return r;
  }

  std::size_t first_unknown(Slot& s) {
    while (s.scan < s.len && s.bits[s.scan] != kUnknown) ++s.scan;
    return s.scan;
  }

  void set_bit(Slot& s, std::size_t i, int8_t v) {
    s.bits[i] = v;
    --s.unknown;
  }
  void clear_bit(Slot& s, std::size_t i) {
    s.bits[i] = kUnknown;
    ++s.unknown;
    if (i < s.scan) s.scan = i;
  }

  TVal teval(int ti) {
    const TN& n = terms[ti];
    switch (n.k) {
      case TermKind::Num: {
        TVal r;
        if (n.big) {
          r.st = TVal::Big;
          r.big = std::make_unique<Nat>(n.bv);
        } else {
          r.v = n.v;
        }
        return r;
      }
      case TermKind::Var: {
        Slot& s = slots[n.slot];
        if (!s.bound) throw UnboundVariable("unbound variable '" + s.name + "'");
        TVal r;
        if (!s.partial) {
          if (s.isbig) {
            r.st = TVal::Big;
            r.big = std::make_unique<Nat>(s.big);
          } else {
            r.v = s.small;
          }
          return r;
        }
        if (s.unknown) {
          r.st = TVal::Unk;
          r.slot = n.slot;
          r.bit = first_unknown(s);
          return r;
        }
        if (s.len <= 64) {
          uint64_t v = 0;
          for (std::size_t i = s.len; i-- > 0;) v = (v << 1) | (s.bits[i] == 1 ? 1u : 0u);
          r.v = v;
          return r;
        }
        return tv_nat(bits_value(s));
      }
      case TermKind::Len: {
        Slot& s = slots[n.slot];
        if (!s.bound) throw UnboundVariable("unbound variable '" + s.name + "'");
        TVal r;
        r.v = s.len;
        return r;
      }
      default: {
        TVal a = teval(n.a);
        if (a.st == TVal::Unk) return a;
        TVal b = teval(n.b);
        if (b.st == TVal::Unk) return b;
        if (a.st == TVal::Small && b.st == TVal::Small) {
          uint64_t r;
          bool ovf = false;
          if (n.k == TermKind::Plus) {
            ovf = __builtin_add_overflow(a.v, b.v, &r);
          } else if (n.k == TermKind::Times) {
            ovf = __builtin_mul_overflow(a.v, b.v, &r);
          } else {
            uint64_t s;
            unsigned __int128 p;
            ovf = __builtin_add_overflow(a.v, b.v, &s);
            if (!ovf) {
              p = static_cast<unsigned __int128>(s) * (s + 1) / 2 + b.v;
              if (p > std::numeric_limits<uint64_t>::max()) {
                ovf = true;
              } else {
                r = static_cast<uint64_t>(p);
              }
            }
          }
          if (!ovf) {
            TVal out;
            out.v = r;
            return out;
          }
        }
        Nat x = a.as_nat(), y = b.as_nat();
        if (n.k == TermKind::Plus) return tv_nat(x + y);
        if (n.k == TermKind::Times) return tv_nat(x * y);
        return tv_nat(pair(x, y));
      }
    }
  }

  static int cmp(const TVal& a, const TVal& b) {
    if (a.st == TVal::Small && b.st == TVal::Small) return a.v < b.v ? -1 : (a.v > b.v ? 1 : 0);
    Nat x = a.as_nat(), y = b.as_nat();
    return x < y ? -1 : (x > y ? 1 : 0);
  }

  static bool tbit(const TVal& a, const TVal& i) {
    if (i.st != TVal::Small) return false;
    if (a.st == TVal::Small) return i.v < 64 && ((a.v >> i.v) & 1);
    return boost::multiprecision::bit_test(*a.big, static_cast<unsigned>(i.v));
  }

  // partial var on one side, known value on the other
  Res eq_partial(int slot, const TVal& other) {
    Slot& s = slots[slot];
    if (other.st == TVal::Small && s.len > 64) {
      for (std::size_t i = 64; i < s.len; ++i)
        if (s.bits[i] == 1) return mk(false);
    }
    Nat ov = other.as_nat();
    if (bit_length(ov) > s.len) return mk(false);
    std::size_t first = s.len;
    int8_t hint = -1;
    for (std::size_t i = 0; i < s.len; ++i) {
      bool ob = other.st == TVal::Small ? (i < 64 && ((other.v >> i) & 1))
                                        : boost::multiprecision::bit_test(ov, static_cast<unsigned>(i));
      if (s.bits[i] == kUnknown) {
        if (first == s.len) {
          first = i;
          hint = ob ? 1 : 0;
        }
      } else if ((s.bits[i] == 1) != ob) {
        return mk(false);
      }
    }
    if (first == s.len) return mk(true);
    return unknown(slot, first, hint);
  }

  bool partial_var(int ti) const {
    const TN& n = terms[ti];
    return n.k == TermKind::Var && slots[n.slot].partial && slots[n.slot].unknown;
  }

  Res eval(int ni) {
    const FN& n = nodes[ni];
    switch (n.k) {
      case FKind::Eq: {
        ++st.atoms;
        if (partial_var(n.s) || partial_var(n.t)) {
          int pv = partial_var(n.s) ? n.s : n.t;
          int ot = pv == n.s ? n.t : n.s;
          if (!partial_var(ot)) {
            TVal o = teval(ot);
            if (o.st == TVal::Unk) return unknown(o.slot, o.bit);
            return eq_partial(terms[pv].slot, o);
          }
        }
        TVal a = teval(n.s);
        if (a.st == TVal::Unk) return unknown(a.slot, a.bit);
        TVal b = teval(n.t);
        if (b.st == TVal::Unk) return unknown(b.slot, b.bit);
        return mk(cmp(a, b) == 0);
      }
      case FKind::Leq: {
        ++st.atoms;
        TVal a = teval(n.s);
        if (a.st == TVal::Unk) return unknown(a.slot, a.bit);
        TVal b = teval(n.t);
        if (b.st == TVal::Unk) return unknown(b.slot, b.bit);
        return mk(cmp(a, b) <= 0);
      }
      case FKind::Bit: {
        ++st.atoms;
        TVal i = teval(n.t);
        if (i.st == TVal::Unk) return unknown(i.slot, i.bit);
        const TN& sv = terms[n.s];
        if (sv.k == TermKind::Var && slots[sv.slot].partial) {
          Slot& s = slots[sv.slot];
          if (i.st != TVal::Small || i.v >= s.len) return mk(false);
          int8_t b = s.bits[i.v];
          if (b == kUnknown) return unknown(sv.slot, i.v);
          return mk(b == 1);
        }
        TVal a = teval(n.s);
        if (a.st == TVal::Unk) return unknown(a.slot, a.bit);
        return mk(tbit(a, i));
      }
      case FKind::In: {
        ++st.atoms;
        TVal i = teval(n.s);
        if (i.st == TVal::Unk) return unknown(i.slot, i.bit);
        Slot& s = slots[n.x];
        if (!s.bound) throw UnboundVariable("unbound variable '" + s.name + "'");
        if (i.st != TVal::Small || i.v >= s.len) return mk(false);
        int8_t b = s.bits[i.v];
        if (b == kUnknown) return unknown(n.x, i.v);
        return mk(b == 1);
      }
      case FKind::SetEq: {
        ++st.atoms;
        Slot& a = slots[n.x];
        Slot& b = slots[n.y];
        if (!a.bound) throw UnboundVariable("unbound variable '" + a.name + "'");
        if (!b.bound) throw UnboundVariable("unbound variable '" + b.name + "'");
        if (a.len != b.len) return mk(false);
        Res pending{T};
        for (std::size_t i = 0; i < a.len; ++i) {
          int8_t x = a.bits[i], y = b.bits[i];
          if (x != kUnknown && y != kUnknown) {
            if (x != y) return mk(false);
          } else if (pending.v == T) {
            pending = x == kUnknown ? unknown(n.x, i, y) : unknown(n.y, i, x);
          }
        }
        return pending;
      }
      case FKind::Not: {
        Res r = eval(n.f);
        if (r.v != U) r.v = r.v == T ? F : T;
        return r;
      }
      case FKind::And: {
        Res r = eval(n.f);
        if (r.v != T) return r;
        return eval(n.g);
      }
      case FKind::Or: {
        Res r = eval(n.f);
        if (r.v != F) return r;
        return eval(n.g);
      }
      case FKind::Imp: {
        Res r = eval(n.f);
        if (r.v == F) return mk(true);
        if (r.v == U) return r;
        return eval(n.g);
      }
      default:
        return quant(ni);
    }
  }

  // ---------- quantifiers ----------
  // binder slots are private to their quantifier node, so leaving the
  // quantifier only has to mark the slot unbound again
  struct SlotGuard {
    Slot& s;
    explicit SlotGuard(Slot& sl) : s(sl) {}
    ~SlotGuard() { s.bound = false; }
  };

  bool slot_known(const Slot& s) const {
    if (!s.bound) return false;
    if (!s.is_string && !s.partial) return true;
    return s.unknown == 0;
  }

  void key_append(std::string& key, const Slot& s) {
    auto put64 = [&](uint64_t w) { key.append(reinterpret_cast<const char*>(&w), 8); };
    if (s.is_string) {
      put64(s.len);
      uint64_t w = 0;
      for (std::size_t i = 0; i < s.len; ++i) {
        if (s.bits[i] == 1) w |= uint64_t(1) << (i % 64);
        if (i % 64 == 63) { put64(w); w = 0; }
      }
      if (s.len % 64) put64(w);
      return;
    }
    // numbers canonical: little-endian words without trailing zero words
    std::vector<uint64_t> words;
    if (!s.partial) {
      if (s.isbig) {
        Nat v = s.big;
        while (v > 0) {
          words.push_back(static_cast<uint64_t>(v & std::numeric_limits<uint64_t>::max()));
          v >>= 64;
        }
      } else if (s.small) {
        words.push_back(s.small);
      }
    } else {
      for (std::size_t i = 0; i < s.len; ++i) {
        if (i % 64 == 0) words.push_back(0);
        if (s.bits[i] == 1) words.back() |= uint64_t(1) << (i % 64);
      }
      while (!words.empty() && words.back() == 0) words.pop_back();
    }
    put64(words.size());
    for (auto w : words) put64(w);
  }

  void bind_partial(Slot& s, std::size_t len) {
    s.bound = true;
    s.partial = !s.is_string;
    s.isbig = false;
    s.len = len;
    s.bits.assign(len, kUnknown);
    s.unknown = len;
    s.scan = 0;
  }

  // smallest completion <= bound?
  bool min_fits(const Slot& s, const Nat& bound, bool bound_all_ones) {
    if (bound_all_ones) return true;
    Nat v = 0;
    for (std::size_t i = s.len; i-- > 0;) {
      v <<= 1;
      if (s.bits[i] == 1) v |= 1;
    }
    return v <= bound;
  }

  Res dfs(int body, int xs, Truth want, const Nat& bound, bool all_ones) {
    Slot& s = slots[xs];
    Res r = eval(body);
    if (r.v == want) {
      if (s.is_string || min_fits(s, bound, all_ones)) return mk(want == T);
      return mk(want != T);
    }
    if (r.v != U) return r;
    if (r.slot != xs) return r;
    std::size_t i = r.bit;
    int8_t first = r.hint == 1 ? 1 : 0;
    for (int8_t v : {first, int8_t(1 - first)}) {
      ++st.branches;
      set_bit(s, i, v);
      if (!s.is_string && !min_fits(s, bound, all_ones)) {
        clear_bit(s, i);
        continue;
      }
      Res sub = dfs(body, xs, want, bound, all_ones);
      clear_bit(s, i);
      if (sub.v == want) return sub;
      if (sub.v == U) return sub;
    }
    return mk(want != T);
  }

  // collects all complete witnesses of A; false on abort
  bool collect(int a, int xs, const Nat& bound, bool all_ones, WitnessList& out) {
    Slot& s = slots[xs];
    Res r = eval(a);
    if (r.v == F) return true;
    if (r.v == T) {
      if (s.unknown) return false;
      if (!s.is_string && !min_fits(s, bound, all_ones)) return true;
      if (out.values.size() >= opt.witness_cap) return false;
      out.values.push_back(s.bits);
      out.lens.push_back(s.len);
      return true;
    }
    if (r.slot != xs) return false;
    for (int8_t v : {int8_t(0), int8_t(1)}) {
      set_bit(s, r.bit, v);
      bool ok = true;
      if (s.is_string || min_fits(s, bound, all_ones)) ok = collect(a, xs, bound, all_ones, out);
      clear_bit(s, r.bit);
      if (!ok) return false;
    }
    return true;
  }

  void check_bound(const FN& n, const Nat& B) {
    bool is_str = n.k == FKind::ExS || n.k == FKind::AlS;
    if (is_str) {
      if (B > slice.strWidth)
        throw SliceExceeded("string bound " + B.str() + " exceeds slice width " + std::to_string(slice.strWidth));
    } else if (B > slice.numBound) {
      throw SliceExceeded("number bound " + B.str() + " exceeds slice bound " + slice.numBound.str());
    }
  }

  Res quant(int ni) {
    const FN& n = nodes[ni];
    TVal bv = teval(n.s);
    if (bv.st == TVal::Unk) return unknown(bv.slot, bv.bit);
    Nat B = bv.as_nat();
    check_bound(n, B);
    bool ex = n.k == FKind::ExN || n.k == FKind::ExS;
    bool is_str = n.k == FKind::ExS || n.k == FKind::AlS;
    Truth want = ex ? T : F;
    Slot& s = slots[n.x];
    SlotGuard guard(s);

    std::size_t nbits = is_str ? 0 : bit_length(B);
    bool all_ones = !is_str && B == pow2(nbits) - 1;
    bool big_domain = !is_str && (B >= opt.enumerate_below);

    if (n.witness_form && opt.witness_cache) {
      bool known = true;
      for (int id : n.afree)
        if (!slot_known(slots[id])) {
          known = false;
          break;
        }
      if (known) {
        std::string key(reinterpret_cast<const char*>(&ni), sizeof ni);
        for (int id : n.afree) key_append(key, slots[id]);
        auto it = wcache.find(key);
        if (it == wcache.end()) {
          ++st.witness_builds;
          WitnessList wl;
          const FN& body = nodes[n.f];
          bool ok = true;
          if (is_str) {
            std::size_t Lmax = static_cast<std::size_t>(B);
            std::size_t Lmin = n.len_ref ? 0 : Lmax;
            for (std::size_t L = Lmin; ok && L <= Lmax; ++L) {
              bind_partial(s, L);
              ok = collect(body.f, n.x, B, true, wl);
            }
          } else if (big_domain) {
            bind_partial(s, nbits);
            ok = collect(body.f, n.x, B, all_ones, wl);
          } else {
            uint64_t Bs = static_cast<uint64_t>(B);
            for (uint64_t v = 0; ok && v <= Bs; ++v) {
              set_small(n.x, v);
              Res r = eval(body.f);
              if (r.v == U) {
                ok = false;
              } else if (r.v == T) {
                if (wl.values.size() >= opt.witness_cap) {
                  ok = false;
                } else {
                  std::vector<int8_t> bits(64);
                  for (int i = 0; i < 64; ++i) bits[i] = (v >> i) & 1;
                  wl.values.push_back(std::move(bits));
                  wl.lens.push_back(64);
                }
              }
            }
          }
          if (!ok) {
            ++st.witness_aborts;
            wl.aborted = true;
            wl.values.clear();
            wl.lens.clear();
          }
          it = wcache.emplace(std::move(key), std::move(wl)).first;
        } else {
          ++st.witness_hits;
        }
        const WitnessList& wl = it->second;
        if (!wl.aborted) {
          const FN& body = nodes[n.f];
          for (std::size_t w = 0; w < wl.values.size(); ++w) {
            s.bound = true;
            s.partial = !is_str;
            s.isbig = false;
            s.bits = wl.values[w];
            s.len = wl.lens[w];
            s.unknown = 0;
            s.scan = s.len;
            Res r = eval(body.g);
            if (r.v == U) return r;
            if (r.v == want) return mk(ex);
          }
          return mk(!ex);
        }
      }
    }

    if (is_str) {
      std::size_t Lmax = static_cast<std::size_t>(B);
      std::size_t Lmin = n.len_ref ? 0 : Lmax;
      for (std::size_t L = Lmin; L <= Lmax; ++L) {
        bind_partial(s, L);
        Res r = dfs(n.f, n.x, want, B, true);
        if (r.v == U || r.v == want) return r;
      }
      return mk(!ex);
    }
    if (big_domain) {
      bind_partial(s, nbits);
      return dfs(n.f, n.x, want, B, all_ones);
    }
    uint64_t Bs = static_cast<uint64_t>(B);
    for (uint64_t v = 0; v <= Bs; ++v) {
      set_small(n.x, v);
      Res r = eval(n.f);
      if (r.v == U || r.v == want) return r;
    }
    return mk(!ex);
  }
};

Evaluator::Evaluator(const FormulaP& f, const FiniteSlice& s, const EvalOptions& opt)
    : impl_(std::make_unique<Impl>()) {
  impl_->slice = s;
  impl_->opt = opt;
  std::set<int> fv;
  impl_->root = impl_->cform(f, fv);
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;

const EvalStats& Evaluator::stats() const { return impl_->st; }

bool Evaluator::operator()(const Assignment& env) {
  auto& I = *impl_;
  for (auto& sl : I.slots) {
    sl.bound = false;
  }
  for (auto& [name, v] : env.nums) {
    if (is_string_var(name)) throw SortError("'" + name + "' is a string variable bound to a number");
    auto it = I.free_slots.find(name);
    if (it == I.free_slots.end()) continue;
    Slot& s = I.slots[it->second];
    if (s.is_string) throw SortError("'" + name + "' used as a string");
    s.bound = true;
    s.partial = false;
    if (v <= std::numeric_limits<uint64_t>::max()) {
      s.isbig = false;
      s.small = static_cast<uint64_t>(v);
    } else {
      s.isbig = true;
      s.big = v;
    }
  }
  for (auto& [name, v] : env.strs) {
    if (!is_string_var(name)) throw SortError("'" + name + "' is a number variable bound to a string");
    if (v.size() > I.slice.strWidth)
      throw SliceExceeded("string '" + name + "' longer than slice width");
    auto it = I.free_slots.find(name);
    if (it == I.free_slots.end()) continue;
    Slot& s = I.slots[it->second];
    s.bound = true;
    s.partial = false;
    s.len = v.size();
    s.bits.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != '0' && v[i] != '1') throw Error("string '" + name + "' is not a bit string");
      s.bits[i] = v[i] == '1';
    }
    s.unknown = 0;
    s.scan = v.size();
  }
  for (auto& [name, id] : I.free_slots)
    if (!I.slots[id].bound) throw UnboundVariable("unbound variable '" + name + "'");
  Res r = I.eval(I.root);
  if (r.v == U) throw Error("internal: evaluation left undetermined");
  return r.v == T;
}

bool eval(const FormulaP& f, const FiniteSlice& s, const Assignment& env) {
  Evaluator e(f, s);
  return e(env);
}

}  // namespace forge

namespace forge {

namespace {

struct Naive {
  const FiniteSlice& slice;
  std::map<std::string, Nat> nums;
  std::map<std::string, std::string> strs;

  Nat term(const TermP& t) {
    switch (t->kind) {
      case TermKind::Num: return t->value;
      case TermKind::Var: {
        auto it = nums.find(t->name);
        if (it == nums.end()) throw UnboundVariable("unbound variable '" + t->name + "'");
        return it->second;
      }
      case TermKind::Len: return Nat(str(t->name).size());
      case TermKind::Plus: return term(t->a) + term(t->b);
      case TermKind::Times: return term(t->a) * term(t->b);
      case TermKind::Pair: return pair(term(t->a), term(t->b));
    }
    return 0;
  }

  const std::string& str(const std::string& X) {
    auto it = strs.find(X);
    if (it == strs.end()) throw UnboundVariable("unbound variable '" + X + "'");
    return it->second;
  }

  bool run(const FormulaP& f) {
    switch (f->kind) {
      case FKind::Eq: return term(f->s) == term(f->t);
      case FKind::Leq: return term(f->s) <= term(f->t);
      case FKind::Bit: {
        Nat v = term(f->s), i = term(f->t);
        if (i > 1u << 20) return false;
        return boost::multiprecision::bit_test(v, static_cast<unsigned>(i));
      }
      case FKind::In: {
        Nat i = term(f->s);
        const std::string& X = str(f->x);
        return i < X.size() && X[static_cast<std::size_t>(i)] == '1';
      }
      case FKind::SetEq: return str(f->x) == str(f->y);
      case FKind::Not: return !run(f->f);
      case FKind::And: return run(f->f) && run(f->g);
      case FKind::Or: return run(f->f) || run(f->g);
      case FKind::Imp: return !run(f->f) || run(f->g);
      case FKind::ExN: case FKind::AlN: {
        Nat B = term(f->s);
        if (B > slice.numBound) throw SliceExceeded("number bound exceeds slice");
        bool ex = f->kind == FKind::ExN;
        auto saved = nums.find(f->x) != nums.end() ? std::optional<Nat>(nums[f->x]) : std::nullopt;
        bool result = !ex;
        for (Nat v = 0; v <= B; ++v) {
          nums[f->x] = v;
          if (run(f->f) == ex) {
            result = ex;
            break;
          }
        }
        if (saved) nums[f->x] = *saved; else nums.erase(f->x);
        return result;
      }
      default: {
        Nat Bn = term(f->s);
        if (Bn > slice.strWidth) throw SliceExceeded("string bound exceeds slice");
        std::size_t B = static_cast<std::size_t>(Bn);
        bool ex = f->kind == FKind::ExS;
        auto saved = strs.find(f->x) != strs.end() ? std::optional<std::string>(strs[f->x]) : std::nullopt;
        bool result = !ex;
        for (std::size_t L = 0; L <= B && result != ex; ++L) {
          if (L >= 63) throw SliceExceeded("naive string enumeration too large");
          for (uint64_t v = 0; v < (uint64_t(1) << L); ++v) {
            std::string s(L, '0');
            for (std::size_t i = 0; i < L; ++i) s[i] = ((v >> i) & 1) ? '1' : '0';
            strs[f->x] = s;
            if (run(f->f) == ex) {
              result = ex;
              break;
            }
          }
        }
        if (saved) strs[f->x] = *saved; else strs.erase(f->x);
        return result;
      }
    }
  }
};

}  // namespace

bool eval_naive(const FormulaP& f, const FiniteSlice& s, const Assignment& env) {
  Naive n{s, env.nums, env.strs};
  for (auto& [k, v] : env.strs)
    if (v.size() > s.strWidth) throw SliceExceeded("string '" + k + "' longer than slice width");
  for (auto& name : free_vars(f)) {
    if (is_string_var(name) ? !env.strs.count(name) : !env.nums.count(name))
      throw UnboundVariable("unbound variable '" + name + "'");
  }
  return n.run(f);
}

std::string comprehension_witness(const FormulaP& phi, std::uint64_t y, const FiniteSlice& s,
                                  const Assignment& env, const std::string& z) {
  if (classify(phi).i != 0) throw ClassError("comprehension needs a formula without string quantifiers");
  std::string var = z;
  if (var.empty()) {
    for (auto& n : free_vars(phi))
      if (!is_string_var(n) && !env.nums.count(n)) {
        if (!var.empty()) throw Error("more than one free number variable; name the comprehension variable");
        var = n;
      }
    if (var.empty()) var = "z";
  }
  Evaluator ev(phi, s);
  Assignment a = env;
  std::string out(y, '0');
  for (std::uint64_t i = 0; i < y; ++i) {
    a.nums[var] = i;
    out[i] = ev(a) ? '1' : '0';
  }
  return out;
}

}  // namespace forge
