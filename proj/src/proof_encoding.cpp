#include <cstdint>
#include <string>

#include "forge/errors.hpp"
#include "forge/proof.hpp"

// Layout (version 1), every field self-delimiting:
//   header  4 bits "0001"
//   nat(v)  Elias gamma code of v+1
//   proof   nat(#lines) line*
//   line    side(left) side(right) rule:4 bits msb first [nat(cut index) if cut] nat(#premises) nat(premise)*
//   side    nat(#formulas) formula*
//   formula 3-bit kind: 000 const + 1 bit | 001 var nat(|name|) 8 bits per char nat(index)
//           | 010 not formula | 011 and nat(k) formula^k | 100 or nat(k) formula^k

namespace forge {

namespace {

constexpr unsigned kVersion = 1;

struct Writer {
  std::string out;
  void fixed(std::uint64_t v, int n) {
    for (int i = n - 1; i >= 0; --i) out += ((v >> i) & 1) ? '1' : '0';
  }
  void nat(std::uint64_t v) {
    std::uint64_t g = v + 1;
    int n = 0;
    while ((g >> n) > 1) ++n;
    out.append(n, '0');
    fixed(g, n + 1);
  }
  void formula(const PropP& p) {
    switch (p->kind) {
      case PKind::Const:
        fixed(0, 3);
        fixed(p->value, 1);
        break;
      case PKind::Var:
        fixed(1, 3);
        nat(p->name.size());
        for (unsigned char c : p->name) fixed(c, 8);
        nat(p->index);
        break;
      case PKind::Not:
        fixed(2, 3);
        formula(p->kids[0]);
        break;
      case PKind::And:
      case PKind::Or:
        fixed(p->kind == PKind::And ? 3 : 4, 3);
        nat(p->kids.size());
        for (const auto& c : p->kids) formula(c);
        break;
    }
  }
  void side(const std::vector<PropP>& v) {
    nat(v.size());
    for (const auto& f : v) formula(f);
  }
};

struct Reader {
  const std::string& in;
  std::size_t pos = 0;
  bool bit() {
    if (pos >= in.size()) throw DecodeError("truncated encoding at bit " + std::to_string(pos));
    char c = in[pos++];
    if (c != '0' && c != '1') throw DecodeError("not a bit string");
    return c == '1';
  }
  std::uint64_t fixed(int n) {
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 1) | bit();
    return v;
  }
  std::uint64_t nat() {
    int zeros = 0;
    while (!bit()) {
      if (++zeros > 62) throw DecodeError("number field too long");
    }
    std::uint64_t g = 1;
    for (int i = 0; i < zeros; ++i) g = (g << 1) | bit();
    return g - 1;
  }
  // counts are bounded by what the remaining bits could possibly hold
  std::uint64_t count() {
    std::uint64_t n = nat();
    if (n > in.size() - pos) throw DecodeError("count exceeds remaining input");
    return n;
  }
  PropP formula(int depth) {
    if (depth > 10000) throw DecodeError("formula nested too deeply");
    std::uint64_t kind = fixed(3);
    switch (kind) {
      case 0:
        return pconst(bit());
      case 1: {
        std::uint64_t n = count();
        std::string name;
        for (std::uint64_t i = 0; i < n; ++i) name += static_cast<char>(fixed(8));
        if (name.empty()) throw DecodeError("empty variable name");
        return pvar(name, nat());
      }
      case 2:
        return pnode(PKind::Not, {formula(depth + 1)});
      case 3:
      case 4: {
        PKind k = kind == 3 ? PKind::And : PKind::Or;
        std::uint64_t n = count();
        std::vector<PropP> kids;
        for (std::uint64_t i = 0; i < n; ++i) kids.push_back(formula(depth + 1));
        return pnode(k, std::move(kids));
      }
      default:
        throw DecodeError("unknown formula kind");
    }
  }
  std::vector<PropP> side() {
    std::uint64_t n = count();
    std::vector<PropP> v;
    for (std::uint64_t i = 0; i < n; ++i) v.push_back(formula(0));
    return v;
  }
};

}  // namespace

std::string encode_proof(const Proof& pi) {
  Writer w;
  w.fixed(kVersion, 4);
  w.nat(pi.lines.size());
  for (const auto& ln : pi.lines) {
    w.side(ln.seq.left);
    w.side(ln.seq.right);
    w.fixed(static_cast<unsigned>(ln.tag.rule), 4);
    if (ln.tag.rule == Rule::Cut) w.nat(ln.tag.cut_index);
    w.nat(ln.premises.size());
    for (std::size_t p : ln.premises) w.nat(p);
  }
  return w.out;
}

Proof decode_proof(const std::string& bits) {
  Reader r{bits};
  if (r.fixed(4) != kVersion) throw DecodeError("unsupported encoding version");
  Proof pi;
  std::uint64_t n = r.count();
  for (std::uint64_t i = 0; i < n; ++i) {
    ProofLine ln;
    ln.seq.left = r.side();
    ln.seq.right = r.side();
    std::uint64_t code = r.fixed(4);
    if (code > static_cast<unsigned>(Rule::Cut)) throw DecodeError("unknown rule code");
    ln.tag.rule = static_cast<Rule>(code);
    if (ln.tag.rule == Rule::Cut) ln.tag.cut_index = r.nat();
    std::uint64_t k = r.count();
    for (std::uint64_t j = 0; j < k; ++j) ln.premises.push_back(r.nat());
    pi.lines.push_back(std::move(ln));
  }
  if (r.pos != bits.size()) throw DecodeError("trailing bits after proof");
  return pi;
}

}  // namespace forge
