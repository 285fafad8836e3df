#include "gcf237/quaternion.hpp"

#include <cassert>

namespace gcf237 {

namespace {

// order of -1 * generator^k: g2^2 = g3^3 = g7^7 = -1, so exponents are
// canonical modulo twice the order; we fold the sign away (PSL2 view) and
// keep exponents in a balanced range for display.
long balanced_exp(int base, long e) {
  long n = base;  // 2, 3 or 7
  long r = e % n;
  if (2 * r > n) r -= n;
  if (2 * r < -n) r += n;
  return r;
}

}  // namespace

Word normalize_word(const Word& w) {
  Word cur = w;
  for (;;) {
    Word out;
    for (const auto& t : cur) {
      long e = balanced_exp(t.base, t.exp);
      if (e == 0) continue;
      if (!out.empty() && out.back().base == t.base) {
        out.back().exp = balanced_exp(t.base, out.back().exp + e);
        if (out.back().exp == 0) out.pop_back();
        continue;
      }
      out.push_back({t.base, e});
    }
    if (out == cur) return out;  // each pass merges or is a fixpoint
    cur = std::move(out);
  }
}

Word invert_word(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->base, -it->exp});
  return normalize_word(out);
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& t : w) {
    if (!s.empty()) s += ' ';
    s += "g" + std::to_string(t.base);
    if (t.exp != 1) s += "^" + std::to_string(t.exp);
  }
  return s;
}

FElem ZWMat::nrd() const { return (z * z.conj() - LElem::from_F(FElem::eta()) * w * w.conj()).to_F(); }
FElem ZWMat::trd() const { return z.trace_LF(); }

ZWMat ZWMat::mul(const ZWMat& o) const {
  LElem eta = LElem::from_F(FElem::eta());
  return {z * o.z + eta * w.conj() * o.w, w * o.z + z.conj() * o.w};
}

bool ZWMat::is_scalar_pm1() const {
  if (!w.is_zero()) return false;
  return z == LElem(1) || z == LElem(-1);
}

GroupElement GroupElement::from_zw(LElem z, LElem w, std::optional<Word> word) {
  ZWMat m{std::move(z), std::move(w)};
  if (m.nrd() != FElem(1)) throw DomainError("matrix does not have reduced norm 1");
  return GroupElement(std::move(m), std::move(word));
}

GroupElement GroupElement::compose(const GroupElement& o) const {
  std::optional<Word> w;
  if (word_ && o.word_) {
    Word cat = *word_;
    cat.insert(cat.end(), o.word_->begin(), o.word_->end());
    w = normalize_word(cat);
  }
  return GroupElement(m_.mul(o.m_), std::move(w));
}

GroupElement GroupElement::inverse() const {
  if (m_.nrd() != FElem(1)) throw DomainError("inverse requires reduced norm 1");
  std::optional<Word> w;
  if (word_) w = invert_word(*word_);
  return GroupElement(m_.adjugate(), std::move(w));
}

bool GroupElement::equal_up_to_sign(const GroupElement& o) const {
  if (m_ == o.m_) return true;
  return m_.z == -o.m_.z && m_.w == -o.m_.w;
}

QuatElem QuatElem::from_zw(const ZWMat& m) {
  return {m.z.even_part(), m.w.even_part(), m.z.odd_part(), m.w.odd_part()};
}

ZWMat QuatElem::to_zw() const {
  LElem th = LElem::theta();
  return {LElem::from_F(x0) + LElem::from_F(x2) * th,
          LElem::from_F(x1) + LElem::from_F(x3) * th};
}

QuatElem QuatElem::mul(const QuatElem& o) const {
  FElem eta = FElem::eta();
  FElem eta2 = eta * eta;
  return {x0 * o.x0 + eta * (x1 * o.x1) + eta * (x2 * o.x2) - eta2 * (x3 * o.x3),
          x0 * o.x1 + x1 * o.x0 - eta * (x2 * o.x3) + eta * (x3 * o.x2),
          x0 * o.x2 + x2 * o.x0 + eta * (x1 * o.x3) - eta * (x3 * o.x1),
          x0 * o.x3 + x3 * o.x0 + x1 * o.x2 - x2 * o.x1};
}

QuatElem QuatElem::scale(const FElem& f) const { return {f * x0, f * x1, f * x2, f * x3}; }

QuatElem QuatElem::operator+(const QuatElem& o) const {
  return {x0 + o.x0, x1 + o.x1, x2 + o.x2, x3 + o.x3};
}

FElem QuatElem::nrd() const {
  FElem eta = FElem::eta();
  return x0 * x0 - eta * (x1 * x1) - eta * (x2 * x2) + eta * eta * (x3 * x3);
}

namespace {

GroupElement make_generator(int base) {
  FElem eta = FElem::eta();
  Rat half(1, 2);
  QuatElem q;
  switch (base) {
    case 2:
      // g2 = ij/eta = k/eta
      q = {FElem(), FElem(), FElem(), eta.inv()};
      break;
    case 3:
      // g3 = (1 + (eta^2-2) j + (3-eta^2) ij) / 2
      q = {FElem(half), FElem(), half * (eta * eta - FElem(2)), half * (FElem(3) - eta * eta)};
      break;
    case 7:
      // g7 = (eta^2+eta-1 + (2-eta^2) i + (eta^2+eta-2) ij) / 2
      q = {half * (eta * eta + eta - FElem(1)), half * (FElem(2) - eta * eta), FElem(),
           half * (eta * eta + eta - FElem(2))};
      break;
    default:
      throw DomainError("unknown generator");
  }
  ZWMat m = q.to_zw();
  assert(m.nrd() == FElem(1));
  return GroupElement(m, Word{{base, 1}});
}

}  // namespace

const GroupElement& gen_g2() {
  static const GroupElement g = make_generator(2);
  return g;
}
const GroupElement& gen_g3() {
  static const GroupElement g = make_generator(3);
  return g;
}
const GroupElement& gen_g7() {
  static const GroupElement g = make_generator(7);
  return g;
}

GroupElement g7_pow(int k) {
  static const std::array<GroupElement, 4> pos = [] {
    std::array<GroupElement, 4> p{GroupElement::identity(), gen_g7(), gen_g7() * gen_g7(),
                                  gen_g7() * gen_g7() * gen_g7()};
    return p;
  }();
  static const std::array<GroupElement, 4> neg = [] {
    std::array<GroupElement, 4> n{GroupElement::identity(), pos[1].inverse(), pos[2].inverse(),
                                  pos[3].inverse()};
    return n;
  }();
  if (k >= -3 && k <= 3) return k >= 0 ? pos[size_t(k)] : neg[size_t(-k)];
  GroupElement acc = GroupElement::identity();
  GroupElement step = k > 0 ? gen_g7() : gen_g7().inverse();
  long n = k > 0 ? k : -k;
  for (long t = 0; t < n; ++t) acc = acc * step;
  return acc;
}

GroupElement digit_matrix(int digit) {
  if (digit == 0 || digit < -3 || digit > 3) throw DomainError("digit must be in {+-1,+-2,+-3}");
  GroupElement a = g7_pow(digit) * gen_g2();
  if (a.c().is_zero()) throw DomainError("digit matrix has zero lower-left entry");
  return a;
}

bool is_hyperbolic(const GroupElement& g) {
  FElem t = g.trd();
  return (t * t - FElem(4)).sign() > 0;
}

const LElem& DigitConstants::at(const std::array<LElem, 6>& v, int digit) {
  if (digit == 0 || digit < -3 || digit > 3) throw DomainError("digit must be in {+-1,+-2,+-3}");
  return v[size_t(digit > 0 ? digit - 1 : 2 - digit)];
}

DigitConstants::DigitConstants() {
  for (int digit : {1, 2, 3, -1, -2, -3}) {
    GroupElement A = digit_matrix(digit);
    LElem cinv = A.c().inv();
    size_t k = size_t(digit > 0 ? digit - 1 : 2 - digit);
    av[k] = A.a() * cinv;
    bv[k] = cinv * cinv;
    cv[k] = A.d() * cinv;
  }
}

const DigitConstants& DigitConstants::get() {
  static const DigitConstants dc;
  return dc;
}

GroupElement word_to_element(const Word& w) {
  GroupElement acc = GroupElement::identity();
  for (const auto& t : w) {
    GroupElement g;
    switch (t.base) {
      case 2:
        g = gen_g2();
        break;
      case 3:
        g = gen_g3();
        break;
      case 7:
        g = gen_g7();
        break;
      default:
        throw ParseError("unknown generator g" + std::to_string(t.base));
    }
    long e = t.exp;
    GroupElement step = e >= 0 ? g : g.inverse();
    for (long n = 0; n < (e >= 0 ? e : -e); ++n) acc = acc * step;
  }
  acc.set_word(normalize_word(w));
  return acc;
}

}  // namespace gcf237
