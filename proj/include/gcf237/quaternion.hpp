#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gcf237/fields.hpp"

namespace gcf237 {

// Generator word for display and CLI I/O, e.g. "g7^2 g2 g7^-2".
struct WordToken {
  int base;  // 2, 3 or 7
  long exp;
  bool operator==(const WordToken&) const = default;
};
using Word = std::vector<WordToken>;

Word normalize_word(const Word& w);
Word invert_word(const Word& w);
std::string word_str(const Word& w);

// Matrix [[z, eta*conj(w)], [w, conj(z)]] over L; the shape is closed under
// multiplication.  Carries the quaternion algebra A = (eta,eta | F).
struct ZWMat {
  LElem z, w;

  static ZWMat identity() { return {LElem(1), LElem()}; }
  LElem a() const { return z; }
  LElem b() const { return LElem::from_F(FElem::eta()) * w.conj(); }
  LElem c() const { return w; }
  LElem d() const { return z.conj(); }

  FElem nrd() const;  // det = z zbar - eta w wbar
  FElem trd() const;  // trace = z + zbar

  ZWMat mul(const ZWMat& o) const;
  ZWMat adjugate() const { return {z.conj(), -w}; }  // inverse when nrd = 1
  bool operator==(const ZWMat& o) const { return z == o.z && w == o.w; }
  bool is_scalar_pm1() const;
};

// Element of Delta(2,3,7) = O^1: a ZWMat with reduced norm 1, optionally
// carrying the generator word that produced it.
class GroupElement {
 public:
  GroupElement() : m_(ZWMat::identity()), word_(Word{}) {}
  GroupElement(ZWMat m, std::optional<Word> word) : m_(std::move(m)), word_(std::move(word)) {}

  static GroupElement identity() { return GroupElement(); }
  // validates nrd = 1
  static GroupElement from_zw(LElem z, LElem w, std::optional<Word> word = std::nullopt);

  const ZWMat& mat() const { return m_; }
  const LElem& z() const { return m_.z; }
  const LElem& w() const { return m_.w; }
  LElem a() const { return m_.a(); }
  LElem b() const { return m_.b(); }
  LElem c() const { return m_.c(); }
  LElem d() const { return m_.d(); }
  FElem nrd() const { return m_.nrd(); }
  FElem trd() const { return m_.trd(); }

  const std::optional<Word>& word() const { return word_; }
  void set_word(std::optional<Word> w) { word_ = std::move(w); }

  GroupElement compose(const GroupElement& o) const;
  GroupElement operator*(const GroupElement& o) const { return compose(o); }
  GroupElement inverse() const;  // throws DomainError when nrd != 1

  bool operator==(const GroupElement& o) const { return m_ == o.m_; }
  bool equal_up_to_sign(const GroupElement& o) const;
  bool is_pm_identity() const { return m_.is_scalar_pm1(); }

 private:
  ZWMat m_;
  std::optional<Word> word_;
};

// Quaternion coordinates in the basis {1, i, j, k} of A = (eta,eta | F),
// i^2 = j^2 = eta, ij = -ji = k.
struct QuatElem {
  FElem x0, x1, x2, x3;

  static QuatElem one() { return {FElem(1), FElem(), FElem(), FElem()}; }
  static QuatElem from_zw(const ZWMat& m);
  ZWMat to_zw() const;  // z = x0 + x2 theta, w = x1 + x3 theta

  QuatElem mul(const QuatElem& o) const;
  QuatElem scale(const FElem& f) const;
  QuatElem operator+(const QuatElem& o) const;
  bool operator==(const QuatElem&) const = default;

  FElem nrd() const;  // x0^2 - eta x1^2 - eta x2^2 + eta^2 x3^2
  FElem trd() const { return FElem(2) * x0; }
};

// Generators: g2 = ij/eta, g3 and g7 the order-3 and order-7 rotations;
// relations g2^2 = g3^3 = g7^7 = -1 and g2 = g7 g3.
const GroupElement& gen_g2();
const GroupElement& gen_g3();
const GroupElement& gen_g7();
GroupElement g7_pow(int k);  // any integer exponent

// A_i = g7^i g2 for a digit i in {+-1, +-2, +-3}; lower-left entry nonzero.
GroupElement digit_matrix(int digit);

// hyperbolic <=> trd^2 > 4 (two distinct real eigenvalues); requires nrd = 1
bool is_hyperbolic(const GroupElement& g);

// Moebius data of the digit maps: g7^i g2 z = a_i - b_i / (c_i + z).
// Holds a_i, b_i, c_i for i in {+-1, +-2, +-3}; computed from digit_matrix
// entries, not hard-coded.
class DigitConstants {
 public:
  const LElem& a(int digit) const { return at(av, digit); }
  const LElem& b(int digit) const { return at(bv, digit); }
  const LElem& c(int digit) const { return at(cv, digit); }

  static const DigitConstants& get();

 private:
  DigitConstants();
  static const LElem& at(const std::array<LElem, 6>& v, int digit);
  std::array<LElem, 6> av, bv, cv;  // index 0..5 <-> digits 1,2,3,-1,-2,-3
};

GroupElement word_to_element(const Word& w);

}  // namespace gcf237
