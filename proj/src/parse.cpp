#include "gcf237/parse.hpp"

#include <cctype>
#include <sstream>

#include "gcf237/engine.hpp"

namespace gcf237 {

namespace {

struct Token {
  enum class Kind { Number, Decimal, Ident, Op, End };
  Kind kind;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ >= s_.size()) {
      tok_ = {Token::Kind::End, ""};
      return;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      bool decimal = false;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
        if (s_[pos_] == '.') {
          if (decimal) throw ParseError("malformed number");
          decimal = true;
        }
        ++pos_;
      }
      tok_ = {decimal ? Token::Kind::Decimal : Token::Kind::Number,
              s_.substr(start, pos_ - start)};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      tok_ = {Token::Kind::Ident, s_.substr(start, pos_ - start)};
      return;
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      tok_ = {Token::Kind::Op, std::string(1, c)};
      ++pos_;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "' in expression");
  }

  const std::string& s_;
  size_t pos_ = 0;
  Token tok_;
};

// value that is exact until e/pi/decimal forces numeric mode
struct DualValue {
  bool numeric = false;
  QuadVal q;
  NumericPtr n;

  static DualValue exact(QuadVal v) { return {false, std::move(v), nullptr}; }
  static DualValue num(NumericPtr p) { return {true, QuadVal(), std::move(p)}; }
  NumericPtr as_numeric() const { return numeric ? n : NumericExpr::exact(q); }
};

DualValue combine(NumericExpr::Op op, const DualValue& a, const DualValue& b) {
  if (!a.numeric && !b.numeric) {
    switch (op) {
      case NumericExpr::Op::Add:
        return DualValue::exact(a.q + b.q);
      case NumericExpr::Op::Sub:
        return DualValue::exact(a.q - b.q);
      case NumericExpr::Op::Mul:
        return DualValue::exact(a.q * b.q);
      case NumericExpr::Op::Div:
        return DualValue::exact(a.q * b.q.inv());
      default:
        throw std::logic_error("bad op");
    }
  }
  return DualValue::num(NumericExpr::binary(op, a.as_numeric(), b.as_numeric()));
}

class Parser {
 public:
  Parser(const std::string& text, const FElem* d_context)
      : lex_(text), d_(d_context) {}

  DualValue parse() {
    DualValue v = expr();
    if (lex_.peek().kind != Token::Kind::End) throw ParseError("trailing input in expression");
    return v;
  }

 private:
  DualValue expr() {
    DualValue v = term();
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::Op && (t.text == "+" || t.text == "-")) {
        std::string op = lex_.next().text;
        DualValue rhs = term();
        v = combine(op == "+" ? NumericExpr::Op::Add : NumericExpr::Op::Sub, v, rhs);
        continue;
      }
      return v;
    }
  }

  DualValue term() {
    DualValue v = factor();
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::Op && (t.text == "*" || t.text == "/")) {
        std::string op = lex_.next().text;
        DualValue rhs = factor();
        try {
          v = combine(op == "*" ? NumericExpr::Op::Mul : NumericExpr::Op::Div, v, rhs);
        } catch (const DomainError& e) {
          throw ParseError(e.what());
        }
        continue;
      }
      return v;
    }
  }

  DualValue factor() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Op && t.text == "-") {
      lex_.next();
      DualValue v = factor();
      if (!v.numeric) return DualValue::exact(-v.q);
      return DualValue::num(NumericExpr::neg(v.n));
    }
    DualValue base = atom();
    if (lex_.peek().kind == Token::Kind::Op && lex_.peek().text == "^") {
      lex_.next();
      long e = exponent();
      if (!base.numeric) {
        QuadVal acc = QuadVal(LElem(1));
        QuadVal b = e < 0 ? base.q.inv() : base.q;
        long n = e < 0 ? -e : e;
        for (long k = 0; k < n; ++k) acc = acc * b;
        return DualValue::exact(acc);
      }
      return DualValue::num(NumericExpr::pow(base.n, e));
    }
    return base;
  }

  long exponent() {
    bool neg = false;
    if (lex_.peek().kind == Token::Kind::Op &&
        (lex_.peek().text == "-" || lex_.peek().text == "+")) {
      neg = lex_.next().text == "-";
    }
    Token t = lex_.next();
    if (t.kind != Token::Kind::Number) throw ParseError("integer exponent expected after ^");
    long v = std::stol(t.text);
    return neg ? -v : v;
  }

  DualValue atom() {
    Token t = lex_.next();
    switch (t.kind) {
      case Token::Kind::Number:
        return DualValue::exact(QuadVal(LElem(Rat(t.text))));
      case Token::Kind::Decimal: {
        // 12.345 -> 12345/1000, exact rational, but flags numeric mode
        std::string digits;
        long frac = 0;
        bool seen_dot = false;
        for (char c : t.text) {
          if (c == '.') {
            seen_dot = true;
            continue;
          }
          digits += c;
          if (seen_dot) ++frac;
        }
        Rat r(Int(digits), Int(1));
        for (long k = 0; k < frac; ++k) r /= 10;
        r.canonicalize();
        return DualValue::num(NumericExpr::exact(QuadVal(LElem(r))));
      }
      case Token::Kind::Ident:
        if (t.text == "eta") return DualValue::exact(QuadVal(LElem::from_F(FElem::eta())));
        if (t.text == "theta") return DualValue::exact(QuadVal(LElem::theta()));
        if (t.text == "sqrtD") {
          if (!d_) throw ParseError("sqrtD used without a quadratic context (--z/--w)");
          return DualValue::exact(QuadVal(LElem(), LElem(1), *d_));
        }
        if (t.text == "e") return DualValue::num(NumericExpr::constant_e());
        if (t.text == "pi") return DualValue::num(NumericExpr::constant_pi());
        throw ParseError("unknown identifier '" + t.text + "'");
      case Token::Kind::Op:
        if (t.text == "(") {
          DualValue v = expr();
          Token close = lex_.next();
          if (close.kind != Token::Kind::Op || close.text != ")")
            throw ParseError("missing closing parenthesis");
          return v;
        }
        throw ParseError("unexpected operator '" + t.text + "'");
      case Token::Kind::End:
        throw ParseError("unexpected end of expression");
    }
    throw std::logic_error("unreachable");
  }

  Lexer lex_;
  const FElem* d_;
};

}  // namespace

BoundaryPoint ParsedValue::to_boundary_point() const {
  if (is_infinity) return BoundaryPoint::infinity();
  if (is_numeric) return BoundaryPoint::numeric(num);
  return BoundaryPoint::exact(exact);
}

ParsedValue parse_expression(const std::string& text, const FElem* d_context) {
  {
    // bare infinity marker
    std::string trimmed;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed == "inf" || trimmed == "oo") {
      ParsedValue v;
      v.is_infinity = true;
      return v;
    }
  }
  DualValue v = Parser(text, d_context).parse();
  ParsedValue out;
  out.is_numeric = v.numeric;
  if (v.numeric)
    out.num = v.n;
  else
    out.exact = v.q;
  return out;
}

Word parse_word(const std::string& text) {
  Word w;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos < text.size() && text.compare(pos, 1, "1") == 0 && pos + 1 == text.size())
    return w;  // identity word
  while (pos < text.size()) {
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] != 'g') throw ParseError("generator token expected (g2, g3 or g7)");
    ++pos;
    if (pos >= text.size() || (text[pos] != '2' && text[pos] != '3' && text[pos] != '7'))
      throw ParseError("generator must be g2, g3 or g7");
    int base = text[pos] - '0';
    ++pos;
    long exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      bool neg = false;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        neg = text[pos] == '-';
        ++pos;
      }
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        throw ParseError("integer exponent expected after ^");
      long v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        v = 10 * v + (text[pos++] - '0');
      exp = neg ? -v : v;
    }
    w.push_back({base, exp});
  }
  return normalize_word(w);
}

std::string format(const Rat& q) { return rat_str(q); }

namespace {

// polynomial rendering over a named variable
std::string format_poly(const Rat* coef, int n, const std::string& var) {
  std::string out;
  for (int k = 0; k < n; ++k) {
    const Rat& c = coef[k];
    if (c == 0) continue;
    Rat a = c > 0 ? c : Rat(-c);
    std::string term;
    if (k == 0) {
      term = rat_str(a);
    } else {
      std::string v = var + (k == 1 ? "" : "^" + std::to_string(k));
      term = (a == 1) ? v : rat_str(a) + "*" + v;
    }
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string wrap_if_sum(const std::string& s) {
  // parenthesize unless the string is a single atom/product
  bool top_level_pm = false;
  for (size_t k = 1; k < s.size(); ++k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] == ' ') top_level_pm = true;
  if (!top_level_pm) return s;
  return "(" + s + ")";
}

}  // namespace

std::string format(const FElem& x) { return format_poly(x.c.data(), 3, "eta"); }

std::string format(const LElem& x) {
  FElem ev = x.even_part(), od = x.odd_part();
  std::string e = format(ev);
  if (od.is_zero()) return e;
  std::string o = wrap_if_sum(format(od)) + "*theta";
  if (od == FElem(1)) o = "theta";
  if (od == FElem(-1)) o = "-theta";
  if (ev.is_zero()) return o;
  if (!o.empty() && o[0] == '-') return e + " - " + o.substr(1);
  return e + " + " + o;
}

std::string format_quad(const QuadVal& x) {
  std::string u = format(x.u());
  if (x.v().is_zero()) return u;
  std::string vpart = wrap_if_sum(format(x.v())) + "*sqrtD";
  if (x.v() == LElem(1)) vpart = "sqrtD";
  if (x.v() == LElem(-1)) vpart = "-sqrtD";
  if (x.u().is_zero()) return vpart;
  if (vpart[0] == '-') return u + " - " + vpart.substr(1);
  return u + " + " + vpart;
}

std::string render_cf_text(const std::vector<int>& digits, long depth) {
  const DigitConstants& dc = DigitConstants::get();
  long n = std::min<long>(depth, long(digits.size()));
  if (n == 0) return "";

  // alternating (1,-1): simplified pattern with leading term and repeated
  // numerator/denominator (u = b_1/4 doubled once at the top, v = -(c_1 + a_{-1})/2)
  bool alternating = digits.size() >= 2;
  for (size_t k = 0; k < digits.size() && alternating; ++k)
    alternating = digits[k] == (k % 2 == 0 ? 1 : -1);
  if (alternating) {
    Rat q(1, 4);
    LElem u = q * dc.b(1);
    LElem v = Rat(-1, 2) * (dc.c(1) + dc.a(-1));
    std::ostringstream os;
    os << format(dc.a(1)) << " + 2*(" << format(u) << ") / (" << format(v) << " + ("
       << format(u) << ") / (" << format(v) << " + ... (periodic)))";
    return os.str();
  }

  std::string tail = "...";
  for (long k = n - 1; k >= 0; --k) {
    int d = digits[size_t(k)];
    std::ostringstream os;
    os << "(" << format(dc.a(d)) << ") - (" << format(dc.b(d)) << ") / ((" << format(dc.c(d))
       << ") + " << tail << ")";
    tail = os.str();
  }
  return tail;
}

}  // namespace gcf237
