#include "k3cover/multipoly.hpp"

#include <cinttypes>
#include <cstdio>

namespace k3cover {

namespace {

std::string coeff_str(const Rational& c) { return c.str(); }

std::string coeff_str(const CD& c) {
  char buf[96];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", c.real());
  } else {
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
  }
  return buf;
}

bool coeff_is_unit(const Rational& c) { return c == 1; }
bool coeff_is_unit(const CD& c) { return c == CD(1.0, 0.0); }
bool coeff_sign_negative(const Rational& c) { return c < 0; }
bool coeff_sign_negative(const CD& c) { return c.imag() == 0.0 && c.real() < 0; }

std::string monomial_str(const Expo& e) {
  std::string s;
  for (size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!s.empty()) s += "*";
    s += "X" + std::to_string(v);
    if (e[v] > 1) s += "^" + std::to_string(e[v]);
  }
  return s;
}

}  // namespace

template <class C>
std::string MultiPoly<C>::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Descending graded-lex, the canonical report order.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mon = monomial_str(e);
    bool neg = coeff_sign_negative(c);
    C mag = neg ? C(-c) : c;
    std::string piece;
    if (mon.empty()) {
      piece = coeff_str(mag);
    } else if (coeff_is_unit(mag)) {
      piece = mon;
    } else {
      piece = coeff_str(mag) + "*" + mon;
    }
    if (out.empty()) {
      out = neg ? "-" + piece : piece;
    } else {
      out += neg ? " - " : " + ";
      out += piece;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Kind { Number, Var, Plus, Minus, Star, Caret, LParen, RParen, End } kind;
  size_t pos;
  Rational number;   // Number
  unsigned var = 0;  // Var
};

class Lexer {
 public:
  Lexer(const std::string& text, unsigned arity) : s_(text), arity_(arity) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= s_.size()) {
      tok_.kind = Token::End;
      return;
    }
    char c = s_[i_];
    switch (c) {
      case '+': tok_.kind = Token::Plus; ++i_; return;
      case '-': tok_.kind = Token::Minus; ++i_; return;
      case '*': tok_.kind = Token::Star; ++i_; return;
      case '^': tok_.kind = Token::Caret; ++i_; return;
      case '(': tok_.kind = Token::LParen; ++i_; return;
      case ')': tok_.kind = Token::RParen; ++i_; return;
      default: break;
    }
    if (c == 'X' || c == 'x') {
      size_t start = i_++;
      size_t d0 = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (d0 == i_) throw ParseError("expected variable index after 'X'", start);
      unsigned idx = static_cast<unsigned>(std::stoul(s_.substr(d0, i_ - d0)));
      if (idx >= arity_)
        throw ParseError("variable index " + std::to_string(idx) + " >= arity " +
                             std::to_string(arity_),
                         start);
      tok_.kind = Token::Var;
      tok_.var = idx;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      BigInt num(s_.substr(start, i_ - start));
      BigInt den(1);
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        size_t dstart = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (dstart == i_) throw ParseError("expected denominator digits", i_);
        den = BigInt(s_.substr(dstart, i_ - dstart));
        if (den == 0) throw ParseError("zero denominator", dstart);
      }
      tok_.kind = Token::Number;
      tok_.number = Rational(num, den);
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

  const std::string& s_;
  unsigned arity_;
  size_t i_ = 0;
  Token tok_;
};

template <class C>
class Parser {
 public:
  Parser(const std::string& text, unsigned arity) : lex_(text, arity), arity_(arity) {}

  MultiPoly<C> run() {
    MultiPoly<C> p = expr();
    if (lex_.peek().kind != Token::End)
      throw ParseError("trailing input", lex_.peek().pos);
    return p;
  }

 private:
  MultiPoly<C> expr() {
    bool neg = false;
    if (lex_.peek().kind == Token::Plus) lex_.take();
    else if (lex_.peek().kind == Token::Minus) { lex_.take(); neg = true; }
    MultiPoly<C> acc = term();
    if (neg) acc = -acc;
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      bool minus = lex_.take().kind == Token::Minus;
      MultiPoly<C> t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  MultiPoly<C> term() {
    MultiPoly<C> acc = factor();
    while (lex_.peek().kind == Token::Star) {
      lex_.take();
      acc = acc * factor();
    }
    return acc;
  }

  MultiPoly<C> factor() {
    MultiPoly<C> base = atom();
    if (lex_.peek().kind == Token::Caret) {
      size_t cpos = lex_.take().pos;
      Token t = lex_.take();
      if (t.kind != Token::Number || denominator(t.number) != 1 || t.number < 0)
        throw ParseError("exponent must be a nonnegative integer", cpos);
      base = base.pow(numerator(t.number).template convert_to<unsigned>());
    }
    return base;
  }

  MultiPoly<C> atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Number:
        return MultiPoly<C>::constant(arity_, detail::coeff_from_rational(t.number, static_cast<C*>(nullptr)));
      case Token::Var:
        return MultiPoly<C>::variable(arity_, t.var);
      case Token::LParen: {
        MultiPoly<C> p = expr();
        if (lex_.peek().kind != Token::RParen)
          throw ParseError("expected ')'", lex_.peek().pos);
        lex_.take();
        return p;
      }
      case Token::Minus:
        return -atom();
      default:
        throw ParseError("expected number, variable or '('", t.pos);
    }
  }

  Lexer lex_;
  unsigned arity_;
};

}  // namespace

template <class C>
MultiPoly<C> parse_poly(const std::string& text, unsigned arity) {
  return Parser<C>(text, arity).run();
}

// ---------------------------------------------------------------------------
// Determinant of a polynomial matrix: Laplace along columns, minors memoized
// on the surviving-row mask.
// ---------------------------------------------------------------------------

template <class C>
static MultiPoly<C> det_rec(const std::vector<std::vector<MultiPoly<C>>>& m, unsigned arity,
                            std::uint32_t mask, std::map<std::uint32_t, MultiPoly<C>>& memo) {
  if (mask == 0) return MultiPoly<C>::constant(arity, C(1));
  auto hit = memo.find(mask);
  if (hit != memo.end()) return hit->second;
  const int n = static_cast<int>(m.size());
  const int col = n - __builtin_popcount(mask);
  MultiPoly<C> acc(arity);
  int parity = 0;
  for (int r = 0; r < n; ++r) {
    if (!(mask & (1u << r))) continue;
    const MultiPoly<C>& entry = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
    if (!entry.is_zero()) {
      MultiPoly<C> minor = det_rec(m, arity, mask & ~(1u << r), memo);
      MultiPoly<C> contrib = entry * minor;
      acc = (parity % 2 == 0) ? acc + contrib : acc - contrib;
    }
    ++parity;
  }
  memo.emplace(mask, acc);
  return acc;
}

template <class C>
MultiPoly<C> poly_determinant(const std::vector<std::vector<MultiPoly<C>>>& m) {
  const size_t n = m.size();
  if (n == 0) throw InputError("empty matrix");
  if (n > 31) throw InputError("polynomial determinant: matrix too large");
  unsigned arity = m[0][0].arity();
  std::map<std::uint32_t, MultiPoly<C>> memo;
  return det_rec(m, arity, (n == 31 ? 0x7FFFFFFFu : (1u << n) - 1u), memo);
}

template <class C>
MultiPoly<C> resultant(const MultiPoly<C>& p, const MultiPoly<C>& q, unsigned var) {
  if (p.is_zero() || q.is_zero()) throw InputError("resultant of zero polynomial");
  if (var >= p.arity()) throw InputError("resultant variable out of range");
  const int dp = p.degree_in(var), dq = q.degree_in(var);
  if (dp < 1 || dq < 1) throw InputError("resultant: both inputs need positive degree in the variable");
  auto a = p.coefficients_in(var);  // a[k] multiplies var^k
  auto b = q.coefficients_in(var);
  const int n = dp + dq;
  const unsigned arity = p.arity();
  std::vector<std::vector<MultiPoly<C>>> syl(
      static_cast<size_t>(n), std::vector<MultiPoly<C>>(static_cast<size_t>(n), MultiPoly<C>(arity)));
  // p-rows first (sign convention), descending coefficients shifted right.
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) syl[static_cast<size_t>(r)][static_cast<size_t>(r + k)] = a[static_cast<size_t>(dp - k)];
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k)
      syl[static_cast<size_t>(dq + r)][static_cast<size_t>(r + k)] = b[static_cast<size_t>(dq - k)];
  return poly_determinant(syl);
}

template PolyQ parse_poly<Rational>(const std::string&, unsigned);
template PolyC parse_poly<CD>(const std::string&, unsigned);
template std::string MultiPoly<Rational>::str() const;
template std::string MultiPoly<CD>::str() const;
template PolyQ poly_determinant<Rational>(const std::vector<std::vector<PolyQ>>&);
template PolyC poly_determinant<CD>(const std::vector<std::vector<PolyC>>&);
template PolyQ resultant<Rational>(const PolyQ&, const PolyQ&, unsigned);
template PolyC resultant<CD>(const PolyC&, const PolyC&, unsigned);

}  // namespace k3cover
