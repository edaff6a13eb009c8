// SPDX-License-Identifier: Apache-2.0

#include "improj/poly.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace improj {

using nlohmann::json;

MultiPoly MultiPoly::constant(int nvars, const RatC& c) {
  MultiPoly p(nvars);
  p.add_term(ExpVec(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars)
    throw Error(ErrorCode::Precondition, "variable index out of range");
  MultiPoly p(nvars);
  ExpVec e(nvars, 0);
  e[index] = 1;
  p.add_term(e, RatC(1));
  return p;
}

MultiPoly MultiPoly::monomial(int nvars, ExpVec exp, const RatC& c) {
  MultiPoly p(nvars);
  p.add_term(exp, c);
  return p;
}

std::optional<int> MultiPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  // First term is maximal in graded-lex order.
  return static_cast<int>(exp_total(terms_.begin()->first));
}

int MultiPoly::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

bool MultiPoly::is_real() const {
  for (const auto& [e, c] : terms_)
    if (c.im != 0) return false;
  return true;
}

RatC MultiPoly::constant_term() const { return coeff(ExpVec(nvars_, 0)); }

void MultiPoly::add_term(const ExpVec& exp, const RatC& c) {
  if (static_cast<int>(exp.size()) != nvars_)
    throw Error(ErrorCode::Precondition, "exponent arity mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    terms_.emplace(exp, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

RatC MultiPoly::coeff(const ExpVec& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? RatC() : it->second;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (nvars_ != o.nvars_)
    throw Error(ErrorCode::Precondition, "arity mismatch in +");
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  if (nvars_ != o.nvars_)
    throw Error(ErrorCode::Precondition, "arity mismatch in -");
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (nvars_ != o.nvars_)
    throw Error(ErrorCode::Precondition, "arity mismatch in *");
  MultiPoly r(nvars_);
  ExpVec e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (int j = 0; j < nvars_; ++j) e[j] = ea[j] + eb[j];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(const RatC& c) const {
  MultiPoly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r = constant(nvars_, RatC(1));
  MultiPoly base = *this;
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

MultiPoly MultiPoly::conj() const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.conj());
  return r;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    ExpVec d = e;
    d[var] -= 1;
    r.add_term(d, c * RatC(Rat(e[var])));
  }
  return r;
}

RatC MultiPoly::eval(const std::vector<RatC>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw Error(ErrorCode::Precondition, "point arity mismatch");
  // Power cache per variable.
  std::vector<std::vector<RatC>> pows(nvars_);
  for (int j = 0; j < nvars_; ++j) pows[j].push_back(RatC(1));
  RatC acc;
  for (const auto& [e, c] : terms_) {
    RatC t = c;
    for (int j = 0; j < nvars_; ++j) {
      auto& pj = pows[j];
      while (pj.size() <= e[j]) pj.push_back(pj.back() * point[j]);
      if (e[j]) t *= pj[e[j]];
    }
    acc += t;
  }
  return acc;
}

Rat MultiPoly::eval_real(const std::vector<Rat>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw Error(ErrorCode::Precondition, "point arity mismatch");
  std::vector<std::vector<Rat>> pows(nvars_);
  for (int j = 0; j < nvars_; ++j) pows[j].push_back(Rat(1));
  Rat acc = 0;
  for (const auto& [e, c] : terms_) {
    if (c.im != 0)
      throw Error(ErrorCode::Precondition, "eval_real on non-real polynomial");
    Rat t = c.re;
    for (int j = 0; j < nvars_; ++j) {
      auto& pj = pows[j];
      while (pj.size() <= e[j]) pj.push_back(pj.back() * point[j]);
      if (e[j]) t *= pj[e[j]];
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::subst(const std::vector<MultiPoly>& values) const {
  if (static_cast<int>(values.size()) != nvars_)
    throw Error(ErrorCode::Precondition, "substitution arity mismatch");
  int out_vars = values.empty() ? 1 : values[0].nvars();
  for (const auto& v : values)
    if (v.nvars() != out_vars)
      throw Error(ErrorCode::Precondition, "substitution values arity mismatch");
  std::vector<std::vector<MultiPoly>> pows(nvars_);
  for (int j = 0; j < nvars_; ++j)
    pows[j].push_back(MultiPoly::constant(out_vars, RatC(1)));
  MultiPoly acc(out_vars);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = MultiPoly::constant(out_vars, c);
    for (int j = 0; j < nvars_; ++j) {
      auto& pj = pows[j];
      while (pj.size() <= e[j]) pj.push_back(pj.back() * values[j]);
      if (e[j]) t = t * pj[e[j]];
    }
    acc = acc + t;
  }
  return acc;
}

MultiPoly MultiPoly::subst_var(int var, const MultiPoly& value) const {
  std::vector<MultiPoly> values;
  values.reserve(nvars_);
  for (int j = 0; j < nvars_; ++j)
    values.push_back(j == var ? value : MultiPoly::variable(nvars_, j));
  return subst(values);
}

std::vector<MultiPoly> MultiPoly::coeffs_in(int var) const {
  int d = degree_in(var);
  std::vector<MultiPoly> out(static_cast<size_t>(std::max(d, 0)) + 1,
                             MultiPoly(nvars_));
  for (const auto& [e, c] : terms_) {
    ExpVec rest = e;
    uint32_t k = rest[var];
    rest[var] = 0;
    out[k].add_term(rest, c);
  }
  return out;
}

MultiPoly MultiPoly::from_coeffs_in(int var, int nvars,
                                    const std::vector<MultiPoly>& coeffs) {
  MultiPoly acc(nvars);
  for (size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& [e, c] : coeffs[k].terms()) {
      ExpVec full = e;
      full[var] += static_cast<uint32_t>(k);
      acc.add_term(full, c);
    }
  }
  return acc;
}

MultiPoly MultiPoly::initial_form() const {
  if (terms_.empty())
    throw Error(ErrorCode::Precondition, "initial form of the zero polynomial");
  uint32_t d = exp_total(terms_.begin()->first);
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (exp_total(e) == d) r.terms_.emplace(e, c);
  }
  return r;
}

MultiPoly MultiPoly::widened(int nvars) const {
  if (nvars < nvars_)
    throw Error(ErrorCode::Precondition, "widened cannot drop variables");
  MultiPoly r(nvars);
  for (const auto& [e, c] : terms_) {
    ExpVec w(nvars, 0);
    std::copy(e.begin(), e.end(), w.begin());
    r.terms_.emplace(std::move(w), c);
  }
  return r;
}

MultiPoly MultiPoly::swapped(int va, int vb) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    ExpVec s = e;
    std::swap(s[va], s[vb]);
    r.add_term(s, c);
  }
  return r;
}

namespace {

void append_coeff(std::ostringstream& os, const RatC& c, bool lead,
                  bool has_monomial) {
  // Pure-real and pure-imaginary coefficients print bare; mixed ones print
  // as a parenthesized complex literal, which the parser accepts back.
  std::string body;
  bool negate = false;
  if (c.im == 0) {
    Rat a = c.re;
    if (a < 0) {
      negate = true;
      a = -a;
    }
    if (a == 1 && has_monomial)
      body.clear();
    else
      body = rat_str(a);
  } else if (c.re == 0) {
    Rat b = c.im;
    if (b < 0) {
      negate = true;
      b = -b;
    }
    body = (b == 1) ? "i" : rat_str(b) + "i";
  } else {
    body = "(" + ratc_str(c) + ")";
  }
  if (lead)
    os << (negate ? "-" : "");
  else
    os << (negate ? " - " : " + ");
  if (!body.empty()) {
    os << body;
    if (has_monomial) os << "*";
  }
}

}  // namespace

std::string MultiPoly::str_named(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool lead = true;
  for (const auto& [e, c] : terms_) {
    bool has_monomial = exp_total(e) > 0;
    append_coeff(os, c, lead, has_monomial);
    bool first_var = true;
    for (int j = 0; j < nvars_; ++j) {
      if (e[j] == 0) continue;
      if (!first_var) os << "*";
      os << names[j];
      if (e[j] > 1) os << "^" << e[j];
      first_var = false;
    }
    lead = false;
  }
  return os.str();
}

std::string MultiPoly::str(const std::string& var_prefix) const {
  std::vector<std::string> names;
  names.reserve(nvars_);
  for (int j = 0; j < nvars_; ++j)
    names.push_back(var_prefix + std::to_string(j + 1));
  return str_named(names);
}

std::string MultiPoly::json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : terms_) {
    nlohmann::json t;
    t["exp"] = e;
    t["re"] = rat_str(c.re);
    t["im"] = rat_str(c.im);
    terms.push_back(std::move(t));
  }
  nlohmann::json out;
  out["nvars"] = nvars_;
  out["terms"] = std::move(terms);
  return out.dump();
}

MultiPoly MultiPoly::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  MultiPoly p(j.at("nvars").get<int>());
  for (const auto& t : j.at("terms")) {
    ExpVec e = t.at("exp").get<ExpVec>();
    RatC c(parse_rat(t.at("re").get<std::string>()),
           parse_rat(t.at("im").get<std::string>()));
    p.add_term(e, c);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
  enum Kind { Number, ImagNumber, ImagUnit, Var, Plus, Minus, Star, Caret,
              LParen, RParen, End } kind;
  size_t pos = 0;
  Rat value;      // Number / ImagNumber
  int var = 0;    // Var (0-based)
};

class Lexer {
 public:
  Lexer(const std::string& text, int nvars) : text_(text), nvars_(nvars) {
    next();
  }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    next();
    return t;
  }

 private:
  [[noreturn]] void fail(size_t pos, const std::string& msg) {
    throw Error(ErrorCode::Syntax,
                "syntax error at offset " + std::to_string(pos) + ": " + msg);
  }

  void next() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_])))
      ++i_;
    tok_.pos = i_;
    if (i_ >= text_.size()) {
      tok_.kind = Token::End;
      return;
    }
    char c = text_[i_];
    switch (c) {
      case '+': tok_.kind = Token::Plus; ++i_; return;
      case '-': tok_.kind = Token::Minus; ++i_; return;
      case '*': tok_.kind = Token::Star; ++i_; return;
      case '^': tok_.kind = Token::Caret; ++i_; return;
      case '(': tok_.kind = Token::LParen; ++i_; return;
      case ')': tok_.kind = Token::RParen; ++i_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_])))
        ++i_;
      std::string num = text_.substr(start, i_ - start);
      if (i_ < text_.size() && text_[i_] == '/') {
        size_t slash = i_++;
        size_t dstart = i_;
        while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_])))
          ++i_;
        if (dstart == i_) fail(slash + 1, "expected denominator digits");
        num += "/" + text_.substr(dstart, i_ - dstart);
      }
      if (i_ < text_.size() && text_[i_] == '.')
        fail(i_, "decimal literals are not accepted; use p/q");
      tok_.value = parse_rat(num);
      if (i_ < text_.size() && text_[i_] == 'i') {
        ++i_;
        tok_.kind = Token::ImagNumber;
      } else {
        tok_.kind = Token::Number;
      }
      return;
    }
    if (c == 'i') {
      ++i_;
      tok_.kind = Token::ImagUnit;
      return;
    }
    if (c == 'z' || c == 'x' || c == 'y') {
      size_t start = i_++;
      size_t dstart = i_;
      while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_])))
        ++i_;
      if (dstart == i_) fail(start + 1, "expected variable index");
      long idx = std::stol(text_.substr(dstart, i_ - dstart));
      if (idx < 1 || idx > nvars_)
        fail(start, "variable index out of range (nvars=" +
                        std::to_string(nvars_) + ")");
      tok_.kind = Token::Var;
      tok_.var = static_cast<int>(idx - 1);
      return;
    }
    fail(i_, std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  int nvars_;
  size_t i_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, int nvars)
      : lex_(text, nvars), nvars_(nvars) {}

  MultiPoly run() {
    MultiPoly p = expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::End) fail(t.pos, "trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(size_t pos, const std::string& msg) {
    throw Error(ErrorCode::Syntax,
                "syntax error at offset " + std::to_string(pos) + ": " + msg);
  }

  MultiPoly expr() {
    bool neg = false;
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      if (lex_.take().kind == Token::Minus) neg = !neg;
    }
    MultiPoly acc = term();
    if (neg) acc = -acc;
    while (true) {
      Token::Kind k = lex_.peek().kind;
      if (k == Token::Plus || k == Token::Minus) {
        lex_.take();
        MultiPoly t = term();
        acc = (k == Token::Plus) ? acc + t : acc - t;
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (lex_.peek().kind == Token::Star) {
      lex_.take();
      acc = acc * factor();
    }
    return acc;
  }

  MultiPoly factor() {
    bool neg = false;
    while (lex_.peek().kind == Token::Minus) {
      lex_.take();
      neg = !neg;
    }
    MultiPoly base = atom();
    while (lex_.peek().kind == Token::Caret) {
      size_t cpos = lex_.take().pos;
      const Token& e = lex_.peek();
      if (e.kind != Token::Number || e.value.get_den() != 1 || e.value < 0)
        fail(e.kind == Token::End ? cpos + 1 : e.pos,
             "exponent must be a non-negative integer literal");
      unsigned long k = lex_.take().value.get_num().get_ui();
      base = base.pow(static_cast<unsigned>(k));
    }
    return neg ? -base : base;
  }

  MultiPoly atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Number:
        return MultiPoly::constant(nvars_, RatC(t.value));
      case Token::ImagNumber:
        return MultiPoly::constant(nvars_, RatC(Rat(0), t.value));
      case Token::ImagUnit:
        return MultiPoly::constant(nvars_, imag_unit());
      case Token::Var:
        return MultiPoly::variable(nvars_, t.var);
      case Token::LParen: {
        MultiPoly inner = expr();
        const Token& close = lex_.peek();
        if (close.kind != Token::RParen) fail(close.pos, "expected ')'");
        lex_.take();
        return inner;
      }
      default:
        fail(t.pos, "expected a term");
    }
  }

  Lexer lex_;
  int nvars_;
};

}  // namespace

MultiPoly parse_poly(const std::string& text, int nvars) {
  if (nvars < 1) throw Error(ErrorCode::Precondition, "nvars must be >= 1");
  return Parser(text, nvars).run();
}

RealSplit split_real_imag(const MultiPoly& p) {
  int n = p.nvars();
  // z_j -> x_j + i y_j over 2n real variables.
  std::vector<MultiPoly> repl;
  repl.reserve(n);
  for (int j = 0; j < n; ++j) {
    MultiPoly xj = MultiPoly::variable(2 * n, j);
    MultiPoly yj = MultiPoly::variable(2 * n, n + j).scaled(imag_unit());
    repl.push_back(xj + yj);
  }
  MultiPoly full = p.subst(repl);
  RealSplit out{MultiPoly(2 * n), MultiPoly(2 * n)};
  for (const auto& [e, c] : full.terms()) {
    if (c.re != 0) out.p_re.add_term(e, RatC(c.re));
    if (c.im != 0) out.p_im.add_term(e, RatC(c.im));
  }
  return out;
}

BinaryForm BinaryForm::from_poly(const MultiPoly& p) {
  if (p.nvars() != 2)
    throw Error(ErrorCode::Precondition, "binary form needs nvars=2");
  if (p.is_zero()) throw Error(ErrorCode::Precondition, "zero binary form");
  int d = *p.degree();
  BinaryForm f;
  f.degree = d;
  f.coeffs.assign(d + 1, RatC());
  for (const auto& [e, c] : p.terms()) {
    if (static_cast<int>(e[0] + e[1]) != d)
      throw Error(ErrorCode::Precondition, "binary form must be homogeneous");
    f.coeffs[e[1]] = c;
  }
  return f;
}

MultiPoly BinaryForm::to_poly() const {
  MultiPoly p(2);
  for (int j = 0; j <= degree; ++j) {
    if (coeffs[j].is_zero()) continue;
    ExpVec e = {static_cast<uint32_t>(degree - j), static_cast<uint32_t>(j)};
    p.add_term(e, coeffs[j]);
  }
  return p;
}

bool BinaryForm::is_zero() const {
  for (const auto& c : coeffs)
    if (!c.is_zero()) return false;
  return true;
}

BinaryForm initial_binary_form(const MultiPoly& p) {
  return BinaryForm::from_poly(p.initial_form());
}

}  // namespace improj
