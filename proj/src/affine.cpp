#include "troplog/affine.hpp"

#include "troplog/error.hpp"

#include <cctype>

namespace troplog {

namespace {

bool is_symbol_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }
bool is_symbol_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }

class ExprParser {
public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  AffineExpr parse() {
    AffineExpr result;
    skip_space();
    if (at_end()) fail("empty expression");
    bool first = true;
    while (!at_end()) {
      Rational sign(1);
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      result += parse_term() * sign;
      first = false;
      skip_space();
    }
    return result;
  }

private:
  AffineExpr parse_term() {
    if (at_end()) fail("dangling sign");
    if (is_symbol_start(peek())) return AffineExpr::symbol(parse_symbol());
    Rational coeff = parse_number();
    skip_space();
    if (!at_end() && peek() == '*') {
      ++pos_;
      skip_space();
      if (at_end() || !is_symbol_start(peek())) fail("expected symbol after '*'");
      return AffineExpr::symbol(parse_symbol(), coeff);
    }
    return AffineExpr(coeff);
  }

  std::string parse_symbol() {
    const std::size_t start = pos_;
    while (!at_end() && is_symbol_char(peek())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) ++pos_;
    if (start == pos_) fail("expected number or symbol");
    return parse_rational(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                "bad affine expression \"" + std::string(text_) + "\" at offset " +
                    std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AffineExpr AffineExpr::symbol(const std::string& name, Rational coeff) {
  AffineExpr e;
  if (coeff != 0) e.terms_.emplace(name, std::move(coeff));
  return e;
}

AffineExpr AffineExpr::parse(std::string_view text) { return ExprParser(text).parse(); }

Rational AffineExpr::coefficient(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<std::string> AffineExpr::symbols() const {
  std::set<std::string> out;
  for (const auto& [name, _] : terms_) out.insert(name);
  return out;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& other) {
  constant_ += other.constant_;
  for (const auto& [name, coeff] : other.terms_) {
    auto [it, inserted] = terms_.emplace(name, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& other) { return *this += -other; }

AffineExpr& AffineExpr::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
    constant_ = 0;
    return *this;
  }
  constant_ *= factor;
  for (auto& [_, coeff] : terms_) coeff *= factor;
  return *this;
}

AffineExpr AffineExpr::substitute(const std::map<std::string, AffineExpr>& values) const {
  AffineExpr out(constant_);
  for (const auto& [name, coeff] : terms_) {
    auto it = values.find(name);
    if (it == values.end())
      out += symbol(name, coeff);
    else
      out += it->second * coeff;
  }
  return out;
}

Rational AffineExpr::evaluate(const Assignment& point) const {
  Rational total = constant_;
  for (const auto& [name, coeff] : terms_) {
    auto it = point.find(name);
    if (it == point.end()) throw Error(ErrorCode::InvalidInput, "unbound symbol '" + name + "'");
    total += coeff * it->second;
  }
  return total;
}

AffineExpr AffineExpr::rename(const std::map<std::string, std::string>& names) const {
  AffineExpr out(constant_);
  for (const auto& [name, coeff] : terms_) {
    auto it = names.find(name);
    out += symbol(it == names.end() ? name : it->second, coeff);
  }
  return out;
}

std::string AffineExpr::to_string() const {
  std::string out;
  auto append = [&out](const Rational& coeff, const std::string& name) {
    const bool negative = coeff < 0;
    const Rational mag = negative ? Rational(-coeff) : coeff;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (name.empty())
      out += format_rational(mag);
    else if (mag == 1)
      out += name;
    else
      out += format_rational(mag) + "*" + name;
  };
  for (const auto& [name, coeff] : terms_) append(coeff, name);
  if (constant_ != 0 || out.empty()) append(constant_, "");
  return out;
}

}  // namespace troplog
