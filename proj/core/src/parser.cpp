#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "stlmask/formula.hpp"

namespace stlmask {
namespace {

enum class Tok {
  True,
  Ident,
  Number,
  Not,
  And,
  Or,
  Globally,
  Finally,
  Until,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Cmp,
  End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const auto line = line_;
      const auto col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      const char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string word;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          word += advance();
        }
        Tok kind = Tok::Ident;
        if (word == "TRUE") kind = Tok::True;
        else if (word == "G") kind = Tok::Globally;
        else if (word == "F") kind = Tok::Finally;
        else if (word == "U") kind = Tok::Until;
        out.push_back({kind, std::move(word), line, col});
      } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' ||
                 ((ch == '-' || ch == '+') && pos_ + 1 < src_.size() &&
                  (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '.'))) {
        out.push_back({Tok::Number, lex_number(), line, col});
      } else if (ch == '>' || ch == '<') {
        std::string op(1, advance());
        if (pos_ < src_.size() && src_[pos_] == '=') op += advance();
        out.push_back({Tok::Cmp, std::move(op), line, col});
      } else {
        Tok kind;
        switch (ch) {
          case '~': kind = Tok::Not; break;
          case '&': kind = Tok::And; break;
          case '|': kind = Tok::Or; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          case '[': kind = Tok::LBracket; break;
          case ']': kind = Tok::RBracket; break;
          case '{': kind = Tok::LBrace; break;
          case '}': kind = Tok::RBrace; break;
          case ',': kind = Tok::Comma; break;
          default:
            throw SyntaxError(std::string("unexpected character '") + ch + "'", line, col);
        }
        out.push_back({kind, std::string(1, advance()), line, col});
      }
    }
  }

 private:
  char advance() {
    const char ch = src_[pos_++];
    if (ch == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return ch;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string lex_number() {
    std::string s;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) s += advance();
    };
    if (src_[pos_] == '-' || src_[pos_] == '+') s += advance();
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      s += advance();
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save_pos = pos_, save_col = col_;
      std::string exp(1, advance());
      if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) exp += advance();
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        s += exp;
        digits();
      } else {
        pos_ = save_pos;
        col_ = save_col;
      }
    }
    return s;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula run() {
    auto f = phi();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  // phi := or_expr ( "U" interval? or_expr )*
  Formula phi() {
    auto lhs = or_expr();
    while (peek().kind == Tok::Until) {
      const auto& at = next();
      auto iv = optional_interval();
      auto rhs = or_expr();
      lhs = build([&] { return Formula::until(std::move(lhs), std::move(rhs), iv); }, at);
    }
    return lhs;
  }

  Formula or_expr() {
    auto lhs = and_expr();
    while (peek().kind == Tok::Or) {
      next();
      lhs = Formula::disjunction(std::move(lhs), and_expr());
    }
    return lhs;
  }

  Formula and_expr() {
    auto lhs = unary();
    while (peek().kind == Tok::And) {
      next();
      lhs = Formula::conjunction(std::move(lhs), unary());
    }
    return lhs;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not:
        next();
        return Formula::negation(unary());
      case Tok::Globally:
      case Tok::Finally: {
        const auto& at = next();
        auto iv = optional_interval();
        auto operand = unary();
        if (at.kind == Tok::Globally) {
          return build([&] { return Formula::always(std::move(operand), iv); }, at);
        }
        return build([&] { return Formula::eventually(std::move(operand), iv); }, at);
      }
      default: return atom();
    }
  }

  Formula atom() {
    const auto& tok = peek();
    switch (tok.kind) {
      case Tok::True: next(); return Formula::truth();
      case Tok::LParen: {
        next();
        auto f = phi();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: return predicate();
      default: fail(tok.kind == Tok::End ? "unexpected end of input" : "unexpected '" + tok.text + "'");
    }
  }

  Formula predicate() {
    const auto& name = next();
    const auto& op = peek();
    if (op.kind != Tok::Cmp) fail("expected comparison after '" + name.text + "'");
    next();
    Comparison cmp = Comparison::Greater;
    if (op.text == "<") cmp = Comparison::Less;
    else if (op.text == ">=") cmp = Comparison::GreaterEqual;
    else if (op.text == "<=") cmp = Comparison::LessEqual;
    const double c = number("threshold");
    return Formula::predicate(name.text, cmp, c);
  }

  Interval optional_interval() {
    if (peek().kind == Tok::LBracket) {
      next();
      const auto& a_tok = peek();
      auto a = uint_value();
      expect(Tok::Comma, "','");
      auto b = uint_value();
      expect(Tok::RBracket, "']'");
      if (a > b) {
        throw InvalidInterval("interval [" + std::to_string(a) + "," + std::to_string(b) +
                              "] has a > b at line " + std::to_string(a_tok.line) + ", column " +
                              std::to_string(a_tok.column));
      }
      return StepInterval{a, b};
    }
    if (peek().kind == Tok::LBrace) {
      next();
      const auto& a_tok = peek();
      double vals[4] = {0.0, 0.0, 0.0, 0.0};
      std::size_t n = 0;
      vals[n++] = number("smooth interval bound");
      while (peek().kind == Tok::Comma && n < 4) {
        next();
        vals[n++] = number("smooth interval parameter");
      }
      expect(Tok::RBrace, "'}'");
      if (n < 3) fail("smooth interval needs {a,b,c} or {a,b,c,eps}");
      try {
        return SmoothInterval::make(vals[0], vals[1], vals[2], vals[3]);
      } catch (const InvalidInterval& e) {
        throw InvalidInterval(std::string(e.what()) + " at line " + std::to_string(a_tok.line) +
                              ", column " + std::to_string(a_tok.column));
      }
    }
    return {};
  }

  std::size_t uint_value() {
    const auto& tok = peek();
    if (tok.kind != Tok::Number) fail("expected a nonnegative integer");
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
      fail("expected a nonnegative integer, got '" + tok.text + "'");
    }
    next();
    return v;
  }

  double number(const char* what) {
    const auto& tok = peek();
    if (tok.kind != Tok::Number) fail(std::string("expected numeric ") + what);
    std::string_view text = tok.text;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
      fail("malformed number '" + tok.text + "'");
    }
    next();
    return v;
  }

  template <typename Build>
  Formula build(Build&& fn, const Token& at) {
    try {
      return fn();
    } catch (const SyntaxError&) {
      throw;
    } catch (const InvalidInterval&) {
      throw;
    } catch (const Error& e) {
      throw SyntaxError(e.what(), at.line, at.column);
    }
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().line, peek().column);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(Lexer(text).run()).run(); }

}  // namespace stlmask
