#include <cctype>
#include <charconv>
#include <system_error>

#include "phishrev/nmr.hpp"

namespace phishrev::nmr {

namespace {

enum class Tok { ident, variable, integer, lparen, rparen, comma, dot, implies, kw_not, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  SourcePos pos;
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::variable: return "variable";
    case Tok::integer: return "integer";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::implies: return "':-'";
    case Tok::kw_not: return "'not'";
    case Tok::end: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    Token t;
    t.pos = {line_, col_};
    if (at_ >= src_.size()) return t;

    const char c = src_[at_];
    auto ident_char = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };
    if (std::islower(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c))) {
      const auto start = at_;
      while (at_ < src_.size() && ident_char(src_[at_])) advance();
      t.text = std::string(src_.substr(start, at_ - start));
      if (std::isupper(static_cast<unsigned char>(c))) t.kind = Tok::variable;
      else t.kind = t.text == "not" ? Tok::kw_not : Tok::ident;
      return t;
    }
    const bool minus = c == '-' && at_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[at_ + 1]));
    if (minus || std::isdigit(static_cast<unsigned char>(c))) {
      const auto start = at_;
      if (minus) advance();
      while (at_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[at_]))) advance();
      if (at_ < src_.size() && ident_char(src_[at_]))
        throw ParseError(t.pos.line, t.pos.column, "malformed number");
      t.kind = Tok::integer;
      t.text = std::string(src_.substr(start, at_ - start));
      return t;
    }
    switch (c) {
      case '(': advance(); t.kind = Tok::lparen; return t;
      case ')': advance(); t.kind = Tok::rparen; return t;
      case ',': advance(); t.kind = Tok::comma; return t;
      case '.': advance(); t.kind = Tok::dot; return t;
      case ':':
        if (at_ + 1 < src_.size() && src_[at_ + 1] == '-') {
          advance();
          advance();
          t.kind = Tok::implies;
          return t;
        }
        break;
      default: break;
    }
    throw ParseError(t.pos.line, t.pos.column, std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (src_[at_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++at_;
  }

  void skip_blank() {
    while (at_ < src_.size()) {
      const char c = src_[at_];
      if (c == '%') {
        while (at_ < src_.size() && src_[at_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t at_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  std::vector<Rule> rules() {
    std::vector<Rule> out;
    while (cur_.kind != Tok::end) out.push_back(rule());
    return out;
  }

 private:
  Token take(Tok kind) {
    if (cur_.kind != kind)
      throw ParseError(cur_.pos.line, cur_.pos.column,
                       "expected " + std::string(describe(kind)) + ", found " + std::string(describe(cur_.kind)) +
                           (cur_.text.empty() ? "" : " '" + cur_.text + "'"));
    Token t = std::move(cur_);
    cur_ = lex_.next();
    return t;
  }

  Rule rule() {
    Rule r;
    r.pos = cur_.pos;
    r.head = atom();
    if (cur_.kind == Tok::implies) {
      take(Tok::implies);
      literal(r);
      while (cur_.kind == Tok::comma) {
        take(Tok::comma);
        literal(r);
      }
    }
    take(Tok::dot);
    return r;
  }

  void literal(Rule& r) {
    if (cur_.kind == Tok::kw_not) {
      take(Tok::kw_not);
      r.negative.push_back(atom());
    } else {
      r.positive.push_back(atom());
    }
  }

  Atom atom() {
    Atom a;
    a.predicate = take(Tok::ident).text;
    if (cur_.kind == Tok::lparen) {
      take(Tok::lparen);
      a.terms.push_back(term());
      while (cur_.kind == Tok::comma) {
        take(Tok::comma);
        a.terms.push_back(term());
      }
      take(Tok::rparen);
    }
    return a;
  }

  Term term() {
    switch (cur_.kind) {
      case Tok::variable: return Variable{take(Tok::variable).text};
      case Tok::ident: return Constant{take(Tok::ident).text};
      case Tok::integer: {
        const auto t = take(Tok::integer);
        std::int64_t v = 0;
        const auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || end != t.text.data() + t.text.size())
          throw ParseError(t.pos.line, t.pos.column, "integer out of range");
        return Constant{v};
      }
      default:
        throw ParseError(cur_.pos.line, cur_.pos.column, "expected a term, found " + std::string(describe(cur_.kind)));
    }
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

Program parse_program(std::string_view text) { return Program(Parser(text).rules()); }

}  // namespace phishrev::nmr
