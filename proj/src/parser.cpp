#include <algorithm>
#include <cctype>

#include "aimsolve/error.hpp"
#include "aimsolve/expr.hpp"

namespace aimsolve {
namespace {

struct Token {
  enum class Type { Number, Ident, Op, End };
  Type type;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.') {
        throw ParseError("decimal literals are not supported; use a fraction", j);
      }
      out.push_back({Token::Type::Number, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Type::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      out.push_back({Token::Type::Op, std::string(1, c), i});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Token::Type::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& params)
      : tokens_(tokenize(text)), params_(params) {}

  Expr parse() {
    Expr e = expr();
    if (peek().type != Token::Type::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  bool is_op(const std::string& op, std::size_t ahead = 0) const {
    return peek(ahead).type == Token::Type::Op && peek(ahead).text == op;
  }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  void expect(const std::string& op) {
    if (!is_op(op)) {
      const Token& t = peek();
      throw ParseError("expected '" + op + "'" + (t.type == Token::Type::End ? " before end of input" : " but found '" + t.text + "'"), t.pos);
    }
    take();
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (is_op("+") || is_op("-")) {
      bool minus = take().text == "-";
      Expr t = term();
      terms.push_back(minus ? Expr::negate(t) : t);
    }
    return Expr::sum(terms);
  }

  Expr term() {
    Expr acc = factor();
    std::vector<Expr> product{acc};
    while (is_op("*") || is_op("/")) {
      bool divide = take().text == "/";
      Expr f = factor();
      if (divide) {
        product = {Expr::quotient(Expr::product(product), f)};
      } else {
        product.push_back(f);
      }
    }
    return Expr::product(product);
  }

  Expr factor() {
    Expr b = base();
    if (is_op("^")) {
      take();
      bool negative = false;
      if (is_op("-")) {
        take();
        negative = true;
      }
      const Token& t = peek();
      if (t.type != Token::Type::Number) throw ParseError("exponent must be an integer literal", t.pos);
      take();
      Integer k(t.text);
      if (k > 100000) throw ParseError("exponent too large", t.pos);
      int e = static_cast<int>(k.get_si());
      return Expr::power(b, negative ? -e : e);
    }
    return b;
  }

  Expr base() {
    const Token& t = peek();
    switch (t.type) {
      case Token::Type::Number: {
        take();
        Integer n(t.text);
        if (is_op("/") && peek(1).type == Token::Type::Number) {
          take();
          const Token& d = take();
          Integer den(d.text);
          if (den == 0) throw ParseError("zero denominator in literal", d.pos);
          Rational q(n, den);
          q.canonicalize();
          return Expr::number(q);
        }
        return Expr::number(Rational(n));
      }
      case Token::Type::Ident: {
        take();
        if (t.text == "exp" || t.text == "log" || t.text == "int") {
          if (!is_op("(")) throw ParseError("expected '(' after " + t.text, peek().pos);
          take();
          Expr arg = expr();
          expect(")");
          if (t.text == "exp") return Expr::exp(arg);
          if (t.text == "log") return Expr::log(arg);
          return Expr::integral(arg);
        }
        if (is_op("(")) throw ParseError("unknown function '" + t.text + "'", t.pos);
        if (t.text == kX || std::find(params_.begin(), params_.end(), t.text) != params_.end()) {
          return Expr::symbol(t.text);
        }
        throw UnknownSymbolError(t.text, t.pos);
      }
      case Token::Type::Op:
        if (t.text == "(") {
          take();
          Expr e = expr();
          expect(")");
          return e;
        }
        if (t.text == "-") {
          take();
          return Expr::negate(factor());
        }
        throw ParseError("unexpected '" + t.text + "'", t.pos);
      case Token::Type::End:
        throw ParseError("unexpected end of input", t.pos);
    }
    throw ParseError("unexpected token", t.pos);
  }

  std::vector<Token> tokens_;
  const std::vector<std::string>& params_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const std::vector<std::string>& params) {
  for (const auto& p : params) {
    if (p == kX || p == "exp" || p == "log" || p == "int") throw ParseError("reserved parameter name '" + p + "'", 0);
  }
  return Parser(text, params).parse();
}

}  // namespace aimsolve
