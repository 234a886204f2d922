#include "hessrank/expression.hpp"

#include <cctype>
#include <limits>
#include <sstream>
#include <vector>

namespace hessrank {

std::string VarNames::name(std::size_t index) const {
  if (index < x_count) return "x" + std::to_string(index + 1);
  if (index == x_count) return "t";
  if (index == x_count + 1) return "u";
  return "v" + std::to_string(index - x_count - 1);
}

namespace {

std::string located(const std::string& message, std::size_t line, std::size_t column) {
  std::ostringstream out;
  out << "line " << line << ", column " << column << ": " << message;
  return out.str();
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(located(message, line, column)), line_(line), column_(column) {}

namespace {

enum class Tok { Number, XVar, TVar, UVar, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
  std::size_t index = 0;  // for XVar: zero-based
};

std::vector<Token> tokenize(std::string_view text, std::size_t line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (ch == 'x') {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i + 1) throw ParseError("variable 'x' needs an index", line, col);
      const std::string digits(text.substr(i + 1, j - i - 1));
      if (digits.size() > 4) throw ParseError("variable index too large", line, col);
      const std::size_t idx = std::stoul(digits);
      if (idx == 0) throw ParseError("variable index 0 is not allowed", line, col);
      if (idx > kMaxArity) throw ParseError("variable index exceeds supported arity", line, col);
      out.push_back({Tok::XVar, std::string(text.substr(i, j - i)), col, idx - 1});
      i = j;
      continue;
    }
    Tok kind;
    switch (ch) {
      case 't': kind = Tok::TVar; break;
      case 'u': kind = Tok::UVar; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
    }
    if ((kind == Tok::TVar || kind == Tok::UVar) && i + 1 < text.size() &&
        std::isalnum(static_cast<unsigned char>(text[i + 1]))) {
      throw ParseError("unknown identifier", line, col);
    }
    out.push_back({kind, std::string(1, ch), col});
    ++i;
  }
  out.push_back({Tok::End, "", text.size() + 1});
  return out;
}

struct Layout {
  std::size_t arity;
  std::size_t t_index;
  std::size_t u_index;
};

Layout compute_layout(const std::vector<Token>& toks, const ParseOptions& opt) {
  std::size_t max_x = 0;
  bool has_t = false;
  bool has_u = false;
  for (const auto& tk : toks) {
    if (tk.kind == Tok::XVar) max_x = std::max(max_x, tk.index + 1);
    has_t = has_t || tk.kind == Tok::TVar;
    has_u = has_u || tk.kind == Tok::UVar;
  }
  const std::size_t x_count = opt.x_count.value_or(max_x);
  std::size_t arity = x_count + (has_u ? 2 : has_t ? 1 : 0);
  if (opt.arity) arity = *opt.arity;
  if (arity > kMaxArity) throw ParseError("arity exceeds supported maximum", opt.line, 1);
  for (const auto& tk : toks) {
    if (tk.kind == Tok::XVar && tk.index >= x_count) {
      throw ParseError("variable " + tk.text + " exceeds declared variable count", opt.line,
                       tk.column);
    }
    if ((tk.kind == Tok::TVar && x_count >= arity) ||
        (tk.kind == Tok::UVar && x_count + 1 >= arity)) {
      throw ParseError("variable " + tk.text + " exceeds declared arity", opt.line, tk.column);
    }
  }
  return {arity, x_count, x_count + 1};
}

template <class V>
class Parser {
 public:
  static constexpr bool kRational = std::is_same_v<V, RationalFunction>;

  Parser(std::vector<Token> toks, Layout layout, std::size_t line)
      : toks_(std::move(toks)), layout_(layout), line_(line) {}

  V parse_all() {
    V v = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, peek().column);
  }

  V constant(const Rational& c) const {
    return V(Polynomial::constant(layout_.arity, c));
  }

  V expr() {
    V acc = constant(0);
    bool first = true;
    while (true) {
      bool negate = false;
      if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
        negate = next().kind == Tok::Minus;
      } else if (!first) {
        break;
      }
      V t = term();
      if (negate) acc -= t; else acc += t;
      first = false;
    }
    return acc;
  }

  V term() {
    V acc = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const bool divide = next().kind == Tok::Slash;
      if (!divide) {
        acc *= factor();
        continue;
      }
      if constexpr (kRational) {
        V d = factor();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        fail("division is only allowed inside rational constants");
      }
    }
    return acc;
  }

  V factor() {
    if (peek().kind == Tok::Minus) {
      next();
      return -factor();
    }
    V b = base();
    if (peek().kind == Tok::Caret) {
      next();
      if (peek().kind != Tok::Number) fail("exponent must be a non-negative integer");
      const Token& e = next();
      if (e.text.size() > 5 || std::stoul(e.text) > std::numeric_limits<Monomial::Exponent>::max()) {
        throw ParseError("exponent overflow", line_, e.column);
      }
      try {
        b = b.pow(static_cast<unsigned>(std::stoul(e.text)));
      } catch (const std::overflow_error&) {
        throw ParseError("exponent overflow", line_, e.column);
      }
    }
    return b;
  }

  V base() {
    const Token& tk = peek();
    switch (tk.kind) {
      case Tok::Number: {
        next();
        Rational value(Integer(tk.text));
        if (peek().kind == Tok::Slash && toks_[pos_ + 1].kind == Tok::Number) {
          next();
          const Token& d = next();
          Integer den(d.text);
          if (den == 0) throw ParseError("zero denominator", line_, d.column);
          value /= Rational(den);
        }
        return constant(value);
      }
      case Tok::XVar:
        next();
        return V(Polynomial::variable(layout_.arity, tk.index));
      case Tok::TVar:
        next();
        return V(Polynomial::variable(layout_.arity, layout_.t_index));
      case Tok::UVar:
        next();
        return V(Polynomial::variable(layout_.arity, layout_.u_index));
      case Tok::LParen: {
        next();
        V inner = expr();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        next();
        return inner;
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + tk.text + "'");
    }
  }

  std::vector<Token> toks_;
  Layout layout_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

template <class V>
V parse_as(std::string_view text, const ParseOptions& options) {
  auto toks = tokenize(text, options.line);
  if (toks.size() == 1) throw ParseError("empty expression", options.line, 1);
  const Layout layout = compute_layout(toks, options);
  Parser<V> parser(std::move(toks), layout, options.line);
  return parser.parse_all();
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const ParseOptions& options) {
  return parse_as<Polynomial>(text, options);
}

RationalFunction parse_rational_function(std::string_view text, const ParseOptions& options) {
  return parse_as<RationalFunction>(text, options);
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Polynomial& p, const VarNames& names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(c);
    std::string mono;
    for (std::size_t v = 0; v < p.arity(); ++v) {
      if (m[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.name(v);
      if (m[v] > 1) mono += "^" + std::to_string(m[v]);
    }
    if (mono.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_string(mag) + "*" + mono;
    }
  }
  return out;
}

std::string to_string(const Polynomial& p) { return to_string(p, VarNames::for_arity(p.arity())); }

std::string to_string(const RationalFunction& f, const VarNames& names) {
  if (f.is_polynomial()) return to_string(f.as_polynomial(), names);
  return "(" + to_string(f.numerator(), names) + ")/(" + to_string(f.denominator(), names) + ")";
}

std::string to_string(const RationalFunction& f) {
  return to_string(f, VarNames::for_arity(f.arity()));
}

}  // namespace hessrank
