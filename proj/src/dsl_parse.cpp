#include <cctype>
#include <sstream>

#include "qseries/dsl.hpp"

namespace qseries::dsl {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Comma, End };

struct Token {
  Tok kind;
  std::size_t start;
  std::size_t end;
  std::string_view text;
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    unsigned char ch = static_cast<unsigned char>(src[i]);
    if (std::isspace(ch)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(ch)) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Number, start, i, src.substr(start, i - start)});
      continue;
    }
    if (std::isalpha(ch) || ch == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      out.push_back({Tok::Ident, start, i, src.substr(start, i - start)});
      continue;
    }
    Tok t;
    switch (ch) {
      case '+': t = Tok::Plus; break;
      case '-': t = Tok::Minus; break;
      case '*': t = Tok::Star; break;
      case '/': t = Tok::Slash; break;
      case '^': t = Tok::Caret; break;
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case '[': t = Tok::LBracket; break;
      case ']': t = Tok::RBracket; break;
      case ',': t = Tok::Comma; break;
      default:
        throw Error(ErrorKind::SyntaxError, "unexpected character '" + std::string(1, src[i]) + "'",
                    SourceSpan{start, start + 1});
    }
    ++i;
    out.push_back({t, start, i, src.substr(start, 1)});
  }
  out.push_back({Tok::End, src.size(), src.size(), {}});
  return out;
}

struct CallShape {
  std::string_view name;
  int min_args;
  int max_args;
};

constexpr CallShape kCalls[] = {
    {"qpoch", 3, 3},    {"qpochinf", 2, 2}, {"phi", 4, 4},   {"thetaphi", 0, 0}, {"thetapsi", 0, 0},
    {"S", 1, 1},        {"T", 1, 1},        {"sum", 4, 4},   {"subsq", 2, 2},    {"subsnegq", 1, 1},
    {"polyF", 1, 1},    {"dqx", 3, 3},
};

const CallShape* find_call(std::string_view name) {
  for (const auto& c : kCalls)
    if (c.name == name) return &c;
  return nullptr;
}

std::shared_ptr<Expr> make(NodeKind k, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->span = span;
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) fail("expected operator or end of input");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + std::string(t.text) + "'";
    throw Error(ErrorKind::SyntaxError, msg + ", found " + found + " at offset " + std::to_string(t.start),
                SourceSpan{t.start, t.end});
  }

  const Token& expect(Tok k) {
    if (peek().kind != k) fail("expected " + std::string(describe(k)));
    return next();
  }

  ExprPtr binary(NodeKind k, ExprPtr l, ExprPtr r) {
    auto e = make(k, SourceSpan{l->span.start, r->span.end});
    e->args = {std::move(l), std::move(r)};
    return e;
  }

  ExprPtr expr() {
    ExprPtr l = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      NodeKind k = next().kind == Tok::Plus ? NodeKind::Add : NodeKind::Sub;
      l = binary(k, l, term());
    }
    return l;
  }

  ExprPtr term() {
    ExprPtr l = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      NodeKind k = next().kind == Tok::Star ? NodeKind::Mul : NodeKind::Div;
      l = binary(k, l, factor());
    }
    return l;
  }

  ExprPtr negation(ExprPtr (Parser::*operand)()) {
    const Token& minus = next();
    ExprPtr inner = (this->*operand)();
    auto e = make(NodeKind::Neg, SourceSpan{minus.start, inner->span.end});
    e->args = {inner};
    return e;
  }

  ExprPtr factor() {
    if (peek().kind == Tok::Minus) return negation(&Parser::factor);
    ExprPtr base = atom();
    if (peek().kind == Tok::Caret) {
      next();
      return binary(NodeKind::Pow, base, exponent());
    }
    return base;
  }

  ExprPtr exponent() {
    if (peek().kind == Tok::Minus) return negation(&Parser::exponent);
    return atom();
  }

  ExprPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        auto e = make(NodeKind::Number, SourceSpan{t.start, t.end});
        e->number = mpz_class(std::string(t.text));
        return e;
      }
      case Tok::LParen: {
        next();
        ExprPtr inner = expr();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::LBracket: {
        next();
        auto e = make(NodeKind::List, SourceSpan{t.start, t.end});
        if (peek().kind != Tok::RBracket) {
          e->args.push_back(expr());
          while (peek().kind == Tok::Comma) {
            next();
            e->args.push_back(expr());
          }
        }
        e->span.end = expect(Tok::RBracket).end;
        return e;
      }
      case Tok::Ident:
        return identifier();
      default:
        fail("expected expression");
    }
  }

  ExprPtr identifier() {
    const Token& t = next();
    SourceSpan span{t.start, t.end};
    if (t.text == "q") return make(NodeKind::Q, span);
    if (t.text == "inf") return make(NodeKind::Inf, span);
    const CallShape* shape = find_call(t.text);
    if (!shape) {
      if (peek().kind == Tok::LParen)
        throw Error(ErrorKind::SyntaxError, "unknown function '" + std::string(t.text) + "'", span);
      auto e = make(NodeKind::Symbol, span);
      e->name = std::string(t.text);
      return e;
    }
    auto e = make(NodeKind::Call, span);
    e->name = std::string(t.text);
    if (shape->max_args == 0 && peek().kind != Tok::LParen) return e;
    expect(Tok::LParen);
    if (peek().kind != Tok::RParen) {
      e->args.push_back(expr());
      while (peek().kind == Tok::Comma) {
        next();
        e->args.push_back(expr());
      }
    }
    const Token& close = expect(Tok::RParen);
    e->span.end = close.end;
    int n = static_cast<int>(e->args.size());
    if (n < shape->min_args || n > shape->max_args)
      throw Error(ErrorKind::SyntaxError,
                  std::string(shape->name) + " expects " + std::to_string(shape->min_args) + " argument(s), got " +
                      std::to_string(n),
                  e->span);
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
      return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 2;
    case NodeKind::Neg:
      return 3;
    case NodeKind::Pow:
      return 4;
    default:
      return 5;
  }
}

void print_to(std::ostringstream& os, const Expr& e, int min_prec);

void print_list(std::ostringstream& os, const std::vector<ExprPtr>& items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ", ";
    print_to(os, *items[i], 0);
  }
}

void print_to(std::ostringstream& os, const Expr& e, int min_prec) {
  bool paren = precedence(e) < min_prec;
  if (paren) os << '(';
  switch (e.kind) {
    case NodeKind::Number: os << e.number.get_str(); break;
    case NodeKind::Q: os << 'q'; break;
    case NodeKind::Inf: os << "inf"; break;
    case NodeKind::Symbol: os << e.name; break;
    case NodeKind::List:
      os << '[';
      print_list(os, e.args);
      os << ']';
      break;
    case NodeKind::Call:
      os << e.name;
      if (!e.args.empty() || (e.name != "thetaphi" && e.name != "thetapsi")) {
        os << '(';
        print_list(os, e.args);
        os << ')';
      }
      break;
    case NodeKind::Neg:
      os << '-';
      print_to(os, *e.args[0], 3);
      break;
    case NodeKind::Add:
    case NodeKind::Sub:
      print_to(os, *e.args[0], 1);
      os << (e.kind == NodeKind::Add ? " + " : " - ");
      print_to(os, *e.args[1], 2);
      break;
    case NodeKind::Mul:
    case NodeKind::Div:
      print_to(os, *e.args[0], 2);
      os << (e.kind == NodeKind::Mul ? "*" : "/");
      print_to(os, *e.args[1], 3);
      break;
    case NodeKind::Pow:
      print_to(os, *e.args[0], 5);
      os << '^';
      print_to(os, *e.args[1], 5);
      break;
  }
  if (paren) os << ')';
}

void collect_free(const Expr& e, std::set<std::string>& bound, std::vector<const Expr*>& out) {
  if (e.kind == NodeKind::Symbol) {
    if (!bound.count(e.name)) out.push_back(&e);
    return;
  }
  auto bind_and_visit = [&](const std::string& var, const Expr& body) {
    bool inserted = bound.insert(var).second;
    collect_free(body, bound, out);
    if (inserted) bound.erase(var);
  };
  if (e.kind == NodeKind::Call && e.name == "sum" && e.args[0]->kind == NodeKind::Symbol) {
    collect_free(*e.args[1], bound, out);
    collect_free(*e.args[2], bound, out);
    bind_and_visit(e.args[0]->name, *e.args[3]);
    return;
  }
  if (e.kind == NodeKind::Call && e.name == "dqx") {
    collect_free(*e.args[0], bound, out);
    bind_and_visit("x", *e.args[1]);
    collect_free(*e.args[2], bound, out);
    return;
  }
  for (const auto& a : e.args) collect_free(*a, bound, out);
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Expr& e) {
  std::ostringstream os;
  print_to(os, e, 0);
  return os.str();
}

bool same_tree(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
  if (a.kind == NodeKind::Number && a.number != b.number) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_tree(*a.args[i], *b.args[i])) return false;
  return true;
}

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> bound;
  std::vector<const Expr*> found;
  collect_free(e, bound, found);
  std::set<std::string> out;
  for (const Expr* s : found) out.insert(s->name);
  return out;
}

void check_symbols(const Expr& e, const std::set<std::string>& declared) {
  std::set<std::string> bound = declared;
  std::vector<const Expr*> found;
  collect_free(e, bound, found);
  if (!found.empty())
    throw Error(ErrorKind::UnboundSymbol, "unbound symbol '" + found.front()->name + "'", found.front()->span);
}

}  // namespace qseries::dsl
