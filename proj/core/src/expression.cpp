#include "pareto_tame/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

namespace pareto_tame {

struct Node {
  NodeKind kind = NodeKind::kConstant;
  double value = 0.0;
  std::size_t index = 0;
  int exponent = 0;
  std::vector<Expr> args;

  bool smooth = true;
  bool constant = true;
  std::size_t arity = 0;

  mutable std::once_flag gradient_once;
  mutable std::vector<Expr> gradient_cache;
};

namespace {

bool is_nonsmooth_kind(NodeKind kind) {
  return kind == NodeKind::kAbs || kind == NodeKind::kMax ||
         kind == NodeKind::kMin || kind == NodeKind::kNorm2;
}

std::shared_ptr<Node> make_node(NodeKind kind, std::vector<Expr> args) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->args = std::move(args);
  node->smooth = !is_nonsmooth_kind(kind);
  node->constant = true;
  for (const auto& a : node->args) {
    node->smooth = node->smooth && a.is_smooth();
    node->constant = node->constant && a.is_constant();
    node->arity = std::max(node->arity, a.arity());
  }
  return node;
}

bool is_const(const Expr& e, double v) {
  return e.kind() == NodeKind::kConstant && e.value() == v;
}

Expr fold_add(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a.kind() == NodeKind::kConstant && b.kind() == NodeKind::kConstant) {
    return Expr::constant(a.value() + b.value());
  }
  return Expr::binary(NodeKind::kAdd, a, b);
}

Expr fold_neg(const Expr& a) {
  if (a.kind() == NodeKind::kConstant) return Expr::constant(-a.value());
  if (a.kind() == NodeKind::kNeg) return a.args()[0];
  return Expr::unary(NodeKind::kNeg, a);
}

Expr fold_sub(const Expr& a, const Expr& b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return fold_neg(b);
  if (a.kind() == NodeKind::kConstant && b.kind() == NodeKind::kConstant) {
    return Expr::constant(a.value() - b.value());
  }
  return Expr::binary(NodeKind::kSub, a, b);
}

Expr fold_mul(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a.kind() == NodeKind::kConstant && b.kind() == NodeKind::kConstant) {
    return Expr::constant(a.value() * b.value());
  }
  return Expr::binary(NodeKind::kMul, a, b);
}

Expr fold_pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr::constant(1.0);
  if (exponent == 1) return base;
  return Expr::power(base, exponent);
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options)
      : text_(text), options_(options) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) {
      fail(std::string("unexpected '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(NodeKind::kAdd, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(NodeKind::kSub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(NodeKind::kMul, lhs, parse_factor());
      } else if (accept('/')) {
        // Only constant divisors: folded into a constant factor.
        const std::size_t start = pos_;
        const Expr d = parse_factor();
        if (!d.is_constant()) {
          pos_ = start;
          fail("division is only allowed by a constant");
        }
        const double v = eval(d, Vec());
        if (v == 0.0) {
          pos_ = start;
          fail("division by zero");
        }
        lhs = lhs.is_constant() ? Expr::constant(eval(lhs, Vec()) / v)
                                : Expr::binary(NodeKind::kMul, lhs, Expr::constant(1.0 / v));
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    Expr base = parse_atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      if (!options_.allow_negative_powers) {
        fail("exponent must be a positive integer");
      }
      negative = true;
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == digits) {
      pos_ = start;
      fail("expected integer exponent");
    }
    const long value = std::stol(std::string(text_.substr(digits, pos_ - digits)));
    if (value == 0 || value > 64) {
      pos_ = start;
      fail("exponent out of range");
    }
    return Expr::power(base, negative ? -static_cast<int>(value)
                                      : static_cast<int>(value));
  }

  double parse_unsigned_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '.')) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
        ++look;
      }
      if (look < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }
    }
    return std::stod(std::string(text_.substr(start, pos_ - start)));
  }

  Expr parse_number() {
    double value = parse_unsigned_number();
    // Fraction literal: NUMBER '/' NUMBER with no intervening space.
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      if (pos_ >= text_.size() ||
          !(std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.')) {
        // Not a literal; the term parser handles a constant divisor.
        --pos_;
        return Expr::constant(value);
      }
      const std::size_t denom_pos = pos_;
      const double denominator = parse_unsigned_number();
      if (denominator == 0.0) {
        pos_ = denom_pos;
        fail("zero denominator in fraction literal");
      }
      value /= denominator;
    }
    return Expr::constant(value);
  }

  Expr parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return Expr::unary(NodeKind::kNeg, parse_atom());
    }
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string word(text_.substr(start, pos_ - start));
      return parse_identifier(word, start);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Expr parse_identifier(const std::string& word, std::size_t start) {
    if (!options_.parameter.empty() && word == options_.parameter) {
      return Expr::variable(0);
    }
    if (word.size() >= 2 && word[0] == 'x' &&
        std::all_of(word.begin() + 1, word.end(),
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const unsigned long one_based = std::stoul(word.substr(1));
      if (one_based == 0 || one_based > options_.dimension) {
        pos_ = start;
        fail("variable index out of range: " + word);
      }
      return Expr::variable(one_based - 1);
    }
    if (word == "pi") return Expr::constant(std::numbers::pi);

    NodeKind kind;
    bool single = true;
    if (word == "sin") {
      kind = NodeKind::kSin;
    } else if (word == "cos") {
      kind = NodeKind::kCos;
    } else if (word == "exp") {
      kind = NodeKind::kExp;
    } else if (word == "abs") {
      kind = NodeKind::kAbs;
    } else if (word == "max") {
      kind = NodeKind::kMax;
      single = false;
    } else if (word == "min") {
      kind = NodeKind::kMin;
      single = false;
    } else if (word == "norm2") {
      kind = NodeKind::kNorm2;
      single = false;
    } else {
      pos_ = start;
      fail("unknown identifier: " + word);
    }
    expect('(');
    std::vector<Expr> args;
    args.push_back(parse_expr());
    while (accept(',')) args.push_back(parse_expr());
    expect(')');
    if (single) {
      if (args.size() != 1) {
        pos_ = start;
        fail(word + " takes exactly one argument");
      }
      return Expr::unary(kind, args[0]);
    }
    return Expr::nary(kind, std::move(args));
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

bool prints_as_atom(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::kConstant:
      return e.value() >= 0.0 && !std::signbit(e.value());
    case NodeKind::kVariable:
    case NodeKind::kSin:
    case NodeKind::kCos:
    case NodeKind::kExp:
    case NodeKind::kAbs:
    case NodeKind::kMax:
    case NodeKind::kMin:
    case NodeKind::kNorm2:
      return true;
    default:
      return false;
  }
}

const char* function_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kSin: return "sin";
    case NodeKind::kCos: return "cos";
    case NodeKind::kExp: return "exp";
    case NodeKind::kAbs: return "abs";
    case NodeKind::kMax: return "max";
    case NodeKind::kMin: return "min";
    case NodeKind::kNorm2: return "norm2";
    default: return "";
  }
}

void print_to(const Expr& e, const std::string& parameter, std::string& out);

void print_wrapped(const Expr& e, bool wrap, const std::string& parameter,
                   std::string& out) {
  if (wrap) out += '(';
  print_to(e, parameter, out);
  if (wrap) out += ')';
}

bool is_additive(const Expr& e) {
  return e.kind() == NodeKind::kAdd || e.kind() == NodeKind::kSub;
}

void print_to(const Expr& e, const std::string& parameter, std::string& out) {
  switch (e.kind()) {
    case NodeKind::kConstant:
      if (std::signbit(e.value())) {
        out += "(-" + format_roundtrip(-e.value()) + ")";
      } else {
        out += format_roundtrip(e.value());
      }
      return;
    case NodeKind::kVariable:
      if (!parameter.empty() && e.index() == 0) {
        out += parameter;
      } else {
        out += "x" + std::to_string(e.index() + 1);
      }
      return;
    case NodeKind::kAdd:
    case NodeKind::kSub:
      print_to(e.args()[0], parameter, out);
      out += e.kind() == NodeKind::kAdd ? " + " : " - ";
      print_wrapped(e.args()[1], is_additive(e.args()[1]), parameter, out);
      return;
    case NodeKind::kMul:
      print_wrapped(e.args()[0], is_additive(e.args()[0]), parameter, out);
      out += "*";
      print_wrapped(e.args()[1],
                    is_additive(e.args()[1]) || e.args()[1].kind() == NodeKind::kMul,
                    parameter, out);
      return;
    case NodeKind::kNeg:
      out += "-";
      print_wrapped(e.args()[0], !prints_as_atom(e.args()[0]), parameter, out);
      return;
    case NodeKind::kPow:
      print_wrapped(e.args()[0], !prints_as_atom(e.args()[0]), parameter, out);
      out += "^" + std::to_string(e.exponent());
      return;
    default: {
      out += function_name(e.kind());
      out += "(";
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i > 0) out += ", ";
        print_to(e.args()[i], parameter, out);
      }
      out += ")";
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Forward-mode value and gradient at a point

struct ValueGrad {
  double value;
  Vec grad;
};

ValueGrad value_grad(const Expr& e, const Vec& x) {
  const std::size_t n = static_cast<std::size_t>(x.size());
  if (e.is_smooth()) {
    ValueGrad out{eval(e, x), Vec::Zero(x.size())};
    if (e.is_constant()) return out;
    const auto grad = e.gradient(n);
    for (std::size_t j = 0; j < n; ++j) out.grad[j] = eval(grad[j], x);
    return out;
  }
  const auto& args = e.args();
  switch (e.kind()) {
    case NodeKind::kAdd: {
      auto a = value_grad(args[0], x);
      auto b = value_grad(args[1], x);
      return {a.value + b.value, a.grad + b.grad};
    }
    case NodeKind::kSub: {
      auto a = value_grad(args[0], x);
      auto b = value_grad(args[1], x);
      return {a.value - b.value, a.grad - b.grad};
    }
    case NodeKind::kMul: {
      auto a = value_grad(args[0], x);
      auto b = value_grad(args[1], x);
      return {a.value * b.value, b.value * a.grad + a.value * b.grad};
    }
    case NodeKind::kNeg: {
      auto a = value_grad(args[0], x);
      return {-a.value, -a.grad};
    }
    case NodeKind::kPow: {
      auto a = value_grad(args[0], x);
      const int k = e.exponent();
      return {std::pow(a.value, k), k * std::pow(a.value, k - 1) * a.grad};
    }
    case NodeKind::kSin: {
      auto a = value_grad(args[0], x);
      return {std::sin(a.value), std::cos(a.value) * a.grad};
    }
    case NodeKind::kCos: {
      auto a = value_grad(args[0], x);
      return {std::cos(a.value), -std::sin(a.value) * a.grad};
    }
    case NodeKind::kExp: {
      auto a = value_grad(args[0], x);
      const double v = std::exp(a.value);
      return {v, v * a.grad};
    }
    case NodeKind::kAbs: {
      auto a = value_grad(args[0], x);
      const double sign = a.value < 0.0 ? -1.0 : 1.0;
      return {std::abs(a.value), sign * a.grad};
    }
    case NodeKind::kMax:
    case NodeKind::kMin: {
      const bool is_max = e.kind() == NodeKind::kMax;
      ValueGrad best = value_grad(args[0], x);
      for (std::size_t i = 1; i < args.size(); ++i) {
        ValueGrad cand = value_grad(args[i], x);
        if (is_max ? cand.value > best.value : cand.value < best.value) {
          best = std::move(cand);
        }
      }
      return best;
    }
    case NodeKind::kNorm2: {
      double sq = 0.0;
      Vec acc = Vec::Zero(x.size());
      for (const auto& a : args) {
        auto vg = value_grad(a, x);
        sq += vg.value * vg.value;
        acc += vg.value * vg.grad;
      }
      const double norm = std::sqrt(sq);
      if (norm > 0.0) acc /= norm;
      return {norm, acc};
    }
    default:
      break;
  }
  return {eval(e, x), Vec::Zero(x.size())};
}

}  // namespace

// ---------------------------------------------------------------------------
// Expr

Expr::Expr() : Expr(Expr::constant(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) {
  auto node = make_node(NodeKind::kConstant, {});
  node->value = value;
  return Expr(std::move(node));
}

Expr Expr::variable(std::size_t index) {
  auto node = make_node(NodeKind::kVariable, {});
  node->index = index;
  node->constant = false;
  node->arity = index + 1;
  return Expr(std::move(node));
}

Expr Expr::unary(NodeKind kind, Expr arg) {
  return Expr(make_node(kind, {std::move(arg)}));
}

Expr Expr::binary(NodeKind kind, Expr lhs, Expr rhs) {
  return Expr(make_node(kind, {std::move(lhs), std::move(rhs)}));
}

Expr Expr::power(Expr base, int exponent) {
  auto node = make_node(NodeKind::kPow, {std::move(base)});
  node->exponent = exponent;
  return Expr(std::move(node));
}

Expr Expr::nary(NodeKind kind, std::vector<Expr> args) {
  if (args.empty()) throw InputError("n-ary node needs at least one argument");
  return Expr(make_node(kind, std::move(args)));
}

NodeKind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
std::size_t Expr::index() const { return node_->index; }
int Expr::exponent() const { return node_->exponent; }
const std::vector<Expr>& Expr::args() const { return node_->args; }
bool Expr::is_smooth() const { return node_->smooth; }
bool Expr::is_constant() const { return node_->constant; }
std::size_t Expr::arity() const { return node_->arity; }

std::vector<Expr> Expr::gradient(std::size_t dimension) const {
  if (!is_smooth()) {
    throw InputError("symbolic gradient requested for a nonsmooth expression");
  }
  std::call_once(node_->gradient_once, [this] {
    std::vector<Expr> g;
    g.reserve(arity());
    for (std::size_t j = 0; j < arity(); ++j) g.push_back(derivative(*this, j));
    node_->gradient_cache = std::move(g);
  });
  std::vector<Expr> out = node_->gradient_cache;
  out.resize(std::max(dimension, out.size()), Expr::constant(0.0));
  out.resize(dimension);
  return out;
}

Expr operator+(const Expr& a, const Expr& b) {
  return Expr::binary(NodeKind::kAdd, a, b);
}
Expr operator-(const Expr& a, const Expr& b) {
  return Expr::binary(NodeKind::kSub, a, b);
}
Expr operator*(const Expr& a, const Expr& b) {
  return Expr::binary(NodeKind::kMul, a, b);
}
Expr operator-(const Expr& a) { return Expr::unary(NodeKind::kNeg, a); }

// ---------------------------------------------------------------------------
// Free functions

Expr parse(std::string_view source, const ParseOptions& options) {
  return Parser(source, options).parse_all();
}

double parse_real(std::string_view source) {
  std::string text(source);
  const auto first = text.find_first_not_of(" \t");
  const auto last = text.find_last_not_of(" \t");
  if (first == std::string::npos) throw ParseError("empty number", 0);
  text = text.substr(first, last - first + 1);
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  const Expr e = parse(text, ParseOptions{});
  return eval(e, Vec());
}

std::string print(const Expr& e) {
  std::string out;
  print_to(e, "", out);
  return out;
}

std::string print_with_parameter(const Expr& e, const std::string& parameter) {
  std::string out;
  print_to(e, parameter, out);
  return out;
}

double eval(const Expr& e, const Vec& x) {
  const auto& args = e.args();
  switch (e.kind()) {
    case NodeKind::kConstant:
      return e.value();
    case NodeKind::kVariable:
      if (e.index() >= static_cast<std::size_t>(x.size())) {
        throw DimensionError("point has dimension " + std::to_string(x.size()) +
                             " but expression uses x" +
                             std::to_string(e.index() + 1));
      }
      return x[static_cast<Eigen::Index>(e.index())];
    case NodeKind::kAdd:
      return eval(args[0], x) + eval(args[1], x);
    case NodeKind::kSub:
      return eval(args[0], x) - eval(args[1], x);
    case NodeKind::kMul:
      return eval(args[0], x) * eval(args[1], x);
    case NodeKind::kNeg:
      return -eval(args[0], x);
    case NodeKind::kPow:
      return std::pow(eval(args[0], x), e.exponent());
    case NodeKind::kSin:
      return std::sin(eval(args[0], x));
    case NodeKind::kCos:
      return std::cos(eval(args[0], x));
    case NodeKind::kExp:
      return std::exp(eval(args[0], x));
    case NodeKind::kAbs:
      return std::abs(eval(args[0], x));
    case NodeKind::kMax: {
      double best = eval(args[0], x);
      for (std::size_t i = 1; i < args.size(); ++i) {
        best = std::max(best, eval(args[i], x));
      }
      return best;
    }
    case NodeKind::kMin: {
      double best = eval(args[0], x);
      for (std::size_t i = 1; i < args.size(); ++i) {
        best = std::min(best, eval(args[i], x));
      }
      return best;
    }
    case NodeKind::kNorm2: {
      double sq = 0.0;
      for (const auto& a : args) {
        const double v = eval(a, x);
        sq += v * v;
      }
      return std::sqrt(sq);
    }
  }
  return 0.0;
}

Expr derivative(const Expr& e, std::size_t var) {
  const auto& args = e.args();
  switch (e.kind()) {
    case NodeKind::kConstant:
      return Expr::constant(0.0);
    case NodeKind::kVariable:
      return Expr::constant(e.index() == var ? 1.0 : 0.0);
    case NodeKind::kAdd:
      return fold_add(derivative(args[0], var), derivative(args[1], var));
    case NodeKind::kSub:
      return fold_sub(derivative(args[0], var), derivative(args[1], var));
    case NodeKind::kMul:
      return fold_add(fold_mul(derivative(args[0], var), args[1]),
                      fold_mul(args[0], derivative(args[1], var)));
    case NodeKind::kNeg:
      return fold_neg(derivative(args[0], var));
    case NodeKind::kPow: {
      const int k = e.exponent();
      return fold_mul(fold_mul(Expr::constant(k), fold_pow(args[0], k - 1)),
                      derivative(args[0], var));
    }
    case NodeKind::kSin:
      return fold_mul(Expr::unary(NodeKind::kCos, args[0]),
                      derivative(args[0], var));
    case NodeKind::kCos:
      return fold_mul(fold_neg(Expr::unary(NodeKind::kSin, args[0])),
                      derivative(args[0], var));
    case NodeKind::kExp:
      return fold_mul(e, derivative(args[0], var));
    default:
      throw InputError("no symbolic derivative for " +
                       std::string(function_name(e.kind())));
  }
}

Vec gradient_at(const Expr& e, const Vec& x) { return value_grad(e, x).grad; }

Expr substitute(const Expr& e, std::size_t var, const Expr& replacement) {
  switch (e.kind()) {
    case NodeKind::kConstant:
      return e;
    case NodeKind::kVariable:
      return e.index() == var ? replacement : e;
    case NodeKind::kPow:
      return Expr::power(substitute(e.args()[0], var, replacement), e.exponent());
    default: {
      std::vector<Expr> args;
      args.reserve(e.args().size());
      for (const auto& a : e.args()) args.push_back(substitute(a, var, replacement));
      if (args.size() == 1 && e.kind() != NodeKind::kMax &&
          e.kind() != NodeKind::kMin && e.kind() != NodeKind::kNorm2) {
        return Expr::unary(e.kind(), args[0]);
      }
      if (args.size() == 2 &&
          (e.kind() == NodeKind::kAdd || e.kind() == NodeKind::kSub ||
           e.kind() == NodeKind::kMul)) {
        return Expr::binary(e.kind(), args[0], args[1]);
      }
      return Expr::nary(e.kind(), std::move(args));
    }
  }
}

// ---------------------------------------------------------------------------
// VectorObjective

VectorObjective::VectorObjective(std::size_t dimension, std::vector<Expr> components)
    : dimension_(dimension), components_(std::move(components)) {
  if (components_.empty()) throw InputError("objective list is empty");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].arity() > dimension_) {
      throw DimensionError("objective f" + std::to_string(i + 1) +
                           " uses a variable beyond dimension " +
                           std::to_string(dimension_));
    }
  }
}

Vec VectorObjective::eval(const Vec& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension_) {
    throw DimensionError("point has dimension " + std::to_string(x.size()) +
                         ", problem has " + std::to_string(dimension_));
  }
  Vec out(static_cast<Eigen::Index>(components_.size()));
  for (std::size_t i = 0; i < components_.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = pareto_tame::eval(components_[i], x);
  }
  return out;
}

VectorObjective VectorObjective::restrict(const IndexSet& indices) const {
  std::vector<Expr> picked;
  picked.reserve(indices.size());
  for (auto i : indices) {
    if (i >= components_.size()) {
      throw InputError("index " + std::to_string(i + 1) + " exceeds s = " +
                       std::to_string(components_.size()));
    }
    picked.push_back(components_[i]);
  }
  return VectorObjective(dimension_, std::move(picked));
}

Vec project(const Vec& values, const IndexSet& indices) {
  Vec out(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    out[static_cast<Eigen::Index>(k)] = values[static_cast<Eigen::Index>(indices[k])];
  }
  return out;
}

IndexSet all_indices(std::size_t count) {
  IndexSet out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = i;
  return out;
}

}  // namespace pareto_tame
