#ifndef PARETO_TAME_EXPRESSION_HPP
#define PARETO_TAME_EXPRESSION_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pareto_tame/common.hpp"

namespace pareto_tame {

enum class NodeKind {
  kConstant,
  kVariable,
  kAdd,
  kSub,
  kMul,
  kNeg,
  kPow,
  kSin,
  kCos,
  kExp,
  kAbs,
  kMax,
  kMin,
  kNorm2,
};

struct Node;

/// Immutable scalar expression over the variables x1..xn. Copies share the
/// underlying tree, so passing by value is cheap and thread safe.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(double value);
  static Expr variable(std::size_t index);
  static Expr unary(NodeKind kind, Expr arg);
  static Expr binary(NodeKind kind, Expr lhs, Expr rhs);
  static Expr power(Expr base, int exponent);
  static Expr nary(NodeKind kind, std::vector<Expr> args);

  NodeKind kind() const;
  double value() const;         // kConstant only
  std::size_t index() const;    // kVariable only
  int exponent() const;         // kPow only
  const std::vector<Expr>& args() const;

  /// True when the tree contains no abs/max/min/norm2 node.
  bool is_smooth() const;

  /// True when the tree contains no variable.
  bool is_constant() const;

  /// One more than the largest variable index used (0 for constants).
  std::size_t arity() const;

  /// Symbolic partial derivatives of a smooth expression, computed once and
  /// cached. Throws InputError on a nonsmooth tree.
  std::vector<Expr> gradient(std::size_t dimension) const;

  const Node* node() const { return node_.get(); }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

 private:
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct ParseOptions {
  /// Number of variables x1..xn accepted; 0 means constants only.
  std::size_t dimension = 0;
  /// When non-empty, this identifier is accepted as variable index 0
  /// (used for probe paths written in t).
  std::string parameter;
  /// Accept x^-k. Only probe paths need this; objectives and constraints
  /// keep the no-division invariant.
  bool allow_negative_powers = false;
};

Expr parse(std::string_view source, const ParseOptions& options);

/// Parses a closed-form real such as "-3/4*pi", "inf" or "2.5".
double parse_real(std::string_view source);

/// Infix text that parses back to an equivalent tree.
std::string print(const Expr& e);

/// Same as print but names variable 0 after the given parameter.
std::string print_with_parameter(const Expr& e, const std::string& parameter);

double eval(const Expr& e, const Vec& x);

/// Builds d e / d x_var symbolically with light constant folding.
Expr derivative(const Expr& e, std::size_t var);

/// Evaluates the gradient at x for an expression that is differentiable at
/// x. Nonsmooth nodes are resolved by their active branch; callers must make
/// sure x is not at a kink (see subdiff).
Vec gradient_at(const Expr& e, const Vec& x);

/// Replaces variable `var` with `replacement` everywhere.
Expr substitute(const Expr& e, std::size_t var, const Expr& replacement);

/// The objectives f_1..f_s of a vector problem.
class VectorObjective {
 public:
  VectorObjective() = default;
  VectorObjective(std::size_t dimension, std::vector<Expr> components);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return components_.size(); }
  const Expr& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<Expr>& components() const { return components_; }

  Vec eval(const Vec& x) const;

  /// The sub-objective f_I, components ordered as in `indices`.
  VectorObjective restrict(const IndexSet& indices) const;

 private:
  std::size_t dimension_ = 0;
  std::vector<Expr> components_;
};

/// Projects an s-vector onto the coordinates in `indices`.
Vec project(const Vec& values, const IndexSet& indices);

IndexSet all_indices(std::size_t count);

}  // namespace pareto_tame

#endif  // PARETO_TAME_EXPRESSION_HPP
