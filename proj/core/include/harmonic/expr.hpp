#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "harmonic/jet.hpp"

namespace harmonic {

/// Functions callable from the expression grammar. log/exp/sqrt use the
/// principal branch; k, l, s, q2 are the closed-form catalog primitives
///   k(w) = w/(1-w)^2, l(w) = w/(1-w), s(w) = ½log((1+w)/(1-w)), q2(w) = w/(1-w²).
enum class Function { Log, Exp, Sqrt, Koebe, HalfPlane, Strip, Q2 };

std::string_view function_name(Function fn);

enum class NodeKind { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Call };

struct Node;
using ExprPtr = std::shared_ptr<const Node>;

/// Immutable expression tree node. Children are shared between trees.
struct Node {
  NodeKind kind;
  Complex value{};            // Const
  Function function{};        // Call
  std::vector<ExprPtr> args;  // operands, in order

  /// Pow with a constant integer exponent; evaluated by repeated multiplication.
  bool has_integer_exponent(long* exponent = nullptr) const;
};

bool equal(const ExprPtr& a, const ExprPtr& b);

namespace expr {

// Builders fold the trivial identities (0 + x, 1 * x, x / 1, x ^ 1, ...) so
// that constructions with identity parameters return the input tree.
ExprPtr constant(Complex c);
ExprPtr var();
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr pow(ExprPtr base, ExprPtr exponent);
ExprPtr neg(ExprPtr a);
ExprPtr call(Function fn, ExprPtr arg);
/// Unfolded node, for constructions that must keep a recognizable shape.
ExprPtr make_node(NodeKind kind, std::vector<ExprPtr> args);

/// Replaces every occurrence of z with `replacement`.
ExprPtr substitute(const ExprPtr& e, const ExprPtr& replacement);

/// d/dz of the tree, built from the ordinary calculus rules.
ExprPtr derivative(const ExprPtr& e);

bool is_constant(const ExprPtr& e, Complex* value = nullptr);

}  // namespace expr

/// Parses the expression grammar:
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' unary)?
///   atom   := number | 'i' | 'z' | ident '(' expr ')' | '(' expr ')'
/// Throws Error(SyntaxError | UnknownIdentifier) carrying the byte offset.
ExprPtr parse(std::string_view text);

/// Canonical text form; parse(print(parse(t))) equals parse(t).
std::string print(const ExprPtr& e);

/// Jet of the tree at z0. Errors carry the path of the failing node.
Jet eval_jet(const ExprPtr& e, Complex z0, int order);

/// An analytic function of one complex variable backed by an expression tree.
class AnalyticFunction {
 public:
  AnalyticFunction() : AnalyticFunction(expr::var()) {}
  explicit AnalyticFunction(ExprPtr tree, std::string domain_note = {});

  static AnalyticFunction parse(std::string_view text);
  static AnalyticFunction identity() { return AnalyticFunction(expr::var()); }
  static AnalyticFunction constant(Complex c) { return AnalyticFunction(expr::constant(c)); }

  const ExprPtr& tree() const noexcept { return tree_; }
  const std::string& domain_note() const noexcept { return domain_note_; }
  std::string to_string() const { return print(tree_); }

  Jet jet(Complex z0, int order) const;
  Complex operator()(Complex z0) const;

  AnalyticFunction derivative() const;
  /// this∘inner
  AnalyticFunction compose(const AnalyticFunction& inner) const;

  friend bool operator==(const AnalyticFunction& a, const AnalyticFunction& b) {
    return equal(a.tree_, b.tree_);
  }

 private:
  ExprPtr tree_;
  std::string domain_note_;
};

}  // namespace harmonic
