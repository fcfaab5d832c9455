#ifndef ISOCURVE_EXPR_HPP
#define ISOCURVE_EXPR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "isocurve/errors.hpp"
#include "isocurve/jet.hpp"

namespace isocurve {

enum class UnaryOp { Neg, Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode {
  enum class Kind { Constant, Variable, Unary, Binary };
  Kind kind = Kind::Constant;
  double value = 0.0;    // Constant
  std::string name;      // Variable
  UnaryOp uop = UnaryOp::Neg;
  BinaryOp bop = BinaryOp::Add;
  std::int32_t lhs = -1;  // child indices into the node pool
  std::int32_t rhs = -1;
};

/// Parsed closed-form scalar expression over a declared variable set.
/// Immutable after construction; evaluation is pure.
class ExpressionAst {
 public:
  ExpressionAst() = default;
  ExpressionAst(std::vector<ExprNode> nodes, std::int32_t root, std::vector<std::string> variables);

  const std::vector<ExprNode>& nodes() const noexcept { return nodes_; }
  std::int32_t root() const noexcept { return root_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }

  bool depends_on(const std::string& variable) const;

  /// Minimal-parenthesis rendering; reparsing the result yields a
  /// structurally identical tree.
  std::string pretty() const;

  /// Structural equality of the trees (node kinds, values, names, shape).
  friend bool operator==(const ExpressionAst& a, const ExpressionAst& b);

 private:
  std::vector<ExprNode> nodes_;
  std::int32_t root_ = -1;
  std::vector<std::string> variables_;
};

/// Parses infix text over the declared variables. Grammar: +, -, *, /, ^
/// with standard precedence (^ above unary minus above * / above + -),
/// parentheses, f(x) function calls, and the constant pi. Exponents of ^
/// must fold to constants.
ExpressionAst parse(std::string_view text, const std::vector<std::string>& variables);

/// IEEE double evaluation at a point binding every variable.
double eval_scalar(const ExpressionAst& ast, const std::map<std::string, double>& bindings);

/// Evaluates the expression over jet arithmetic; all binding jets must share
/// arity and order. The result is the truncated Taylor expansion of the
/// expression at the binding point.
Jet eval_jet(const ExpressionAst& ast, const std::map<std::string, Jet>& bindings);

}  // namespace isocurve

#endif  // ISOCURVE_EXPR_HPP
