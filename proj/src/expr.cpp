#include "isocurve/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "isocurve/util.hpp"

namespace isocurve {

namespace {

struct FunctionEntry {
  const char* name;
  UnaryOp op;
};

constexpr FunctionEntry kFunctions[] = {
    {"sin", UnaryOp::Sin},   {"cos", UnaryOp::Cos},   {"tan", UnaryOp::Tan},
    {"sinh", UnaryOp::Sinh}, {"cosh", UnaryOp::Cosh}, {"tanh", UnaryOp::Tanh},
    {"exp", UnaryOp::Exp},   {"log", UnaryOp::Log},   {"sqrt", UnaryOp::Sqrt},
};

std::optional<UnaryOp> lookup_function(std::string_view name) {
  for (const auto& f : kFunctions)
    if (name == f.name) return f.op;
  return std::nullopt;
}

const char* function_name(UnaryOp op) {
  for (const auto& f : kFunctions)
    if (f.op == op) return f.name;
  return nullptr;  // Neg
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables)
      : text_(text), variables_(variables) {}

  ExpressionAst run() {
    if (text_.find_first_not_of(" \t\r\n") == std::string_view::npos)
      throw SyntaxError("empty expression", 0);
    std::int32_t root = parse_additive();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
    std::vector<std::string> vars = variables_;
    std::sort(vars.begin(), vars.end());
    return ExpressionAst(std::move(nodes_), root, std::move(vars));
  }

 private:
  std::int32_t add_node(ExprNode node) {
    nodes_.push_back(std::move(node));
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  std::int32_t make_constant(double v) {
    ExprNode n;
    n.kind = ExprNode::Kind::Constant;
    n.value = v;
    return add_node(n);
  }

  std::int32_t make_unary(UnaryOp op, std::int32_t child) {
    // fold unary minus of a literal so "-2" is the constant -2
    if (op == UnaryOp::Neg && nodes_[child].kind == ExprNode::Kind::Constant &&
        child == static_cast<std::int32_t>(nodes_.size()) - 1) {
      nodes_[child].value = -nodes_[child].value;
      return child;
    }
    ExprNode n;
    n.kind = ExprNode::Kind::Unary;
    n.uop = op;
    n.lhs = child;
    return add_node(n);
  }

  std::int32_t make_binary(BinaryOp op, std::int32_t l, std::int32_t r) {
    ExprNode n;
    n.kind = ExprNode::Kind::Binary;
    n.bop = op;
    n.lhs = l;
    n.rhs = r;
    return add_node(n);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::int32_t parse_additive() {
    std::int32_t node = parse_multiplicative();
    for (;;) {
      if (consume('+'))
        node = make_binary(BinaryOp::Add, node, parse_multiplicative());
      else if (consume('-'))
        node = make_binary(BinaryOp::Sub, node, parse_multiplicative());
      else
        return node;
    }
  }

  std::int32_t parse_multiplicative() {
    std::int32_t node = parse_unary();
    for (;;) {
      if (consume('*'))
        node = make_binary(BinaryOp::Mul, node, parse_unary());
      else if (consume('/'))
        node = make_binary(BinaryOp::Div, node, parse_unary());
      else
        return node;
    }
  }

  std::int32_t parse_unary() {
    if (consume('-')) return make_unary(UnaryOp::Neg, parse_unary());
    return parse_power();
  }

  std::int32_t parse_power() {
    std::int32_t base = parse_primary();
    skip_ws();
    if (!consume('^')) return base;
    const std::size_t expo_pos = pos_;
    std::int32_t expo = parse_unary();  // right-associative, binds above unary minus
    double folded;
    if (!fold_constant(expo, folded))
      throw SyntaxError("exponent must be a constant expression", expo_pos);
    return make_binary(BinaryOp::Pow, base, make_constant(folded));
  }

  std::int32_t parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      std::int32_t inner = parse_additive();
      if (!consume(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw SyntaxError("expected a number, name or '('", pos_);
  }

  std::int32_t parse_number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc()) throw SyntaxError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(result.ptr - begin);
    return make_constant(value);
  }

  std::int32_t parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (peek_is('(')) {
      auto fn = lookup_function(name);
      if (!fn) throw UnknownIdentifier(name);
      ++pos_;
      std::int32_t arg = parse_additive();
      if (!consume(')')) throw SyntaxError("expected ')'", pos_);
      return make_unary(*fn, arg);
    }
    if (std::find(variables_.begin(), variables_.end(), name) != variables_.end()) {
      ExprNode n;
      n.kind = ExprNode::Kind::Variable;
      n.name = std::move(name);
      return add_node(n);
    }
    if (name == "pi") return make_constant(std::numbers::pi);
    throw UnknownIdentifier(name);
  }

  // Constant-folds a subtree; fails when any variable occurs in it.
  bool fold_constant(std::int32_t idx, double& out) const {
    const ExprNode& n = nodes_[static_cast<std::size_t>(idx)];
    switch (n.kind) {
      case ExprNode::Kind::Constant:
        out = n.value;
        return true;
      case ExprNode::Kind::Variable:
        return false;
      case ExprNode::Kind::Unary: {
        double a;
        if (!fold_constant(n.lhs, a)) return false;
        switch (n.uop) {
          case UnaryOp::Neg: out = -a; break;
          case UnaryOp::Sin: out = std::sin(a); break;
          case UnaryOp::Cos: out = std::cos(a); break;
          case UnaryOp::Tan: out = std::tan(a); break;
          case UnaryOp::Sinh: out = std::sinh(a); break;
          case UnaryOp::Cosh: out = std::cosh(a); break;
          case UnaryOp::Tanh: out = std::tanh(a); break;
          case UnaryOp::Exp: out = std::exp(a); break;
          case UnaryOp::Log: out = std::log(a); break;
          case UnaryOp::Sqrt: out = std::sqrt(a); break;
        }
        return true;
      }
      case ExprNode::Kind::Binary: {
        double a, b;
        if (!fold_constant(n.lhs, a) || !fold_constant(n.rhs, b)) return false;
        switch (n.bop) {
          case BinaryOp::Add: out = a + b; break;
          case BinaryOp::Sub: out = a - b; break;
          case BinaryOp::Mul: out = a * b; break;
          case BinaryOp::Div: out = a / b; break;
          case BinaryOp::Pow: out = std::pow(a, b); break;
        }
        return true;
      }
    }
    return false;
  }

  std::string_view text_;
  std::vector<std::string> variables_;
  std::vector<ExprNode> nodes_;
  std::size_t pos_ = 0;
};

// Rendering precedence: additive 1, multiplicative 2, unary minus 3, pow 4,
// atoms 5. A constant prints like an atom unless negative.
int node_precedence(const std::vector<ExprNode>& nodes, std::int32_t idx) {
  const ExprNode& n = nodes[static_cast<std::size_t>(idx)];
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      return n.value < 0.0 ? 3 : 5;
    case ExprNode::Kind::Variable:
      return 5;
    case ExprNode::Kind::Unary:
      return n.uop == UnaryOp::Neg ? 3 : 5;
    case ExprNode::Kind::Binary:
      switch (n.bop) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
      }
  }
  return 5;
}

void render(const std::vector<ExprNode>& nodes, std::int32_t idx, std::string& out) {
  const ExprNode& n = nodes[static_cast<std::size_t>(idx)];
  auto child = [&](std::int32_t c, int min_prec) {
    if (node_precedence(nodes, c) < min_prec) {
      out += '(';
      render(nodes, c, out);
      out += ')';
    } else {
      render(nodes, c, out);
    }
  };
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      out += format_double(n.value);
      return;
    case ExprNode::Kind::Variable:
      out += n.name;
      return;
    case ExprNode::Kind::Unary:
      if (n.uop == UnaryOp::Neg) {
        out += '-';
        child(n.lhs, 3);
      } else {
        out += function_name(n.uop);
        out += '(';
        render(nodes, n.lhs, out);
        out += ')';
      }
      return;
    case ExprNode::Kind::Binary: {
      const char* op = nullptr;
      int prec = node_precedence(nodes, idx);
      // right child always needs strictly higher precedence so that the
      // reparsed tree keeps the original association
      int lmin = prec, rmin = prec + 1;
      switch (n.bop) {
        case BinaryOp::Add: op = " + "; break;
        case BinaryOp::Sub: op = " - "; break;
        case BinaryOp::Mul: op = "*"; break;
        case BinaryOp::Div: op = "/"; break;
        case BinaryOp::Pow: op = "^"; lmin = prec + 1; rmin = 3; break;
      }
      child(n.lhs, lmin);
      out += op;
      child(n.rhs, rmin);
      return;
    }
  }
}

}  // namespace

ExpressionAst::ExpressionAst(std::vector<ExprNode> nodes, std::int32_t root,
                             std::vector<std::string> variables)
    : nodes_(std::move(nodes)), root_(root), variables_(std::move(variables)) {}

bool ExpressionAst::depends_on(const std::string& variable) const {
  for (const auto& n : nodes_)
    if (n.kind == ExprNode::Kind::Variable && n.name == variable) return true;
  return false;
}

std::string ExpressionAst::pretty() const {
  if (root_ < 0) return "0";
  std::string out;
  render(nodes_, root_, out);
  return out;
}

namespace {

bool structurally_equal(const ExpressionAst& a, std::int32_t ia, const ExpressionAst& b,
                        std::int32_t ib) {
  const ExprNode& na = a.nodes()[static_cast<std::size_t>(ia)];
  const ExprNode& nb = b.nodes()[static_cast<std::size_t>(ib)];
  if (na.kind != nb.kind) return false;
  switch (na.kind) {
    case ExprNode::Kind::Constant:
      return na.value == nb.value;
    case ExprNode::Kind::Variable:
      return na.name == nb.name;
    case ExprNode::Kind::Unary:
      return na.uop == nb.uop && structurally_equal(a, na.lhs, b, nb.lhs);
    case ExprNode::Kind::Binary:
      return na.bop == nb.bop && structurally_equal(a, na.lhs, b, nb.lhs) &&
             structurally_equal(a, na.rhs, b, nb.rhs);
  }
  return false;
}

}  // namespace

bool operator==(const ExpressionAst& a, const ExpressionAst& b) {
  if (a.root() < 0 || b.root() < 0) return a.root() == b.root();
  return structurally_equal(a, a.root(), b, b.root());
}

ExpressionAst parse(std::string_view text, const std::vector<std::string>& variables) {
  return Parser(text, variables).run();
}

namespace {

double scalar_unary(UnaryOp op, double a) {
  switch (op) {
    case UnaryOp::Neg: return -a;
    case UnaryOp::Sin: return std::sin(a);
    case UnaryOp::Cos: return std::cos(a);
    case UnaryOp::Tan: return std::tan(a);
    case UnaryOp::Sinh: return std::sinh(a);
    case UnaryOp::Cosh: return std::cosh(a);
    case UnaryOp::Tanh: return std::tanh(a);
    case UnaryOp::Exp: return std::exp(a);
    case UnaryOp::Log:
      if (a <= 0.0) throw DomainError("log of non-positive value");
      return std::log(a);
    case UnaryOp::Sqrt:
      if (a < 0.0) throw DomainError("sqrt of negative value");
      return std::sqrt(a);
  }
  return 0.0;
}

double scalar_pow(double base, double expo) {
  const double nearest = std::nearbyint(expo);
  if (expo == nearest) {
    if (base == 0.0 && expo < 0.0) throw DomainError("zero raised to a negative power");
    return std::pow(base, expo);
  }
  if (base < 0.0) throw DomainError("non-integer power of a negative base");
  if (base == 0.0 && expo < 0.0) throw DomainError("zero raised to a negative power");
  return std::pow(base, expo);
}

double eval_scalar_node(const ExpressionAst& ast, std::int32_t idx,
                        const std::map<std::string, double>& bindings) {
  const ExprNode& n = ast.nodes()[static_cast<std::size_t>(idx)];
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      return n.value;
    case ExprNode::Kind::Variable: {
      auto it = bindings.find(n.name);
      if (it == bindings.end()) throw UnknownIdentifier(n.name);
      return it->second;
    }
    case ExprNode::Kind::Unary:
      return scalar_unary(n.uop, eval_scalar_node(ast, n.lhs, bindings));
    case ExprNode::Kind::Binary: {
      const double a = eval_scalar_node(ast, n.lhs, bindings);
      const double b = eval_scalar_node(ast, n.rhs, bindings);
      switch (n.bop) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div:
          if (b == 0.0) throw DomainError("division by zero");
          return a / b;
        case BinaryOp::Pow: return scalar_pow(a, b);
      }
    }
  }
  return 0.0;
}

Jet eval_jet_node(const ExpressionAst& ast, std::int32_t idx,
                  const std::map<std::string, Jet>& bindings, int arity, int order) {
  const ExprNode& n = ast.nodes()[static_cast<std::size_t>(idx)];
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      return Jet::constant(n.value, arity, order);
    case ExprNode::Kind::Variable: {
      auto it = bindings.find(n.name);
      if (it == bindings.end()) throw UnknownIdentifier(n.name);
      return it->second;
    }
    case ExprNode::Kind::Unary: {
      Jet a = eval_jet_node(ast, n.lhs, bindings, arity, order);
      switch (n.uop) {
        case UnaryOp::Neg: return -a;
        case UnaryOp::Sin: return sin(a);
        case UnaryOp::Cos: return cos(a);
        case UnaryOp::Tan: return tan(a);
        case UnaryOp::Sinh: return sinh(a);
        case UnaryOp::Cosh: return cosh(a);
        case UnaryOp::Tanh: return tanh(a);
        case UnaryOp::Exp: return exp(a);
        case UnaryOp::Log: return log(a);
        case UnaryOp::Sqrt: return sqrt(a);
      }
      return a;
    }
    case ExprNode::Kind::Binary: {
      if (n.bop == BinaryOp::Pow) {
        Jet base = eval_jet_node(ast, n.lhs, bindings, arity, order);
        const ExprNode& e = ast.nodes()[static_cast<std::size_t>(n.rhs)];
        // parse() guarantees the exponent folded to a constant node
        return pow(base, e.value);
      }
      Jet a = eval_jet_node(ast, n.lhs, bindings, arity, order);
      Jet b = eval_jet_node(ast, n.rhs, bindings, arity, order);
      switch (n.bop) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div: return a / b;
        case BinaryOp::Pow: break;  // handled above
      }
      return a;
    }
  }
  return Jet::constant(0.0, arity, order);
}

}  // namespace

double eval_scalar(const ExpressionAst& ast, const std::map<std::string, double>& bindings) {
  if (ast.root() < 0) throw Error("evaluating an empty expression");
  return eval_scalar_node(ast, ast.root(), bindings);
}

Jet eval_jet(const ExpressionAst& ast, const std::map<std::string, Jet>& bindings) {
  if (ast.root() < 0) throw Error("evaluating an empty expression");
  int arity = 1, order = 3;
  if (!bindings.empty()) {
    arity = bindings.begin()->second.arity();
    order = bindings.begin()->second.order();
    for (const auto& [name, jet] : bindings)
      if (jet.arity() != arity || jet.order() != order)
        throw Error("binding jets must share arity and order");
  }
  return eval_jet_node(ast, ast.root(), bindings, arity, order);
}

}  // namespace isocurve
