#include "harmonic/expr.hpp"

#include <charconv>
#include <cmath>

namespace harmonic {

std::string_view function_name(Function fn) {
  switch (fn) {
    case Function::Log: return "log";
    case Function::Exp: return "exp";
    case Function::Sqrt: return "sqrt";
    case Function::Koebe: return "k";
    case Function::HalfPlane: return "l";
    case Function::Strip: return "s";
    case Function::Q2: return "q2";
  }
  return "?";
}

bool Node::has_integer_exponent(long* exponent) const {
  if (kind != NodeKind::Pow) return false;
  Complex c;
  if (!expr::is_constant(args[1], &c) || c.imag() != 0.0) return false;
  const double r = c.real();
  if (std::abs(r) > 1e6 || r != std::round(r)) return false;
  if (exponent) *exponent = static_cast<long>(r);
  return true;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->args.size() != b->args.size()) return false;
  if (a->kind == NodeKind::Const && a->value != b->value) return false;
  if (a->kind == NodeKind::Call && a->function != b->function) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

namespace expr {
namespace {

ExprPtr make(NodeKind kind, std::vector<ExprPtr> args) {
  return std::make_shared<const Node>(Node{kind, {}, {}, std::move(args)});
}

bool is_value(const ExprPtr& e, Complex v) {
  Complex c;
  return is_constant(e, &c) && c == v;
}

}  // namespace

bool is_constant(const ExprPtr& e, Complex* value) {
  if (e->kind != NodeKind::Const) return false;
  if (value) *value = e->value;
  return true;
}

ExprPtr constant(Complex c) {
  return std::make_shared<const Node>(Node{NodeKind::Const, c, {}, {}});
}

ExprPtr var() {
  static const ExprPtr z = std::make_shared<const Node>(Node{NodeKind::Var, {}, {}, {}});
  return z;
}

ExprPtr add(ExprPtr a, ExprPtr b) {
  Complex ca, cb;
  const bool ka = is_constant(a, &ca), kb = is_constant(b, &cb);
  if (ka && kb) return constant(ca + cb);
  if (ka && ca == Complex{}) return b;
  if (kb && cb == Complex{}) return a;
  if (b->kind == NodeKind::Neg) return sub(std::move(a), b->args[0]);
  return make(NodeKind::Add, {std::move(a), std::move(b)});
}

ExprPtr sub(ExprPtr a, ExprPtr b) {
  Complex ca, cb;
  const bool ka = is_constant(a, &ca), kb = is_constant(b, &cb);
  if (ka && kb) return constant(ca - cb);
  if (kb && cb == Complex{}) return a;
  if (ka && ca == Complex{}) return neg(std::move(b));
  if (b->kind == NodeKind::Neg) return add(std::move(a), b->args[0]);
  return make(NodeKind::Sub, {std::move(a), std::move(b)});
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
  Complex ca, cb;
  const bool ka = is_constant(a, &ca), kb = is_constant(b, &cb);
  if (ka && kb) return constant(ca * cb);
  if ((ka && ca == Complex{}) || (kb && cb == Complex{})) return constant(0.0);
  if (ka && ca == 1.0) return b;
  if (kb && cb == 1.0) return a;
  if (ka && ca == -1.0) return neg(std::move(b));
  if (kb && cb == -1.0) return neg(std::move(a));
  return make(NodeKind::Mul, {std::move(a), std::move(b)});
}

ExprPtr div(ExprPtr a, ExprPtr b) {
  Complex ca, cb;
  const bool ka = is_constant(a, &ca), kb = is_constant(b, &cb);
  if (ka && kb && cb != Complex{}) return constant(ca / cb);
  if (kb && cb == 1.0) return a;
  if (ka && ca == Complex{}) return constant(0.0);
  return make(NodeKind::Div, {std::move(a), std::move(b)});
}

ExprPtr pow(ExprPtr base, ExprPtr exponent) {
  if (is_value(exponent, 1.0)) return base;
  if (is_value(exponent, 0.0)) return constant(1.0);
  return make(NodeKind::Pow, {std::move(base), std::move(exponent)});
}

ExprPtr neg(ExprPtr a) {
  Complex c;
  if (is_constant(a, &c)) return constant(-c);
  if (a->kind == NodeKind::Neg) return a->args[0];
  return make(NodeKind::Neg, {std::move(a)});
}

ExprPtr call(Function fn, ExprPtr arg) {
  return std::make_shared<const Node>(Node{NodeKind::Call, {}, fn, {std::move(arg)}});
}

ExprPtr make_node(NodeKind kind, std::vector<ExprPtr> args) { return make(kind, std::move(args)); }

ExprPtr substitute(const ExprPtr& e, const ExprPtr& replacement) {
  switch (e->kind) {
    case NodeKind::Const: return e;
    case NodeKind::Var: return replacement;
    default: break;
  }
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  bool changed = false;
  for (const auto& a : e->args) {
    args.push_back(substitute(a, replacement));
    changed = changed || args.back() != a;
  }
  if (!changed) return e;
  return std::make_shared<const Node>(Node{e->kind, e->value, e->function, std::move(args)});
}

namespace {

// Closed-form derivative of a catalog primitive, as a tree in w.
ExprPtr builtin_derivative(Function fn, const ExprPtr& w) {
  const ExprPtr one = constant(1.0);
  switch (fn) {
    case Function::Koebe:  // (1+w)/(1-w)^3
      return div(add(one, w), pow(sub(one, w), constant(3.0)));
    case Function::HalfPlane:  // 1/(1-w)^2
      return div(one, pow(sub(one, w), constant(2.0)));
    case Function::Strip:  // 1/(1-w^2)
      return div(one, sub(one, pow(w, constant(2.0))));
    case Function::Q2:  // (1+w^2)/(1-w^2)^2
      return div(add(one, pow(w, constant(2.0))),
                 pow(sub(one, pow(w, constant(2.0))), constant(2.0)));
    default: break;
  }
  return nullptr;
}

}  // namespace

ExprPtr derivative(const ExprPtr& e) {
  const auto& a = e->args;
  switch (e->kind) {
    case NodeKind::Const: return constant(0.0);
    case NodeKind::Var: return constant(1.0);
    case NodeKind::Add: return add(derivative(a[0]), derivative(a[1]));
    case NodeKind::Sub: return sub(derivative(a[0]), derivative(a[1]));
    case NodeKind::Neg: return neg(derivative(a[0]));
    case NodeKind::Mul:
      return add(mul(derivative(a[0]), a[1]), mul(a[0], derivative(a[1])));
    case NodeKind::Div:
      // (u'v - uv') / v^2
      return div(sub(mul(derivative(a[0]), a[1]), mul(a[0], derivative(a[1]))),
                 pow(a[1], constant(2.0)));
    case NodeKind::Pow: {
      Complex c;
      if (is_constant(a[1], &c)) {
        return mul(mul(constant(c), pow(a[0], constant(c - 1.0))), derivative(a[0]));
      }
      // u^v (v' log u + v u'/u)
      return mul(e, add(mul(derivative(a[1]), call(Function::Log, a[0])),
                        div(mul(a[1], derivative(a[0])), a[0])));
    }
    case NodeKind::Call: {
      const ExprPtr& u = a[0];
      const ExprPtr du = derivative(u);
      switch (e->function) {
        case Function::Log: return div(du, u);
        case Function::Exp: return mul(e, du);
        case Function::Sqrt: return div(du, mul(constant(2.0), e));
        default: return mul(builtin_derivative(e->function, u), du);
      }
    }
  }
  return constant(0.0);
}

}  // namespace expr

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse_all() {
    if (text_.empty()) syntax_error("empty expression");
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) syntax_error("unexpected character");
    return e;
  }

 private:
  static ExprPtr node(NodeKind kind, std::vector<ExprPtr> args) {
    return std::make_shared<const Node>(Node{kind, {}, {}, std::move(args)});
  }

  [[noreturn]] void syntax_error(const std::string& what) const { error_at(ErrorCode::SyntaxError, what, pos_); }

  [[noreturn]] static void error_at(ErrorCode code, const std::string& what, std::size_t offset) {
    Error e(code, what + " at offset " + std::to_string(offset));
    e.at_offset(offset);
    throw e;
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) syntax_error(std::string("expected '") + c + "'");
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = node(NodeKind::Add, {lhs, parse_term()});
      } else if (accept('-')) {
        lhs = node(NodeKind::Sub, {lhs, parse_term()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = node(NodeKind::Mul, {lhs, parse_unary()});
      } else if (accept('/')) {
        lhs = node(NodeKind::Div, {lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  // Unary minus binds looser than '^': -z^2 = -(z^2).
  ExprPtr parse_unary() {
    if (accept('-')) return node(NodeKind::Neg, {parse_unary()});
    return parse_power();
  }

  // '^' is right-associative; its exponent may carry a sign.
  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (accept('^')) return node(NodeKind::Pow, {base, parse_unary()});
    return base;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) syntax_error("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    syntax_error("unexpected character");
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) syntax_error("malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) syntax_error("malformed exponent");
    }
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc{} || !std::isfinite(value)) {
      error_at(ErrorCode::SyntaxError, "number out of range", start);
    }
    return expr::constant(value);
  }

  ExprPtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "z") return expr::var();
    if (name == "i") return expr::constant(Complex{0.0, 1.0});
    static constexpr Function kFunctions[] = {Function::Log,       Function::Exp,   Function::Sqrt,
                                              Function::Koebe,     Function::HalfPlane,
                                              Function::Strip,     Function::Q2};
    for (Function fn : kFunctions) {
      if (name == function_name(fn)) {
        expect('(');
        ExprPtr arg = parse_expr();
        expect(')');
        return expr::call(fn, arg);
      }
    }
    error_at(ErrorCode::UnknownIdentifier, "unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// --------------------------------------------------------------- printing

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    case NodeKind::Const: {
      const Complex c = e->value;
      if (c.imag() == 0.0) return std::signbit(c.real()) ? 3 : 5;
      if (c.real() == 0.0) return c.imag() == 1.0 ? 5 : 2;
      return 1;
    }
    default: return 5;
  }
}

std::string print_const(Complex c) {
  if (c.imag() == 0.0) {
    if (std::signbit(c.real())) return "-" + format_real(-c.real());
    return format_real(c.real());
  }
  auto imag_part = [](double b) { return b == 1.0 ? std::string("i") : format_real(b) + "*i"; };
  if (c.real() == 0.0) {
    if (std::signbit(c.imag())) return "-" + imag_part(-c.imag());
    return imag_part(c.imag());
  }
  std::string s = format_real(std::abs(c.real()));
  if (std::signbit(c.real())) s = "-" + s;
  s += std::signbit(c.imag()) ? "-" : "+";
  return s + imag_part(std::abs(c.imag()));
}

void print_into(const ExprPtr& e, int min_prec, std::string& out) {
  const int prec = precedence(e);
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  const auto& a = e->args;
  switch (e->kind) {
    case NodeKind::Const: out += print_const(e->value); break;
    case NodeKind::Var: out += 'z'; break;
    case NodeKind::Add:
    case NodeKind::Sub:
      print_into(a[0], 1, out);
      out += e->kind == NodeKind::Add ? " + " : " - ";
      print_into(a[1], 2, out);
      break;
    case NodeKind::Mul:
    case NodeKind::Div:
      print_into(a[0], 2, out);
      out += e->kind == NodeKind::Mul ? "*" : "/";
      print_into(a[1], 3, out);
      break;
    case NodeKind::Neg:
      out += '-';
      print_into(a[0], 3, out);
      break;
    case NodeKind::Pow:
      print_into(a[0], 5, out);
      out += '^';
      print_into(a[1], 3, out);
      break;
    case NodeKind::Call:
      out += function_name(e->function);
      out += '(';
      print_into(a[0], 0, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

// ------------------------------------------------------------- evaluation

Jet builtin_outer_jet(Function fn, Complex w0, int order) {
  const Jet w = Jet::variable(w0, order);
  const Jet one = Jet::constant(1.0, w0, order);
  switch (fn) {
    case Function::Koebe: return w / pow(one - w, 2L);
    case Function::HalfPlane: return w / (one - w);
    case Function::Strip: return 0.5 * log((one + w) / (one - w));
    case Function::Q2: return w / (one - w * w);
    default: break;
  }
  return one;
}

std::string node_name(const ExprPtr& e) {
  std::string s;
  switch (e->kind) {
    case NodeKind::Add: s = "Add"; break;
    case NodeKind::Sub: s = "Sub"; break;
    case NodeKind::Mul: s = "Mul"; break;
    case NodeKind::Div: s = "Div"; break;
    case NodeKind::Pow: s = "Pow"; break;
    case NodeKind::Neg: s = "Neg"; break;
    case NodeKind::Call: s = std::string(function_name(e->function)); break;
    default: s = "?"; break;
  }
  return s;
}

std::string path_segment(const ExprPtr& e, std::size_t child) {
  return node_name(e) + "[" + std::to_string(child) + "]";
}

Jet eval_child(const ExprPtr& parent, std::size_t child, Complex z0, int order) {
  try {
    return eval_jet(parent->args[child], z0, order);
  } catch (Error& err) {
    err.prepend_path(path_segment(parent, child));
    throw;
  }
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const ExprPtr& e) {
  std::string out;
  print_into(e, 0, out);
  return out;
}

Jet eval_jet(const ExprPtr& e, Complex z0, int order) {
  switch (e->kind) {
    case NodeKind::Const: return Jet::constant(e->value, z0, order);
    case NodeKind::Var: return Jet::variable(z0, order);
    default: break;
  }
  const Jet a = eval_child(e, 0, z0, order);
  auto here = [&](auto&& op) -> Jet {
    try {
      return op();
    } catch (Error& err) {
      err.at(z0);
      err.prepend_path(node_name(e));
      throw;
    }
  };
  switch (e->kind) {
    case NodeKind::Neg: return Jet::constant(0.0, z0, order) - a;
    case NodeKind::Add: return a + eval_child(e, 1, z0, order);
    case NodeKind::Sub: return a - eval_child(e, 1, z0, order);
    case NodeKind::Mul: return a * eval_child(e, 1, z0, order);
    case NodeKind::Div: {
      const Jet b = eval_child(e, 1, z0, order);
      return here([&] { return a / b; });
    }
    case NodeKind::Pow: {
      long n = 0;
      if (e->has_integer_exponent(&n)) return here([&] { return pow(a, n); });
      const Jet b = eval_child(e, 1, z0, order);
      return here([&] { return exp(b * log(a)); });
    }
    case NodeKind::Call:
      return here([&] {
        switch (e->function) {
          case Function::Log: return log(a);
          case Function::Exp: return exp(a);
          case Function::Sqrt: return sqrt(a);
          default: return compose(builtin_outer_jet(e->function, a.value(), order), a);
        }
      });
    default: break;
  }
  return a;
}

AnalyticFunction::AnalyticFunction(ExprPtr tree, std::string domain_note)
    : tree_(std::move(tree)), domain_note_(std::move(domain_note)) {}

AnalyticFunction AnalyticFunction::parse(std::string_view text) {
  return AnalyticFunction(harmonic::parse(text));
}

Jet AnalyticFunction::jet(Complex z0, int order) const {
  if (!is_finite(z0)) fail(ErrorCode::NonFinite, "non-finite evaluation point");
  Jet j = eval_jet(tree_, z0, order);
  for (Complex c : j.coeffs()) {
    if (!is_finite(c)) fail_at(ErrorCode::NonFinite, "non-finite jet coefficient", z0);
  }
  return j;
}

Complex AnalyticFunction::operator()(Complex z0) const { return jet(z0, 0).value(); }

AnalyticFunction AnalyticFunction::derivative() const {
  return AnalyticFunction(expr::derivative(tree_), domain_note_);
}

AnalyticFunction AnalyticFunction::compose(const AnalyticFunction& inner) const {
  return AnalyticFunction(expr::substitute(tree_, inner.tree_), domain_note_);
}

}  // namespace harmonic
