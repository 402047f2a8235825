// Copyright 2026 The qdn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdn/expr.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "qdn/errors.hpp"

namespace qdn {

struct Expr::Node {
  ExprKind kind = ExprKind::kLiteral;
  std::complex<double> value{};
  std::string name;
  ExprFunction function = ExprFunction::kSin;
  std::vector<Expr> children;
};

Expr::Expr() : Expr(std::make_shared<const Node>()) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::literal(std::complex<double> value) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kLiteral;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::imaginary_unit() {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kImaginaryUnit;
  return Expr(std::move(n));
}

Expr Expr::parameter(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kParameter;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kNegate;
  n->children = {std::move(operand)};
  return Expr(std::move(n));
}

Expr Expr::sum(Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kSum;
  n->children = {std::move(lhs), std::move(rhs)};
  return Expr(std::move(n));
}

Expr Expr::product(Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kProduct;
  n->children = {std::move(lhs), std::move(rhs)};
  return Expr(std::move(n));
}

Expr Expr::quotient(Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kQuotient;
  n->children = {std::move(lhs), std::move(rhs)};
  return Expr(std::move(n));
}

Expr Expr::apply(ExprFunction fn, Expr argument) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kFunction;
  n->function = fn;
  n->children = {std::move(argument)};
  return Expr(std::move(n));
}

ExprKind Expr::kind() const noexcept { return node_->kind; }
std::complex<double> Expr::value() const noexcept { return node_->value; }
const std::string& Expr::name() const noexcept { return node_->name; }
ExprFunction Expr::function() const noexcept { return node_->function; }
std::size_t Expr::arity() const noexcept { return node_->children.size(); }
const Expr& Expr::child(std::size_t k) const { return node_->children.at(k); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case ExprKind::kLiteral:
      return x.value == y.value;
    case ExprKind::kImaginaryUnit:
      return true;
    case ExprKind::kParameter:
      return x.name == y.name;
    case ExprKind::kFunction:
      if (x.function != y.function) return false;
      break;
    default:
      break;
  }
  return x.children == y.children;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum(a, b); }
Expr operator-(const Expr& a, const Expr& b) {
  return Expr::sum(a, Expr::negate(b));
}
Expr operator*(const Expr& a, const Expr& b) { return Expr::product(a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::quotient(a, b); }
Expr operator-(const Expr& a) { return Expr::negate(a); }

Expr sin(const Expr& x) { return Expr::apply(ExprFunction::kSin, x); }
Expr cos(const Expr& x) { return Expr::apply(ExprFunction::kCos, x); }
Expr sqrt(const Expr& x) { return Expr::apply(ExprFunction::kSqrt, x); }
Expr cis(const Expr& x) { return Expr::apply(ExprFunction::kCis, x); }

const char* function_name(ExprFunction fn) {
  switch (fn) {
    case ExprFunction::kSin:
      return "sin";
    case ExprFunction::kCos:
      return "cos";
    case ExprFunction::kSqrt:
      return "sqrt";
    case ExprFunction::kCis:
      return "cis";
  }
  return "?";
}

std::complex<double> eval(const Expr& expr, const Binding& binding) {
  using C = std::complex<double>;
  switch (expr.kind()) {
    case ExprKind::kLiteral:
      return expr.value();
    case ExprKind::kImaginaryUnit:
      return {0.0, 1.0};
    case ExprKind::kParameter: {
      auto it = binding.find(expr.name());
      if (it == binding.end()) throw MissingBinding(expr.name());
      return {it->second, 0.0};
    }
    case ExprKind::kNegate:
      return -eval(expr.child(0), binding);
    case ExprKind::kSum:
      return eval(expr.child(0), binding) + eval(expr.child(1), binding);
    case ExprKind::kProduct:
      return eval(expr.child(0), binding) * eval(expr.child(1), binding);
    case ExprKind::kQuotient: {
      const C den = eval(expr.child(1), binding);
      if (den == C{}) throw DomainError("division by zero");
      return eval(expr.child(0), binding) / den;
    }
    case ExprKind::kFunction: {
      const C x = eval(expr.child(0), binding);
      switch (expr.function()) {
        case ExprFunction::kSin:
          return std::sin(x);
        case ExprFunction::kCos:
          return std::cos(x);
        case ExprFunction::kSqrt:
          if (x.imag() == 0.0 && x.real() < 0.0) {
            throw DomainError("sqrt of negative value " +
                              std::to_string(x.real()));
          }
          return std::sqrt(x);
        case ExprFunction::kCis:
          return std::exp(C{0.0, 1.0} * x);
      }
    }
  }
  return {};
}

namespace {

void collect(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == ExprKind::kParameter) out.insert(e.name());
  for (std::size_t k = 0; k < e.arity(); ++k) collect(e.child(k), out);
}

std::string format_real(double v) {
  if (v == std::numbers::pi) return "pi";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

// Binding strength of the printed form; atoms are 4.
int precedence(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::kSum:
      return 1;
    case ExprKind::kProduct:
    case ExprKind::kQuotient:
      return 2;
    case ExprKind::kNegate:
      return 3;
    case ExprKind::kLiteral:
      return e.value().imag() != 0.0 ? 1 : 4;
    default:
      return 4;
  }
}

void print(const Expr& e, int min_prec, std::string& out);

void print_child(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print(e, 0, out);
    out += ')';
  } else {
    print(e, 0, out);
  }
}

void print(const Expr& e, int /*min_prec*/, std::string& out) {
  switch (e.kind()) {
    case ExprKind::kLiteral: {
      const auto v = e.value();
      if (v.imag() == 0.0) {
        out += format_real(v.real());
      } else {
        out += format_real(v.real());
        out += " + ";
        out += format_real(v.imag());
        out += "*i";
      }
      return;
    }
    case ExprKind::kImaginaryUnit:
      out += 'i';
      return;
    case ExprKind::kParameter:
      out += e.name();
      return;
    case ExprKind::kNegate: {
      const Expr& x = e.child(0);
      out += '-';
      if (x.kind() == ExprKind::kLiteral) {
        // "-2" would parse back as a negative literal
        out += '(';
        print(x, 0, out);
        out += ')';
      } else {
        print_child(x, 3, out);
      }
      return;
    }
    case ExprKind::kSum: {
      print_child(e.child(0), 1, out);
      const Expr& rhs = e.child(1);
      if (rhs.kind() == ExprKind::kNegate) {
        out += " - ";
        print_child(rhs.child(0), 2, out);
      } else {
        out += " + ";
        print_child(rhs, 2, out);
      }
      return;
    }
    case ExprKind::kProduct:
    case ExprKind::kQuotient:
      print_child(e.child(0), 2, out);
      out += e.kind() == ExprKind::kProduct ? '*' : '/';
      print_child(e.child(1), 3, out);
      return;
    case ExprKind::kFunction:
      out += function_name(e.function());
      out += '(';
      print(e.child(0), 0, out);
      out += ')';
      return;
  }
}

}  // namespace

std::set<std::string> parameters_of(const Expr& expr) {
  std::set<std::string> names;
  collect(expr, names);
  return names;
}

std::string to_string(const Expr& expr) {
  std::string out;
  print(expr, 0, out);
  return out;
}

}  // namespace qdn
