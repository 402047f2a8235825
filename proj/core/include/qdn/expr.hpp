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

#pragma once

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace qdn {

// Parameter name -> real value.
using Binding = std::map<std::string, double>;

enum class ExprKind {
  kLiteral,
  kImaginaryUnit,
  kParameter,
  kNegate,
  kSum,
  kProduct,
  kQuotient,
  kFunction,
};

enum class ExprFunction { kSin, kCos, kSqrt, kCis };

/// Amplitude expression over named real parameters. Trees are immutable and
/// share structure, so copies are cheap.
class Expr {
 public:
  // Default-constructed expression is the literal 0.
  Expr();

  static Expr literal(std::complex<double> value);
  static Expr literal(double value) { return literal(std::complex<double>(value, 0.0)); }
  static Expr imaginary_unit();
  static Expr parameter(std::string name);
  static Expr negate(Expr operand);
  static Expr sum(Expr lhs, Expr rhs);
  static Expr product(Expr lhs, Expr rhs);
  static Expr quotient(Expr lhs, Expr rhs);
  static Expr apply(ExprFunction fn, Expr argument);

  ExprKind kind() const noexcept;
  std::complex<double> value() const noexcept;  // kLiteral only
  const std::string& name() const noexcept;     // kParameter only
  ExprFunction function() const noexcept;       // kFunction only
  std::size_t arity() const noexcept;
  const Expr& child(std::size_t k) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

Expr sin(const Expr& x);
Expr cos(const Expr& x);
Expr sqrt(const Expr& x);
Expr cis(const Expr& x);  // e^{ix}

// Evaluates under `binding`. Throws MissingBinding for an unbound parameter
// and DomainError for sqrt of a negative real or division by zero.
std::complex<double> eval(const Expr& expr, const Binding& binding);

std::set<std::string> parameters_of(const Expr& expr);

// Surface syntax accepted by the network parser. Trees produced by the
// parser print back to text that parses to an identical tree.
std::string to_string(const Expr& expr);

const char* function_name(ExprFunction fn);

}  // namespace qdn
