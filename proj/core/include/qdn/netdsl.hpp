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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdn/errors.hpp"
#include "qdn/expr.hpp"
#include "qdn/network.hpp"

namespace qdn {

// Parser for the line-oriented .qdn network description language:
//
//   network franson_i
//   param theta1, phi1
//   stage 0 suo 1 rank 1
//     basis s1@{1}
//   init
//     term 1*s1@{1}
//   map 0 -> 1
//     rule s1@{1} => cos(theta1)*s1@{1} + i*sin(theta1)*cis(phi1)*s1@{2}
//
// '#' starts a comment. An omitted SUO index ("@{1,2}") means s1 and is only
// accepted on stages whose SUO dimension is 1.

struct ParseResult {
  std::optional<NetworkDescription> network;
  std::vector<Diagnostic> diagnostics;  // errors and warnings, in line order

  bool ok() const { return network.has_value(); }
};

// On success the network has passed validate(); its warnings are kept in
// `diagnostics`. On failure there is at least one positioned error.
ParseResult parse_network(std::string_view source_text);

// Renders a network in the surface syntax; parse_network(format_network(n))
// reproduces n.
std::string format_network(const NetworkDescription& network);

class ExprSyntaxError : public Error {
 public:
  ExprSyntaxError(int column, const std::string& message)
      : Error("column " + std::to_string(column) + ": " + message),
        column_(column) {}
  int column() const noexcept { return column_; }

 private:
  int column_;
};

// Single expression in the surface syntax, e.g. "pi/4" or "cos(theta)".
Expr parse_expr(std::string_view text);

}  // namespace qdn
