// Copyright 2026 The posform Authors
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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posform/probe.hpp"

namespace posform::dsl {

struct Value {
  enum class Kind { Number, Ident, List, Complex };

  Kind kind = Kind::Number;
  double number = 0.0;
  std::complex<double> complex;
  std::string ident;
  std::vector<Value> items;
  int line = 0;
  int column = 0;
};

struct Field {
  std::string key;
  Value value;
  int line = 0;
  int column = 0;
};

enum class DeclKind { Space, Atom, Region, Probe, Bc, Glue, Query };

std::string_view to_string(DeclKind kind) noexcept;

struct Declaration {
  DeclKind kind = DeclKind::Space;
  std::string name;
  int line = 0;
  int column = 0;
  std::vector<Field> fields;

  const Field* find(std::string_view key) const;
};

struct SpecAst {
  std::vector<Declaration> declarations;
};

struct Diagnostic {
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  int line = 0;
  int column = 0;
  std::string message;
};

struct ParseResult {
  SpecAst ast;
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept;
};

/// Size limits enforced during validation.
inline constexpr std::size_t kMaxQuantumDim = 16;
inline constexpr std::size_t kMaxStates = 256;
inline constexpr std::size_t kMaxNesting = 32;

/// Parses and validates a spec. Never throws on malformed input; every
/// problem becomes a diagnostic and parsing resumes at the next declaration.
ParseResult parse(std::string_view source);

std::string format_diagnostic(const Diagnostic& d, std::string_view file = {});

struct QueryRecord {
  std::string name;
  std::string kind;
  std::optional<double> numerator;
  std::optional<double> denominator;
  std::optional<double> quotient;
  std::optional<std::string> error;
  std::vector<std::string> diagnostics;
};

struct EvalOptions {
  QueryOptions query;
};

/// Executes the declarations in order and answers every query. Engine errors
/// land in the affected records; evaluation continues.
std::vector<QueryRecord> eval_spec(const SpecAst& ast, const EvalOptions& opts = {});

/// JSON array of {name, kind, numerator, denominator, quotient, error};
/// numbers carry 17 significant digits.
std::string to_json(const std::vector<QueryRecord>& records);
/// One line per record: `NAME: quotient (numerator/denominator)`.
std::string to_text(const std::vector<QueryRecord>& records);

}  // namespace posform::dsl
