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

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "posform/dsl.hpp"

namespace {

constexpr int kExitQueryError = 1;
constexpr int kExitUsage = 2;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

/// Returns the parsed spec, or prints diagnostics and returns nullopt.
std::optional<posform::dsl::SpecAst> load(const std::string& path) {
  std::string source;
  if (!read_file(path, source)) {
    std::cerr << "posform: cannot read '" << path << "'\n";
    return std::nullopt;
  }
  auto parsed = posform::dsl::parse(source);
  for (const auto& d : parsed.diagnostics) std::cerr << posform::dsl::format_diagnostic(d, path) << "\n";
  if (!parsed.ok()) return std::nullopt;
  return std::move(parsed.ast);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate probe/boundary-condition specs"};
  app.require_subcommand(1);

  std::string file;
  std::vector<std::string> queries;
  std::string format = "text";
  double tolerance = posform::kConeTolerance;

  auto* run = app.add_subcommand("run", "Parse, evaluate and print query results");
  run->add_option("file", file, "Spec file (.pf)")->required();
  run->add_option("--query", queries, "Only report this query (repeatable)");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  run->add_option("--tolerance", tolerance, "Cone, order and quotient-bound tolerance")
      ->check(CLI::PositiveNumber);

  std::string check_file;
  auto* check = app.add_subcommand("check", "Parse and validate only");
  check->add_option("file", check_file, "Spec file (.pf)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "posform: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (*check) {
    return load(check_file) ? 0 : kExitUsage;
  }

  auto ast = load(file);
  if (!ast) return kExitUsage;

  posform::dsl::EvalOptions opts;
  opts.query.tol = tolerance;
  auto records = posform::dsl::eval_spec(*ast, opts);

  int status = 0;
  if (!queries.empty()) {
    std::set<std::string> known;
    for (const auto& r : records) known.insert(r.name);
    for (const auto& q : queries) {
      if (!known.contains(q)) {
        std::cerr << "posform: unknown query '" << q << "'\n";
        status = kExitQueryError;
      }
    }
    const std::set<std::string> wanted(queries.begin(), queries.end());
    std::erase_if(records, [&](const auto& r) { return !wanted.contains(r.name); });
  }

  for (const auto& r : records) {
    if (r.error) status = kExitQueryError;
    for (const auto& d : r.diagnostics) std::cerr << "posform: " << r.name << ": warning: " << d << "\n";
  }
  std::cout << (format == "json" ? posform::dsl::to_json(records) : posform::dsl::to_text(records));
  return status;
}
