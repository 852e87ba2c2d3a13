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

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "posform/dsl.hpp"

namespace posform::dsl {

namespace {

std::string number(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", *x);
  return buf;
}

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string to_json(const std::vector<QueryRecord>& records) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    os << (i ? ",\n  " : "\n  ") << "{\"name\": " << quoted(r.name) << ", \"kind\": " << quoted(r.kind)
       << ", \"numerator\": " << number(r.numerator) << ", \"denominator\": " << number(r.denominator)
       << ", \"quotient\": " << number(r.quotient)
       << ", \"error\": " << (r.error ? quoted(*r.error) : "null") << "}";
  }
  os << (records.empty() ? "]\n" : "\n]\n");
  return os.str();
}

std::string to_text(const std::vector<QueryRecord>& records) {
  std::ostringstream os;
  for (const auto& r : records) {
    os << r.name << ": ";
    if (r.error) {
      os << "error " << *r.error;
      if (r.numerator && r.denominator) {
        os << " (" << number(r.numerator) << "/" << number(r.denominator) << ")";
      }
    } else {
      os << number(r.quotient) << " (" << number(r.numerator) << "/" << number(r.denominator) << ")";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace posform::dsl
