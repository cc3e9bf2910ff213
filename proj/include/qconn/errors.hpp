// Copyright 2026 The qconn authors
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

#include <stdexcept>
#include <string>

namespace qconn {

/// Machine-checkable failure categories. `io_error` maps to process exit
/// code 2 in the CLI; everything else is a validation failure (exit code 1).
enum class errc {
  concurrence_out_of_range,
  duplicate_edge,
  duplicate_node,
  self_loop,
  dangling_endpoint,
  unknown_node,
  same_node,
  subset_too_small,
  empty_table,
  degree_too_small,
  missing_positions,
  inconsistent_partition,
  invalid_pmf,
  invalid_parameter,
  parse_error,
  io_error,
};

constexpr const char* to_string(errc c) noexcept {
  switch (c) {
    case errc::concurrence_out_of_range: return "concurrence_out_of_range";
    case errc::duplicate_edge: return "duplicate_edge";
    case errc::duplicate_node: return "duplicate_node";
    case errc::self_loop: return "self_loop";
    case errc::dangling_endpoint: return "dangling_endpoint";
    case errc::unknown_node: return "unknown_node";
    case errc::same_node: return "same_node";
    case errc::subset_too_small: return "subset_too_small";
    case errc::empty_table: return "empty_table";
    case errc::degree_too_small: return "degree_too_small";
    case errc::missing_positions: return "missing_positions";
    case errc::inconsistent_partition: return "inconsistent_partition";
    case errc::invalid_pmf: return "invalid_pmf";
    case errc::invalid_parameter: return "invalid_parameter";
    case errc::parse_error: return "parse_error";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

namespace detail {
inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) throw Error(code, what);
}
}  // namespace detail

}  // namespace qconn
