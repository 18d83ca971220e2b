// Copyright 2026 The capot Authors
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

#ifndef CAPOT_IO_HPP_
#define CAPOT_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "capot/error.hpp"
#include "capot/grid.hpp"
#include "capot/potentials.hpp"

namespace capot {

// Malformed input text; the message names the offending field or line.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kProblemSchemaVersion = 1;

// Problem document:
//   {"version": 1, "m": M, "n": N,
//    "weights_x": [...]?, "weights_y": [...]?,   default uniform
//    "f": [...], "g": [...],
//    "hbar": scalar | matrix,
//    "s": matrix | {"builtin": "product" | "neg_sq_dist"},
//    "eta": real?}                                default 2
// Matrices are row-major, either nested (M arrays of N) or flat (M * N).
Problem parse_problem_json(std::string_view text);
Problem read_problem_json(const std::filesystem::path& path);

// Writes every field explicitly with round-trip precision.
std::string format_problem_json(const Problem& problem);
void write_problem_json(const std::filesystem::path& path, const Problem& problem);

// Headerless row-major CSV, 17 significant digits.
std::string format_matrix_csv(const Matrix& matrix);
Matrix parse_matrix_csv(std::string_view text);
Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& matrix);

// Accepts {"u": [...], "v": [...]} or a report carrying the same object
// under "potentials".
DualPotentials parse_potentials_json(std::string_view text, const Problem& problem);
DualPotentials read_potentials_json(const std::filesystem::path& path,
                                    const Problem& problem);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace capot

#endif  // CAPOT_IO_HPP_
