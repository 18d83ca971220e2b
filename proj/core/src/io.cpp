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

#include "capot/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace capot {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

double to_number(const json& value, const std::string& where) {
  if (!value.is_number()) throw ParseError(where + ": expected a number");
  return value.get<double>();
}

std::size_t to_count(const json& value, const char* name) {
  if (!value.is_number_integer() || value.get<long long>() <= 0) {
    throw ParseError(std::string("field '") + name + "': expected a positive integer");
  }
  return value.get<std::size_t>();
}

std::vector<double> to_vector(const json& value, const char* name, std::size_t expected) {
  if (!value.is_array()) throw ParseError(std::string("field '") + name + "': expected an array");
  if (value.size() != expected) {
    throw ParseError(std::string("field '") + name + "': expected " +
                     std::to_string(expected) + " entries, found " +
                     std::to_string(value.size()));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t k = 0; k < value.size(); ++k) {
    out.push_back(to_number(value[k], std::string("field '") + name + "'[" +
                                          std::to_string(k) + "]"));
  }
  return out;
}

Matrix to_matrix(const json& value, const char* name, std::size_t m, std::size_t n) {
  const std::string label = std::string("field '") + name + "'";
  if (!value.is_array()) throw ParseError(label + ": expected a matrix");
  Matrix out(m, n);
  if (!value.empty() && value[0].is_array()) {
    if (value.size() != m) {
      throw ParseError(label + ": expected " + std::to_string(m) + " rows, found " +
                       std::to_string(value.size()));
    }
    for (std::size_t i = 0; i < m; ++i) {
      const json& row = value[i];
      if (!row.is_array() || row.size() != n) {
        throw ParseError(label + " row " + std::to_string(i) + ": expected " +
                         std::to_string(n) + " entries");
      }
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) = to_number(row[j], label + "[" + std::to_string(i) + "][" +
                                          std::to_string(j) + "]");
      }
    }
    return out;
  }
  if (value.size() != m * n) {
    throw ParseError(label + ": expected " + std::to_string(m * n) +
                     " entries in row-major order, found " + std::to_string(value.size()));
  }
  for (std::size_t k = 0; k < m * n; ++k) {
    out.data()[k] = to_number(value[k], label + "[" + std::to_string(k) + "]");
  }
  return out;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

// Wraps library validation errors with the field that produced them.
template <typename Fn>
auto with_context(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Problem parse_problem_json(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("problem document must be a JSON object");
  const json& version = field(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != kProblemSchemaVersion) {
    throw ParseError("field 'version': expected " + std::to_string(kProblemSchemaVersion));
  }
  const std::size_t m = to_count(field(doc, "m"), "m");
  const std::size_t n = to_count(field(doc, "n"), "n");

  const auto make_axis = [&](const char* name, std::size_t count) {
    return with_context(name, [&] {
      return doc.contains(name) ? Axis(to_vector(doc[name], name, count))
                                : Axis::uniform(count);
    });
  };
  Axis ax = make_axis("weights_x", m);
  Axis ay = make_axis("weights_y", n);

  Marginal fx = with_context("field 'f'", [&] {
    return Marginal(ax, to_vector(field(doc, "f"), "f", m));
  });
  Marginal gy = with_context("field 'g'", [&] {
    return Marginal(ay, to_vector(field(doc, "g"), "g", n));
  });

  const json& hbar_doc = field(doc, "hbar");
  Kernel hbar = with_context("field 'hbar'", [&] {
    if (hbar_doc.is_number()) {
      return Kernel::constant(m, n, hbar_doc.get<double>(), KernelKind::kCapacity);
    }
    return Kernel(to_matrix(hbar_doc, "hbar", m, n), KernelKind::kCapacity);
  });

  const json& s_doc = field(doc, "s");
  Kernel s = with_context("field 's'", [&] {
    if (s_doc.is_object()) {
      const json& name = field(s_doc, "builtin");
      if (!name.is_string()) throw ParseError("field 's.builtin': expected a string");
      return builtin_surplus(name.get<std::string>(), ax, ay);
    }
    return Kernel(to_matrix(s_doc, "s", m, n), KernelKind::kSurplus);
  });

  const double eta = doc.contains("eta") ? to_number(doc["eta"], "field 'eta'") : kDefaultEta;
  return with_context("problem", [&] {
    return Problem(std::move(fx), std::move(gy), std::move(hbar), std::move(s), eta);
  });
}

Problem read_problem_json(const std::filesystem::path& path) {
  return parse_problem_json(read_text_file(path));
}

std::string format_problem_json(const Problem& problem) {
  json doc;
  doc["version"] = kProblemSchemaVersion;
  doc["m"] = problem.m();
  doc["n"] = problem.n();
  const auto span_vec = [](std::span<const double> s) {
    return std::vector<double>(s.begin(), s.end());
  };
  doc["weights_x"] = span_vec(problem.x().axis().weights());
  doc["weights_y"] = span_vec(problem.y().axis().weights());
  doc["f"] = span_vec(problem.x().density());
  doc["g"] = span_vec(problem.y().density());
  doc["hbar"] = matrix_json(problem.hbar().values());
  doc["s"] = matrix_json(problem.s().values());
  doc["eta"] = problem.eta();
  return doc.dump(2) + "\n";
}

void write_problem_json(const std::filesystem::path& path, const Problem& problem) {
  write_text_file(path, format_problem_json(problem));
}

std::string format_matrix_csv(const Matrix& matrix) {
  std::string out;
  char buf[40];
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", matrix(i, j));
      if (j > 0) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Matrix parse_matrix_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      double x;
      try {
        x = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw ParseError("csv line " + std::to_string(line_no) + ": '" + cell +
                         "' is not a number");
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) {
        throw ParseError("csv line " + std::to_string(line_no) + ": '" + cell +
                         "' is not a number");
      }
      row.push_back(x);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("csv line " + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " columns, found " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("csv has no rows");
  Matrix out(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) out(i, j) = rows[i][j];
  }
  return out;
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  return parse_matrix_csv(read_text_file(path));
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& matrix) {
  write_text_file(path, format_matrix_csv(matrix));
}

DualPotentials parse_potentials_json(std::string_view text, const Problem& problem) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("potentials document must be a JSON object");
  const json& body = doc.contains("u") ? doc : field(doc, "potentials");
  return DualPotentials(to_vector(field(body, "u"), "u", problem.m()),
                        to_vector(field(body, "v"), "v", problem.n()), problem);
}

DualPotentials read_potentials_json(const std::filesystem::path& path,
                                    const Problem& problem) {
  return parse_potentials_json(read_text_file(path), problem);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace capot
