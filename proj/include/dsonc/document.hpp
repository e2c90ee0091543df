#pragma once

// JSON document format shared by the command-line tool and the bindings.
//
//   {"n": 2, "mode": "exp", "terms": [{"c": 1.0, "e": ["4", "2"]}, ...]}
//
// Exponents are strings holding exact rationals and are kept verbatim so a
// load/save cycle reproduces the input. Optional keys: "split", "ambient",
// "delta" (see README). Every failure is a ParseError carrying the 1-based
// line and column of the offending value.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsonc/cones.hpp"
#include "dsonc/geometry.hpp"
#include "dsonc/signomial.hpp"

namespace dsonc {

enum class ExponentMode { Exp, Poly };

std::string_view to_string(ExponentMode mode);

struct DocumentTerm {
  double c = 0.0;
  std::vector<std::string> e;

  friend bool operator==(const DocumentTerm&, const DocumentTerm&) = default;
};

struct SignomialDocument {
  std::size_t n = 0;
  ExponentMode mode = ExponentMode::Exp;
  std::vector<DocumentTerm> terms;

  // Typed views of optional keys.
  std::optional<SplitPolicy> split;
  std::optional<std::vector<Point>> ambient;
  std::optional<std::vector<Point>> delta;
  // Non-core keys serialized verbatim, "{}" when absent.
  std::string extras_json = "{}";

  Signomial to_signomial() const;
  static SignomialDocument from_signomial(const Signomial& f, ExponentMode mode = ExponentMode::Exp);

  friend bool operator==(const SignomialDocument& a, const SignomialDocument& b) {
    return a.n == b.n && a.mode == b.mode && a.terms == b.terms && a.extras_json == b.extras_json;
  }
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

SignomialDocument parse_document(std::string_view text);
SignomialDocument load_document(const std::filesystem::path& path);
std::string dump_document(const SignomialDocument& doc);
void save_document(const std::filesystem::path& path, const SignomialDocument& doc);

// {"pieces": [{"inner": [...], "shares": [{"e": [...], "fraction": x}]}]} or "uniform".
SplitPolicy parse_split(std::string_view text);

// {"n": 2, "vertices": [[...], ...], "inner": [...]} or a signomial document
// whose support is a simplicial circuit.
Circuit parse_circuit(std::string_view text);

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset);

}  // namespace dsonc
