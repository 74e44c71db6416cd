#pragma once

#include "bsym/closedform.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace bsym {

/// Serialized problem: a JSON object with exactly the keys "a", "b", "n", "d"
/// and, on partner files, an optional "relation".
struct ProblemFile {
  std::string a;
  std::string b;
  std::string n;
  std::string d;
  std::optional<std::string> relation;
};

/// Throws InputError on malformed JSON, missing or unknown keys.
ProblemFile parse_problem_json(std::string_view text);
ProblemFile read_problem_file(const std::filesystem::path& path);

/// Parses each field. Throws SyntaxError, InputError or DomainError.
ProblemSpec to_spec(const ProblemFile& file);
ProblemFile to_file(const ProblemSpec& spec, std::optional<std::string> relation = std::nullopt);

/// Compact JSON with keys in the order a, b, n, d, relation.
std::string to_json(const ProblemFile& file);

/// Locale-independent decimal parse of the whole string. Throws InputError.
double parse_real(std::string_view text);

/// 17 significant digits, '.' separator, no locale.
std::string format_real(double v);

/// Shortest text that parses back to the same double.
std::string format_shortest(double v);

} // namespace bsym
