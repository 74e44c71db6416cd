#include "bsym/problem_io.hpp"

#include "bsym/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace bsym {

namespace {

std::string field_text(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_shortest(v.get<double>());
  throw InputError("problem key \"" + key + "\" must be a string or number");
}

} // namespace

ProblemFile parse_problem_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed problem JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("problem file must hold a JSON object");
  ProblemFile f;
  bool seen[4] = {false, false, false, false};
  for (const auto& [key, value] : j.items()) {
    if (key == "a") {
      f.a = field_text(value, key);
      seen[0] = true;
    } else if (key == "b") {
      f.b = field_text(value, key);
      seen[1] = true;
    } else if (key == "n") {
      f.n = field_text(value, key);
      seen[2] = true;
    } else if (key == "d") {
      f.d = field_text(value, key);
      seen[3] = true;
    } else if (key == "relation") {
      if (!value.is_string()) throw InputError("problem key \"relation\" must be a string");
      f.relation = value.get<std::string>();
    } else {
      throw InputError("unknown problem key \"" + key + "\"");
    }
  }
  const char* names[4] = {"a", "b", "n", "d"};
  for (int i = 0; i < 4; ++i)
    if (!seen[i]) throw InputError(std::string("problem file is missing key \"") + names[i] + "\"");
  return f;
}

ProblemFile read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_json(buf.str());
}

ProblemSpec to_spec(const ProblemFile& file) {
  return make_problem(parse_expr(file.a), parse_expr(file.b), parse_exponent(file.n), parse_real(file.d));
}

ProblemFile to_file(const ProblemSpec& spec, std::optional<std::string> relation) {
  return {print(spec.a), print(spec.b), to_string(spec.n), format_shortest(spec.d), std::move(relation)};
}

std::string to_json(const ProblemFile& file) {
  nlohmann::ordered_json j;
  j["a"] = file.a;
  j["b"] = file.b;
  j["n"] = file.n;
  j["d"] = file.d;
  if (file.relation) j["relation"] = *file.relation;
  return j.dump();
}

double parse_real(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v))
    throw InputError("malformed real number '" + std::string(text) + "'");
  return v;
}

std::string format_real(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, end);
}

std::string format_shortest(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

} // namespace bsym
