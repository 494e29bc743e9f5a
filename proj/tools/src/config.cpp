#include "galt_cli/config.hpp"

#include <set>

#include <json.hpp>

#include "galt/csv.hpp"
#include "galt/error.hpp"

namespace galt::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& name, const std::string& message) {
  throw Error(ErrorClass::Config, name, message);
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail("InvalidConfig", where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail("UnknownKey", "unknown key '" + key + "' in " + where);
    }
  }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail("InvalidConfig", std::string("bad value for '") + key + "' in " + where);
  }
}

std::string required_string(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_string() || obj.at(key).get<std::string>().empty()) {
    fail("InvalidConfig", std::string("'") + key + "' (non-empty string) is required in " + where);
  }
  return obj.at(key).get<std::string>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& entry) {
  std::filesystem::path p(entry);
  if (p.is_relative()) p = base / p;
  if (!std::filesystem::is_regular_file(p)) {
    throw Error(ErrorClass::Io, "FileNotFound", "input file not found: " + entry);
  }
  return p;
}

std::vector<std::string> string_list(const json& obj, const char* key, const std::string& where) {
  auto out = get_or<std::vector<std::string>>(obj, key, {}, where);
  std::set<std::string> seen;
  for (const auto& s : out) {
    if (!seen.insert(s).second) fail("DuplicateName", "'" + s + "' listed twice in " + where);
  }
  return out;
}

VariableSpec parse_variable(const json& v, std::size_t index) {
  const std::string where = "variables[" + std::to_string(index) + "]";
  check_keys(v, where, {"name", "kind", "standardize", "invert_scale", "categories"});
  VariableSpec spec;
  spec.name = required_string(v, "name", where);
  const auto kind = get_or<std::string>(v, "kind", "quantitative", where);
  if (kind == "quantitative") {
    spec.kind = VariableKind::Quantitative;
  } else if (kind == "categorical") {
    spec.kind = VariableKind::Categorical;
  } else {
    fail("InvalidConfig", "kind must be 'quantitative' or 'categorical' in " + where);
  }
  spec.standardize = get_or<bool>(v, "standardize", false, where);
  if (v.contains("invert_scale")) spec.invert_scale = get_or<double>(v, "invert_scale", 0.0, where);
  spec.categories = string_list(v, "categories", where);
  // Categories may be left out and filled from the data later.
  VariableSpec probe = spec;
  if (probe.kind == VariableKind::Categorical && probe.categories.empty()) probe.categories = {"?"};
  probe.validate();
  return spec;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("ConfigParse", e.what());
  }
  check_keys(root, "config",
             {"samples", "tokenizer", "variables", "supplementary", "max_axes", "rel_tol", "n_permutations", "seed",
              "threads", "output"});

  RunConfig cfg;
  if (!root.contains("samples") || !root["samples"].is_array() || root["samples"].empty()) {
    fail("InvalidConfig", "'samples' must be a non-empty array");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < root["samples"].size(); ++i) {
    const auto& s = root["samples"][i];
    const std::string where = "samples[" + std::to_string(i) + "]";
    check_keys(s, where, {"name", "language", "responses", "scores", "stopwords", "min_count"});
    SampleConfig sc;
    sc.name = required_string(s, "name", where);
    if (!names.insert(sc.name).second) fail("DuplicateName", "sample '" + sc.name + "' defined twice");
    sc.language = get_or<std::string>(s, "language", "", where);
    sc.responses_entry = required_string(s, "responses", where);
    sc.scores_entry = required_string(s, "scores", where);
    sc.responses = resolve(base_dir, sc.responses_entry);
    sc.scores = resolve(base_dir, sc.scores_entry);
    if (s.contains("stopwords")) {
      sc.stopwords_entry = required_string(s, "stopwords", where);
      sc.stopwords = resolve(base_dir, sc.stopwords_entry);
    }
    sc.min_count = get_or<std::int64_t>(s, "min_count", 1, where);
    if (sc.min_count < 1) fail("InvalidConfig", "min_count must be at least 1 in " + where);
    cfg.samples.push_back(std::move(sc));
  }

  if (root.contains("tokenizer")) {
    const auto& t = root["tokenizer"];
    check_keys(t, "tokenizer", {"lowercase", "strip_punctuation", "min_token_chars"});
    cfg.tokenizer.lowercase = get_or<bool>(t, "lowercase", true, "tokenizer");
    cfg.tokenizer.strip_punctuation = get_or<bool>(t, "strip_punctuation", true, "tokenizer");
    const auto min_chars = get_or<std::int64_t>(t, "min_token_chars", 1, "tokenizer");
    if (min_chars < 1) fail("InvalidConfig", "tokenizer.min_token_chars must be at least 1");
    cfg.tokenizer.min_token_chars = static_cast<std::size_t>(min_chars);
  }

  if (!root.contains("variables") || !root["variables"].is_array() || root["variables"].empty()) {
    fail("InvalidConfig", "'variables' must be a non-empty array");
  }
  std::set<std::string> variables;
  for (std::size_t i = 0; i < root["variables"].size(); ++i) {
    cfg.variables.push_back(parse_variable(root["variables"][i], i));
    if (!variables.insert(cfg.variables.back().name).second) {
      fail("DuplicateName", "variable '" + cfg.variables.back().name + "' defined twice");
    }
  }
  if (root.contains("supplementary")) {
    if (!root["supplementary"].is_array()) fail("InvalidConfig", "'supplementary' must be an array");
    for (std::size_t i = 0; i < root["supplementary"].size(); ++i) {
      const auto& s = root["supplementary"][i];
      const std::string where = "supplementary[" + std::to_string(i) + "]";
      check_keys(s, where, {"name", "categories"});
      SupplementarySpec spec{required_string(s, "name", where), string_list(s, "categories", where)};
      if (!variables.insert(spec.name).second) fail("DuplicateName", "variable '" + spec.name + "' defined twice");
      cfg.supplementary.push_back(std::move(spec));
    }
  }

  cfg.max_axes = get_or<Eigen::Index>(root, "max_axes", cfg.max_axes, "config");
  if (cfg.max_axes < 1) fail("InvalidConfig", "max_axes must be at least 1");
  cfg.rel_tol = get_or<double>(root, "rel_tol", cfg.rel_tol, "config");
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0)) fail("InvalidConfig", "rel_tol must lie in (0, 1)");
  cfg.n_permutations = get_or<std::size_t>(root, "n_permutations", cfg.n_permutations, "config");
  if (cfg.n_permutations < 99) fail("InvalidConfig", "n_permutations must be at least 99");
  cfg.seed = get_or<std::uint64_t>(root, "seed", cfg.seed, "config");
  cfg.threads = get_or<unsigned>(root, "threads", cfg.threads, "config");
  if (cfg.threads < 1) fail("InvalidConfig", "threads must be at least 1");
  const auto output = get_or<std::string>(root, "output", cfg.output.string(), "config");
  cfg.output = std::filesystem::path(output).is_relative() ? base_dir / output : std::filesystem::path(output);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  const auto text = csv::read_text_file(path);
  return parse_config(text, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

}  // namespace galt::cli
