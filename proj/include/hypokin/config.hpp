#pragma once

// Experiment configuration: a flat, typed, sectioned key-value format with a
// strict schema. Unknown keys are rejected with their line number, values are
// type-checked, and serialize/parse round-trips losslessly.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hypokin/common.hpp"

namespace hypokin {

enum class FieldType { integer, real, real_list, text };

struct SchemaField {
  std::string section;  // "" for top level
  std::string key;
  FieldType type;
  bool required = true;
};

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  std::map<std::string, long> ints;
  std::map<std::string, double> reals;
  std::map<std::string, std::vector<double>> lists;
  std::map<std::string, std::string> texts;

  long get_int(const std::string& k) const { return ints.at(k); }
  double get_real(const std::string& k) const { return reals.at(k); }
  const std::vector<double>& get_list(const std::string& k) const { return lists.at(k); }
  std::string get_text(const std::string& k, const std::string& fallback = "") const {
    auto it = texts.find(k);
    return it == texts.end() ? fallback : it->second;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

inline std::string qualified(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

}  // namespace detail

/// the schema of each experiment kind; grid and seed fields are shared
inline std::vector<SchemaField> config_schema(const std::string& experiment) {
  std::vector<SchemaField> s = {
      {"", "experiment", FieldType::text},
      {"", "seed", FieldType::integer},
      {"grid", "dim", FieldType::integer, false},
      {"grid", "n_x", FieldType::integer, false},
      {"grid", "n_v", FieldType::integer, false},
      {"grid", "x_period", FieldType::real, false},
      {"grid", "v_period", FieldType::real, false},
  };
  auto add = [&](const char* key, FieldType t, bool req = true) {
    s.push_back({"params", key, t, req});
  };
  if (experiment == "multiplier-norms") {
    add("R_list", FieldType::real_list);
    add("L_list", FieldType::real_list);
    add("p_list", FieldType::real_list);
    add("alpha", FieldType::real);
    add("beta", FieldType::real);
    add("delta", FieldType::real);
    add("s", FieldType::real);
    add("v_mag", FieldType::real);
    add("trials", FieldType::integer);
  } else if (experiment == "compactness-transfer") {
    add("p", FieldType::real);
    add("alpha", FieldType::real);
    add("beta", FieldType::real);
    add("delta", FieldType::real);
    add("L", FieldType::real);
    add("R_list", FieldType::real_list);
    add("modes", FieldType::real_list);
  } else if (experiment == "regularity-sweep") {
    add("mode", FieldType::text);  // "estimate-check" or "bisection"
    add("r_list", FieldType::real_list);
    add("alpha", FieldType::real);
    add("beta", FieldType::real);
    add("p", FieldType::real);
    add("resolutions", FieldType::real_list);
    add("trials", FieldType::integer);
  } else if (experiment == "counterexample") {
    add("which", FieldType::text);  // "oscillating" or "spreading"
    add("scale_list", FieldType::real_list);
  } else if (experiment == "dispersion") {
    add("dim", FieldType::integer);
    add("cases", FieldType::integer);
    add("t_list", FieldType::real_list);
  } else if (experiment == "onedim-averaging") {
    add("members", FieldType::integer);
    add("T", FieldType::real);
    add("dt", FieldType::real);
    add("lambda_list", FieldType::real_list);
    add("octaves", FieldType::integer);
  } else {
    throw config_error("unknown experiment kind '" + experiment + "'");
  }
  return s;
}

/// strict parser; every diagnostic carries the offending line or key
inline ExperimentConfig parse_config(const std::string& text) {
  // first pass: collect (section, key, value, line)
  struct Entry {
    std::string section, key, value;
    int line;
  };
  std::vector<Entry> entries;
  std::string section;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("line " + std::to_string(lineno) + ": malformed section");
      section = line.substr(1, line.size() - 2);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected key = value");
    entries.push_back({section, detail::trim(line.substr(0, eq)),
                       detail::trim(line.substr(eq + 1)), lineno});
  }

  // the experiment kind fixes the schema
  std::string experiment;
  for (const auto& e : entries)
    if (e.section.empty() && e.key == "experiment") experiment = e.value;
  if (experiment.empty()) throw config_error("missing top-level key 'experiment'");
  auto schema = config_schema(experiment);

  ExperimentConfig cfg;
  cfg.experiment = experiment;
  std::map<std::string, const SchemaField*> by_name;
  for (const auto& f : schema) by_name[detail::qualified(f.section, f.key)] = &f;

  std::map<std::string, bool> seen;
  for (const auto& e : entries) {
    std::string q = detail::qualified(e.section, e.key);
    auto it = by_name.find(q);
    if (it == by_name.end())
      throw config_error("line " + std::to_string(e.line) + ": unknown key '" + q + "'");
    if (seen[q])
      throw config_error("line " + std::to_string(e.line) + ": duplicate key '" + q + "'");
    seen[q] = true;
    const SchemaField& f = *it->second;
    try {
      switch (f.type) {
        case FieldType::integer: {
          std::size_t used = 0;
          long v = std::stol(e.value, &used);
          if (used != e.value.size()) throw std::invalid_argument("trailing text");
          if (q == "seed")
            cfg.seed = std::uint64_t(v);
          else
            cfg.ints[q] = v;
          break;
        }
        case FieldType::real: {
          std::size_t used = 0;
          double v = std::stod(e.value, &used);
          if (used != e.value.size()) throw std::invalid_argument("trailing text");
          cfg.reals[q] = v;
          break;
        }
        case FieldType::real_list: {
          std::vector<double> vs;
          std::stringstream ss(e.value);
          std::string tok;
          while (std::getline(ss, tok, ',')) {
            tok = detail::trim(tok);
            if (tok.empty()) throw std::invalid_argument("empty list element");
            vs.push_back(std::stod(tok));
          }
          if (vs.empty()) throw std::invalid_argument("empty list");
          cfg.lists[q] = std::move(vs);
          break;
        }
        case FieldType::text:
          if (q == "experiment")
            cfg.experiment = e.value;
          else
            cfg.texts[q] = e.value;
          break;
      }
    } catch (const std::exception&) {
      throw config_error("line " + std::to_string(e.line) + ": bad value for '" + q +
                         "'");
    }
  }

  for (const auto& f : schema) {
    std::string q = detail::qualified(f.section, f.key);
    if (f.required && !seen[q] && q != "experiment" && q != "seed")
      throw config_error("missing required key '" + q + "'");
  }

  // domain validation shared across experiments
  auto check_beta = [&](const std::string& key, bool strict) {
    auto it = cfg.reals.find(key);
    if (it == cfg.reals.end()) return;
    double b = it->second;
    if (b < 0.0 || b > 1.0 || (strict && b == 1.0))
      throw config_error("key '" + key + "': the transport exponent requires 0 <= beta" +
                         (strict ? std::string(" < 1") : std::string(" <= 1")));
  };
  check_beta("params.beta",
             cfg.experiment == "compactness-transfer" ||
                 cfg.experiment == "multiplier-norms");
  auto it = cfg.reals.find("params.alpha");
  if (it != cfg.reals.end() && it->second < 0.0)
    throw config_error("key 'params.alpha': the transport exponent requires alpha >= 0");
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw config_error("cannot read config file: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

/// canonical serialization: schema order, 17 significant digits
inline std::string serialize_config(const ExperimentConfig& cfg) {
  auto schema = config_schema(cfg.experiment);
  std::string out;
  std::string section;
  auto fmt_real = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& f : schema) {
    std::string q = detail::qualified(f.section, f.key);
    std::string value;
    if (q == "experiment")
      value = cfg.experiment;
    else if (q == "seed")
      value = std::to_string(cfg.seed);
    else if (f.type == FieldType::integer && cfg.ints.count(q))
      value = std::to_string(cfg.ints.at(q));
    else if (f.type == FieldType::real && cfg.reals.count(q))
      value = fmt_real(cfg.reals.at(q));
    else if (f.type == FieldType::real_list && cfg.lists.count(q)) {
      for (std::size_t i = 0; i < cfg.lists.at(q).size(); ++i)
        value += (i ? "," : "") + fmt_real(cfg.lists.at(q)[i]);
    } else if (f.type == FieldType::text && cfg.texts.count(q))
      value = cfg.texts.at(q);
    else
      continue;  // optional field not present
    if (f.section != section) {
      section = f.section;
      out += "\n[" + section + "]\n";
    }
    out += f.key + " = " + value + "\n";
  }
  return out;
}

/// FNV-1a of the canonical serialization
inline std::string config_hash(const ExperimentConfig& cfg) {
  std::string s = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace hypokin
