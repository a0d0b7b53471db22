/*
 * Copyright 2026 The noc-resilience Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NOCRES_MODEL_IO_HPP
#define NOCRES_MODEL_IO_HPP

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nocres/markov.hpp"

namespace nocres::io {

/// Parse failure with a 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Markov model description: [states], [healthy], [transitions] with
/// `from to rate` rows, [initial], optional [units]. '#' starts a comment.
struct ModelFile {
  markov::MarkovModel model;
  std::string time_unit = "hour";  // rates are per this unit
};

ModelFile parse_markov_model(std::istream& in);
ModelFile load_markov_model(const std::string& path);

/// One mechanism row of a profiles file: the protected module's
/// (f_d, or_d, ar_d) and the corrector's (or_c, ar_c). `tmr_markov`
/// switches the RAF computation to the triple-replica Markov chain.
/// `alt_ar_c` labels a second reading of an ambiguous area figure.
struct MechanismSpec {
  std::string name;
  double f_d = 1.0;
  double or_d = 1.0;
  double ar_d = 1.0;
  double or_c = 1.0;
  double ar_c = 0.0;
  bool tmr_markov = false;
  std::optional<double> alt_ar_c;
  std::string note;
};

std::vector<MechanismSpec> parse_profiles(std::istream& in);
std::vector<MechanismSpec> load_profiles(const std::string& path);

/// Invalid or missing configuration value; message names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat section.key = value configuration. Files may use either
/// `[section]` headers with `key = value` lines or fully qualified
/// `section.key = value` lines; `set()` applies command-line overrides.
class Config {
 public:
  Config() = default;
  static Config parse(std::istream& in);
  static Config load(const std::string& path);

  void set(const std::string& dotted_key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Whitespace- or comma-separated list.
  std::vector<std::string> get_list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace nocres::io

#endif  // NOCRES_MODEL_IO_HPP
