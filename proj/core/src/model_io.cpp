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

#include "nocres/model_io.hpp"

#include <fstream>
#include <sstream>

namespace nocres::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  const auto pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

double parse_number(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + text + "'");
  }
}

}  // namespace

ModelFile parse_markov_model(std::istream& in) {
  std::vector<std::string> state_labels;
  std::map<std::string, std::size_t> index_of;
  std::vector<std::size_t> healthy;
  std::vector<markov::Transition> transitions;
  std::optional<std::size_t> initial;
  std::string unit = "hour";

  enum class Section { kNone, kStates, kHealthy, kTransitions, kInitial, kUnits };
  Section section = Section::kNone;
  std::string raw;
  std::size_t lineno = 0;

  const auto state_index = [&](const std::string& label) {
    const auto it = index_of.find(label);
    if (it == index_of.end())
      throw ParseError(lineno, "unknown state '" + label + "'");
    return it->second;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[states]") section = Section::kStates;
      else if (line == "[healthy]") section = Section::kHealthy;
      else if (line == "[transitions]") section = Section::kTransitions;
      else if (line == "[initial]") section = Section::kInitial;
      else if (line == "[units]") section = Section::kUnits;
      else throw ParseError(lineno, "unknown section " + line);
      continue;
    }
    switch (section) {
      case Section::kNone:
        throw ParseError(lineno, "content before any section header");
      case Section::kStates:
        if (index_of.count(line))
          throw ParseError(lineno, "duplicate state '" + line + "'");
        index_of[line] = state_labels.size();
        state_labels.push_back(line);
        break;
      case Section::kHealthy:
        healthy.push_back(state_index(line));
        break;
      case Section::kTransitions: {
        std::istringstream row(line);
        std::string from, to, rate;
        if (!(row >> from >> to >> rate))
          throw ParseError(lineno, "expected 'from to rate'");
        std::string extra;
        if (row >> extra) throw ParseError(lineno, "trailing content");
        transitions.push_back(
            {state_index(from), state_index(to), parse_number(rate, lineno)});
        break;
      }
      case Section::kInitial:
        if (initial) throw ParseError(lineno, "initial state given twice");
        initial = state_index(line);
        break;
      case Section::kUnits:
        unit = line;
        break;
    }
  }
  if (state_labels.empty()) throw ParseError(lineno, "no [states] section");
  if (!initial) throw ParseError(lineno, "no [initial] section");

  std::vector<markov::StateId> states;
  states.reserve(state_labels.size());
  for (std::size_t i = 0; i < state_labels.size(); ++i)
    states.push_back({i, state_labels[i]});

  return ModelFile{markov::MarkovModel::build(std::move(states),
                                              std::move(healthy),
                                              std::move(transitions), *initial),
                   unit};
}

ModelFile load_markov_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  return parse_markov_model(in);
}

std::vector<MechanismSpec> parse_profiles(std::istream& in) {
  std::vector<MechanismSpec> mechanisms;
  std::string raw;
  std::size_t lineno = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError(lineno, "unterminated section header");
      const std::string header = trim(line.substr(1, line.size() - 2));
      if (header.rfind("mechanism ", 0) != 0)
        throw ParseError(lineno, "expected [mechanism <name>]");
      MechanismSpec spec;
      spec.name = trim(header.substr(10));
      if (spec.name.empty()) throw ParseError(lineno, "mechanism needs a name");
      mechanisms.push_back(std::move(spec));
      continue;
    }
    if (mechanisms.empty())
      throw ParseError(lineno, "field outside any [mechanism] section");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    MechanismSpec& m = mechanisms.back();
    if (key == "f_d") m.f_d = parse_number(value, lineno);
    else if (key == "or_d") m.or_d = parse_number(value, lineno);
    else if (key == "ar_d") m.ar_d = parse_number(value, lineno);
    else if (key == "or_c") m.or_c = parse_number(value, lineno);
    else if (key == "ar_c") m.ar_c = parse_number(value, lineno);
    else if (key == "alt_ar_c") m.alt_ar_c = parse_number(value, lineno);
    else if (key == "model") {
      if (value == "tmr-markov") m.tmr_markov = true;
      else if (value == "closed-form") m.tmr_markov = false;
      else throw ParseError(lineno, "unknown model '" + value + "'");
    } else if (key == "note") m.note = value;
    else throw ParseError(lineno, "unknown field '" + key + "'");
  }
  if (mechanisms.empty()) throw ParseError(lineno, "no mechanisms defined");
  return mechanisms;
}

std::vector<MechanismSpec> load_profiles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profiles file: " + path);
  return parse_profiles(in);
}

Config Config::parse(std::istream& in) {
  Config cfg;
  std::string raw;
  std::size_t lineno = 0;
  std::string section;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.find('.') == std::string::npos && !section.empty())
      key = section + "." + key;
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse(in);
}

void Config::set(const std::string& dotted_key, const std::string& value) {
  values_[dotted_key] = value;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

long long Config::get_int(const std::string& key, long long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': expected integer, got '" +
                      it->second + "'");
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': expected number, got '" +
                      it->second + "'");
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("field '" + key + "': expected boolean, got '" + v + "'");
}

std::vector<std::string> Config::get_list(const std::string& key) const {
  std::vector<std::string> items;
  const auto it = values_.find(key);
  if (it == values_.end()) return items;
  std::string text = it->second;
  for (char& ch : text)
    if (ch == ',') ch = ' ';
  std::istringstream stream(text);
  std::string item;
  while (stream >> item) items.push_back(item);
  return items;
}

}  // namespace nocres::io
