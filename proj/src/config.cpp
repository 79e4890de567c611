#include "pomfix/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace pomfix {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& source) {
  Config c;
  c.source_ = source;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("{}:{}: expected 'key = value'", source, n));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("{}:{}: empty key", source, n));
    if (value.empty()) throw ConfigError(fmt::format("{}:{}: {}: empty value", source, n, key));
    if (c.entries_.count(key)) {
      throw ConfigError(
          fmt::format("{}:{}: {}: duplicate key (first set on line {})", source, n, key, c.entries_[key].line));
    }
    c.entries_[key] = Entry{value, n};
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("{}: cannot open config file", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void Config::fail(const std::string& key, const std::string& message) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(fmt::format("{}: {}: {}", source_, key, message));
  throw ConfigError(fmt::format("{}:{}: {}: {}", source_, it->second.line, key, message));
}

const Config::Entry& Config::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) fail(key, "missing required key");
  return it->second;
}

std::string Config::str(const std::string& key) const { return get(key).value; }

std::string Config::str(const std::string& key, const std::string& fallback) const {
  return has(key) ? str(key) : fallback;
}

double Config::real(const std::string& key) const {
  const std::string& v = get(key).value;
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    fail(key, fmt::format("'{}' is not a number", v));
  }
  if (pos != v.size()) fail(key, fmt::format("'{}' is not a number", v));
  return d;
}

double Config::real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

std::uint64_t Config::count(const std::string& key) const {
  const std::string& v = get(key).value;
  std::size_t pos = 0;
  unsigned long long n = 0;
  try {
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    n = std::stoull(v, &pos);
  } catch (const std::exception&) {
    fail(key, fmt::format("'{}' is not a non-negative integer", v));
  }
  if (pos != v.size()) fail(key, fmt::format("'{}' is not a non-negative integer", v));
  return n;
}

std::uint64_t Config::count(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? count(key) : fallback;
}

bool Config::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = str(key);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail(key, fmt::format("'{}' is not a boolean", v));
}

std::vector<double> Config::reals(const std::string& key) const {
  std::istringstream in(get(key).value);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    double d = 0.0;
    try {
      d = std::stod(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size()) fail(key, fmt::format("'{}' is not a number", tok));
    out.push_back(d);
  }
  return out;
}

std::vector<double> Config::reals(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? reals(key) : fallback;
}

void Config::restrict_to(const std::vector<std::string>& allowed) const {
  for (const auto& [k, e] : entries_) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw ConfigError(fmt::format("{}:{}: {}: unknown key", source_, e.line, k));
    }
  }
}

}  // namespace pomfix
