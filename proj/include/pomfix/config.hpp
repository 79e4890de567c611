#pragma once

// key = value configuration files with line-numbered diagnostics.
//
//   # comment
//   kernel = product_ts
//   interval = 0 1

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pomfix/core.hpp"

namespace pomfix {

class ConfigError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class Config {
 public:
  static Config parse(const std::string& text, const std::string& source = "<config>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
  std::uint64_t count(const std::string& key) const;
  std::uint64_t count(const std::string& key, std::uint64_t fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<double> reals(const std::string& key, std::vector<double> fallback) const;

  /// Throws on any key outside `allowed`, naming its line.
  void restrict_to(const std::vector<std::string>& allowed) const;

  /// "source:line: key: message".
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  std::map<std::string, Entry> entries_;
  std::string source_;

  const Entry& get(const std::string& key) const;
};

}  // namespace pomfix
