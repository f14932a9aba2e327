#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace exciton {

/// Flat `key = value` configuration with dotted section prefixes
/// (motion.kind, channels.gamma_sink, ...). Arrays are comma-separated.
/// Lines starting with '#' are comments; values round-trip byte-exactly.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(std::string_view text, const std::string& origin = "<string>");

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  void set(const std::string& key, const std::string& value);
  void erase(const std::string& key) { entries_.erase(key); }
  void merge(const Config& overrides);

  std::string get_str(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_list(const std::string& key) const;

  /// Canonical serialization: sorted keys, `key = value` lines.
  std::string serialize() const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace exciton
