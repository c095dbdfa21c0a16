#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "renyi/weight_profile.hpp"

namespace renyi {

/// Flat `key = value` text. '#' starts a comment, blank lines are ignored and
/// ':' is accepted in place of '='. Keys are unique.
class KeyValueConfig {
 public:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;  // 0 for entries set programmatically
  };

  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_text(const std::string& text);
  /// Throws ParseError (line 0) if the file cannot be opened.
  static KeyValueConfig load(const std::string& path);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const Entry* find(const std::string& key) const;
  bool contains(const std::string& key) const { return find(key) != nullptr; }

  /// Adds or replaces a key. Used for command-line overrides.
  void set(const std::string& key, const std::string& value);

  /// Typed accessors throw ParseError naming the key on a missing key or a
  /// value that does not parse.
  const std::string& require_string(const std::string& key) const;
  double require_double(const std::string& key) const;
  std::size_t require_size(const std::string& key) const;
  std::vector<double> require_list(const std::string& key) const;

 private:
  std::vector<Entry> entries_;
};

/// Everything needed to rebuild a cascade.
struct MeasureSpec {
  WeightProfile profile = WeightProfile::constant(1.0);
  double q = 2.0;
  std::size_t depth = 1;
};

/// Schema: kind, q, depth, plus a (constant), ratio and k_seed
/// (geometric_blocks) or values (explicit_list). Unknown or missing keys
/// raise ParseError naming the key.
MeasureSpec measure_spec_from_config(const KeyValueConfig& config);
std::string to_config_text(const MeasureSpec& spec);

/// Shortest round-trip text is not required; 17 significant digits are.
std::string format_double(double value);

}  // namespace renyi
