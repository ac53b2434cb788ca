#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace entqa {

/// Flat view of a TOML-style key/value file. Keys inside a `[section]` are
/// stored as "section.key". Values are kept as text with quotes removed.
class KvConfig {
 public:
  std::optional<std::string> get(std::string_view key) const;
  std::optional<double> get_number(std::string_view key) const;
  void set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }

  const std::map<std::string, std::string, std::less<>>& values() const noexcept { return values_; }
  /// Section names in sorted order.
  std::map<std::string, std::map<std::string, std::string>> sections() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

/// Throws DataError ConfigSyntax with the offending line number.
KvConfig parse_kv_config(std::string_view text, std::string_view source_name = "<config>");
/// Throws DataError IoError when the file cannot be read.
KvConfig load_kv_config(const std::filesystem::path& path);

}  // namespace entqa
