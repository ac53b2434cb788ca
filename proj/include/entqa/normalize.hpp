#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entqa {

enum class NormalizationMode {
  light,  ///< lowercase + whitespace collapse
  squad,  ///< light + strip ASCII punctuation + drop articles a/an/the
};

enum class Containment {
  token_boundary,  ///< gold must start and end on word boundaries of the prediction
  substring,       ///< raw substring of the normalized prediction
};

struct NormalizationProfile {
  NormalizationMode mode = NormalizationMode::light;
  Containment containment = Containment::token_boundary;

  static constexpr NormalizationProfile light() { return {NormalizationMode::light, Containment::token_boundary}; }
  static constexpr NormalizationProfile squad() { return {NormalizationMode::squad, Containment::token_boundary}; }

  friend bool operator==(const NormalizationProfile&, const NormalizationProfile&) = default;
};

std::string normalize(std::string_view text, NormalizationMode mode);
inline std::string normalize(std::string_view text, const NormalizationProfile& profile) {
  return normalize(text, profile.mode);
}

/// Whitespace split of normalize(text).
std::vector<std::string> tokenize(std::string_view text, NormalizationMode mode);

/// Containment test over already-normalized strings. An empty needle never matches.
bool contains_normalized(std::string_view haystack, std::string_view needle, Containment containment);

std::string_view to_string(NormalizationMode m) noexcept;
std::string_view to_string(Containment c) noexcept;
std::optional<NormalizationMode> parse_normalization_mode(std::string_view s) noexcept;
std::optional<Containment> parse_containment(std::string_view s) noexcept;

}  // namespace entqa
