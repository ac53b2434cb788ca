#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace entqa {

inline constexpr int kMaxWordNumber = 9999;

/// English cardinal words for 0..9999 with hyphenated tens ("ninety-one",
/// "one thousand two hundred thirty-four"). Throws DataError("OutOfRange").
std::string number_to_words(int n);

/// Inverse of number_to_words. Also tolerates spaces instead of hyphens,
/// an interleaved "and", and "fifteen hundred" style hundreds.
/// Throws DataError("Unparseable").
int words_to_number(std::string_view text);
std::optional<int> try_words_to_number(std::string_view text) noexcept;

/// "first", "twenty-second", "one hundredth", ... for 1..9999.
std::string ordinal_words(int n);
std::optional<int> try_ordinal_words_to_number(std::string_view text) noexcept;

/// "st", "nd", "rd" or "th".
std::string_view ordinal_suffix(long long n) noexcept;

}  // namespace entqa
