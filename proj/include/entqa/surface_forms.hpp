#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "entqa/entity_type.hpp"

namespace entqa {

using Rational = boost::rational<std::int64_t>;

struct ParsedDate {
  std::optional<int> year;
  std::optional<int> month;  ///< 1..12
  std::optional<int> day;    ///< 1..31

  bool valid() const noexcept;
  friend bool operator==(const ParsedDate&, const ParsedDate&) = default;
};

enum class NumberKind { cardinal, ordinal, percent, money, duration, measured };

std::string_view to_string(NumberKind k) noexcept;

struct ParsedNumber {
  Rational value{0};
  NumberKind kind = NumberKind::cardinal;
  /// Canonical unit name: "minutes", "hours", "seconds" for durations, the
  /// plural unit name ("miles", "kilograms", ...) for measured quantities.
  std::optional<std::string> unit;
  /// Canonical currency symbol ("$", "£", "€", "¥").
  std::optional<std::string> currency;

  bool valid() const noexcept;
  friend bool operator==(const ParsedNumber&, const ParsedNumber&) = default;
};

struct NotNumeric {
  friend bool operator==(const NotNumeric&, const NotNumeric&) = default;
};

using NumericParse = std::variant<NotNumeric, ParsedDate, ParsedNumber>;

/// Steers ambiguous inputs: bare years read as dates only under `date`,
/// "pounds" reads as weight only under `measured`.
enum class NumericHint { none, date, number, money, measured };

NumericHint hint_for(EntityType t) noexcept;

NumericParse parse_numeric(std::string_view text, NumericHint hint = NumericHint::none);

/// Ordered, normalization-deduplicated variants with the generator that produced each.
class VariantSet {
 public:
  VariantSet() = default;
  explicit VariantSet(std::string_view source, std::string_view generator = "source");

  bool add(std::string_view text, std::string_view generator);
  void append(const VariantSet& other);
  /// Keeps the first `cap` entries.
  void truncate(std::size_t cap);

  const std::vector<std::string>& entries() const noexcept { return entries_; }
  const std::vector<std::string>& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool contains(std::string_view text) const;

 private:
  std::vector<std::string> entries_;
  std::vector<std::string> provenance_;
  std::vector<std::string> keys_;
};

VariantSet expand_date(const ParsedDate& d);
VariantSet expand_number(const ParsedNumber& p);

/// Rounds to one and two significant digits and emits "about"/"approximately"
/// forms, plus "almost" when rounding went up. First entry is the value itself.
VariantSet approximate_forms(const Rational& value);

inline constexpr std::size_t kDefaultExpansionCap = 16;

/// Offline surface-form expansion of one gold answer. Identity for NA and
/// non-numeric types; numeric answers the parser rejects also stay as-is.
VariantSet rule_expand(std::string_view answer, EntityType t, std::size_t cap = kDefaultExpansionCap);

/// Decimal rendering of a terminating rational; nullopt otherwise.
std::optional<std::string> format_decimal(const Rational& value, bool group_thousands);

/// Round half-up to `digits` significant digits. value must be > 0.
Rational round_significant(const Rational& value, int digits);

std::string_view month_name(int month);
std::string_view month_abbrev(int month);
int days_in_month(int month, std::optional<int> year) noexcept;

}  // namespace entqa
