#include <random>
#include <regex>

#include "doctest.h"
#include "entqa/number_words.hpp"
#include "entqa/surface_forms.hpp"

using namespace entqa;

namespace {

bool has(const VariantSet& v, const std::string& s) {
  for (const auto& e : v.entries())
    if (e == s) return true;
  return false;
}

}  // namespace

TEST_CASE("number words") {
  CHECK(number_to_words(0) == "zero");
  CHECK(number_to_words(13) == "thirteen");
  CHECK(number_to_words(598) == "five hundred ninety-eight");
  CHECK(number_to_words(9999) == "nine thousand nine hundred ninety-nine");
  CHECK(words_to_number("five hundred and ninety eight") == 598);
  CHECK(words_to_number("Twenty-One") == 21);
  CHECK_FALSE(try_words_to_number("twenty banana"));
  CHECK(ordinal_words(15) == "fifteenth");
  CHECK(try_ordinal_words_to_number("twenty-first") == 21);
  CHECK(ordinal_suffix(11) == "th");
  CHECK(ordinal_suffix(22) == "nd");
}

TEST_CASE("number words round trip over 0..9999") {
  for (int n = 0; n <= 9999; ++n) REQUIRE(words_to_number(number_to_words(n)) == n);
}

TEST_CASE("date parsing") {
  auto p = parse_numeric("January 12, 2009");
  REQUIRE(std::holds_alternative<ParsedDate>(p));
  CHECK(std::get<ParsedDate>(p) == ParsedDate{2009, 1, 12});
  CHECK(std::get<ParsedDate>(parse_numeric("12 Jan., 2009")) == ParsedDate{2009, 1, 12});
  CHECK(std::get<ParsedDate>(parse_numeric("June 14th, 1946")) == ParsedDate{1946, 6, 14});
  CHECK(std::get<ParsedDate>(parse_numeric("1911", NumericHint::date)) == ParsedDate{1911, {}, {}});
  CHECK(std::holds_alternative<NotNumeric>(parse_numeric("pectoralis major")));
}

TEST_CASE("date expansion") {
  auto v = expand_date(ParsedDate{2009, 1, 12});
  CHECK(has(v, "January 12, 2009"));
  CHECK(has(v, "12 January 2009"));
  CHECK(has(v, "Jan. 12, 2009"));
  CHECK(has(v, "January 12th, 2009"));
  CHECK(has(v, "January 2009"));
  CHECK(has(v, "2009"));
  CHECK(expand_date(ParsedDate{1911, {}, {}}).entries() == std::vector<std::string>{"1911"});
}

TEST_CASE("random dates round trip through expansion") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 500; ++i) {
    ParsedDate d;
    d.year = 1000 + static_cast<int>(rng() % 2000);
    d.month = 1 + static_cast<int>(rng() % 12);
    d.day = 1 + static_cast<int>(rng() % static_cast<unsigned>(days_in_month(*d.month, d.year)));
    const auto variants = expand_date(d);
    for (const auto& variant : variants.entries()) {
      auto parsed = parse_numeric(variant, NumericHint::date);
      REQUIRE_MESSAGE(std::holds_alternative<ParsedDate>(parsed), variant);
      const auto& back = std::get<ParsedDate>(parsed);
      CHECK(back.year == d.year);
      if (back.month) CHECK(back.month == d.month);
      if (back.day) CHECK(back.day == d.day);
    }
  }
}

TEST_CASE("duration variants keep the total") {
  const std::regex hm(R"((\d+) ?(?:hours?|hrs?)(?: and)? (\d+) (?:minutes?|mins?))");
  for (int minutes = 61; minutes <= 600; ++minutes) {
    auto v = rule_expand(std::to_string(minutes) + " minutes", EntityType::TIME);
    int seen = 0;
    for (const auto& e : v.entries()) {
      std::smatch m;
      if (!std::regex_match(e, m, hm)) continue;
      ++seen;
      CHECK(60 * std::stoi(m[1]) + std::stoi(m[2]) == minutes);
    }
    if (minutes % 60 != 0) CHECK(seen > 0);
  }
  auto v = rule_expand("138 minutes", EntityType::TIME);
  CHECK(has(v, "2 hours and 18 minutes"));
}

TEST_CASE("numeric expansions") {
  CHECK(has(rule_expand("13", EntityType::CARDINAL), "thirteen"));
  CHECK(has(rule_expand("120,762", EntityType::CARDINAL), "about 120,000"));
  CHECK(has(rule_expand("598", EntityType::CARDINAL), "almost 600"));
  CHECK(has(rule_expand("50%", EntityType::PERCENT), "50 percent"));
  CHECK(has(rule_expand("$12 billion", EntityType::MONEY), "12 billion dollars"));
  CHECK(has(rule_expand("15th", EntityType::ORDINAL), "fifteenth"));
  CHECK(has(rule_expand("3,000 miles", EntityType::QUANTITY), "three thousand miles"));
  CHECK(rule_expand("Paris", EntityType::GPE).entries() == std::vector<std::string>{"Paris"});
  CHECK(rule_expand("138 minutes", EntityType::TIME, 3).size() == 3);
}

TEST_CASE("approximation only moves toward round numbers") {
  // "almost" needs the rounded value to lie above the exact one.
  auto v = approximate_forms(Rational(603));
  CHECK(has(v, "about 600"));
  CHECK_FALSE(has(v, "almost 600"));
  CHECK(round_significant(Rational(120762), 2) == Rational(120000));
  CHECK(format_decimal(Rational(1, 3), false) == std::nullopt);
  CHECK(format_decimal(Rational(23, 10), false) == "2.3");
}
