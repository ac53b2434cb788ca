#include "entqa/number_words.hpp"

#include <array>
#include <cctype>
#include <vector>

#include "entqa/error.hpp"

namespace entqa {
namespace {

constexpr std::array<std::string_view, 20> kUnits = {
    "zero",    "one",     "two",       "three",    "four",     "five",    "six",
    "seven",   "eight",   "nine",      "ten",      "eleven",   "twelve",  "thirteen",
    "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen"};

constexpr std::array<std::string_view, 10> kTens = {
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"};

std::string below_hundred(int n) {
  if (n < 20) return std::string(kUnits[n]);
  std::string out(kTens[n / 10]);
  if (n % 10 != 0) {
    out += '-';
    out += kUnits[n % 10];
  }
  return out;
}

std::optional<int> unit_value(std::string_view w) {
  for (int i = 0; i < 20; ++i)
    if (kUnits[i] == w) return i;
  return std::nullopt;
}

std::optional<int> tens_value(std::string_view w) {
  for (int i = 2; i < 10; ++i)
    if (kTens[i] == w) return i * 10;
  return std::nullopt;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string cur;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isalpha(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (c == ' ' || c == '-' || c == '\t') {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      return {};
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

// Parses 1..99 starting at words[i]; advances i.
std::optional<int> parse_below_hundred(const std::vector<std::string>& words, std::size_t& i) {
  if (i >= words.size()) return std::nullopt;
  if (auto t = tens_value(words[i])) {
    ++i;
    if (i < words.size()) {
      if (auto u = unit_value(words[i]); u && *u >= 1 && *u <= 9) {
        ++i;
        return *t + *u;
      }
    }
    return *t;
  }
  if (auto u = unit_value(words[i]); u && *u >= 1) {
    ++i;
    return *u;
  }
  return std::nullopt;
}

void skip_and(const std::vector<std::string>& words, std::size_t& i) {
  if (i < words.size() && words[i] == "and") ++i;
}

}  // namespace

std::string number_to_words(int n) {
  if (n < 0 || n > kMaxWordNumber)
    throw DataError("OutOfRange", "number_to_words: " + std::to_string(n) + " outside [0, 9999]");
  if (n == 0) return "zero";
  std::string out;
  auto append = [&out](const std::string& part) {
    if (!out.empty()) out += ' ';
    out += part;
  };
  if (n >= 1000) append(std::string(kUnits[n / 1000]) + " thousand");
  if (n % 1000 >= 100) append(std::string(kUnits[(n % 1000) / 100]) + " hundred");
  if (n % 100 != 0) append(below_hundred(n % 100));
  return out;
}

std::optional<int> try_words_to_number(std::string_view text) noexcept {
  std::vector<std::string> words;
  try {
    words = split_words(text);
  } catch (...) {
    return std::nullopt;
  }
  if (words.empty()) return std::nullopt;
  if (words.size() == 1 && words[0] == "zero") return 0;

  std::size_t i = 0;
  int thousands = 0;
  int hundreds = 0;
  int rest = 0;

  std::size_t mark = i;
  auto lead = parse_below_hundred(words, i);
  if (lead && i < words.size() && words[i] == "thousand") {
    if (*lead > 9) return std::nullopt;
    thousands = *lead;
    ++i;
    skip_and(words, i);
    mark = i;
    lead = parse_below_hundred(words, i);
  }
  if (lead && i < words.size() && words[i] == "hundred") {
    // "fifteen hundred" is only valid without an explicit thousands part.
    if (*lead > 99 || (*lead > 9 && thousands != 0)) return std::nullopt;
    hundreds = *lead;
    ++i;
    skip_and(words, i);
    mark = i;
    lead = parse_below_hundred(words, i);
  }
  if (lead) {
    rest = *lead;
  } else {
    i = mark;
  }
  if (i != words.size()) return std::nullopt;
  if (thousands == 0 && hundreds == 0 && rest == 0) return std::nullopt;
  int value = thousands * 1000 + hundreds * 100 + rest;
  if (value > kMaxWordNumber) return std::nullopt;
  return value;
}

int words_to_number(std::string_view text) {
  if (auto v = try_words_to_number(text)) return *v;
  throw DataError("Unparseable", "words_to_number: cannot parse '" + std::string(text) + "'");
}

std::string ordinal_words(int n) {
  if (n < 1 || n > kMaxWordNumber)
    throw DataError("OutOfRange", "ordinal_words: " + std::to_string(n) + " outside [1, 9999]");
  std::string card = number_to_words(n);
  std::size_t cut = card.find_last_of(" -");
  std::string head = cut == std::string::npos ? "" : card.substr(0, cut + 1);
  std::string last = cut == std::string::npos ? card : card.substr(cut + 1);

  if (last == "one") last = "first";
  else if (last == "two") last = "second";
  else if (last == "three") last = "third";
  else if (last == "five") last = "fifth";
  else if (last == "eight") last = "eighth";
  else if (last == "nine") last = "ninth";
  else if (last == "twelve") last = "twelfth";
  else if (last.back() == 'y') last = last.substr(0, last.size() - 1) + "ieth";
  else last += "th";
  return head + last;
}

std::optional<int> try_ordinal_words_to_number(std::string_view text) noexcept {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  std::size_t cut = s.find_last_of(" -");
  std::string head = cut == std::string::npos ? "" : s.substr(0, cut + 1);
  std::string last = cut == std::string::npos ? s : s.substr(cut + 1);

  auto ends_with = [&last](std::string_view suf) {
    return last.size() >= suf.size() && last.compare(last.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (last == "first") last = "one";
  else if (last == "second") last = "two";
  else if (last == "third") last = "three";
  else if (last == "fifth") last = "five";
  else if (last == "eighth") last = "eight";
  else if (last == "ninth") last = "nine";
  else if (last == "twelfth") last = "twelve";
  else if (ends_with("ieth")) last = last.substr(0, last.size() - 4) + "y";
  else if (ends_with("th")) last = last.substr(0, last.size() - 2);
  else return std::nullopt;

  auto v = try_words_to_number(head + last);
  if (!v || *v == 0) return std::nullopt;
  // Reject irregular spellings such as "fiveth".
  auto unhyphen = [](std::string w) {
    for (auto& c : w)
      if (c == '-') c = ' ';
    return w;
  };
  if (unhyphen(ordinal_words(*v)) != unhyphen(s)) return std::nullopt;
  return v;
}

std::string_view ordinal_suffix(long long n) noexcept {
  long long m100 = n % 100;
  if (m100 >= 11 && m100 <= 13) return "th";
  switch (n % 10) {
    case 1: return "st";
    case 2: return "nd";
    case 3: return "rd";
    default: return "th";
  }
}

}  // namespace entqa
