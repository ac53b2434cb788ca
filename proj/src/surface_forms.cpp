#include "entqa/surface_forms.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <regex>

#include "entqa/normalize.hpp"
#include "entqa/number_words.hpp"

namespace entqa {
namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};
constexpr std::array<std::string_view, 12> kMonthAbbrevs = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

std::int64_t pow10(int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

Rational pow10r(int e) { return e >= 0 ? Rational(pow10(e)) : Rational(1, pow10(-e)); }

bool is_integer(const Rational& r) { return r.denominator() == 1; }

// ---------------------------------------------------------------------------
// Unit and currency tables.

struct Currency {
  std::string_view symbol;
  std::string_view word;  // plural
  std::vector<std::string_view> aliases;
};

const std::vector<Currency>& currencies() {
  static const std::vector<Currency> table = {
      {"$", "dollars", {"dollars", "dollar", "bucks", "buck", "usd"}},
      {"\xC2\xA3", "pounds", {"pounds", "pound", "gbp", "pounds sterling"}},
      {"\xE2\x82\xAC", "euros", {"euros", "euro", "eur"}},
      {"\xC2\xA5", "yen", {"yen", "jpy"}},
  };
  return table;
}

const Currency* currency_by_symbol(std::string_view sym) {
  for (const auto& c : currencies())
    if (c.symbol == sym) return &c;
  return nullptr;
}

const Currency* currency_by_word(std::string_view word) {
  for (const auto& c : currencies())
    for (auto a : c.aliases)
      if (a == word) return &c;
  return nullptr;
}

struct TimeUnit {
  std::string_view plural;
  std::string_view singular;
  std::string_view abbrev;
  std::string_view abbrev_singular;
  std::int64_t seconds;
  std::vector<std::string_view> aliases;
};

const std::vector<TimeUnit>& time_units() {
  static const std::vector<TimeUnit> table = {
      {"hours", "hour", "hrs", "hr", 3600, {"hours", "hour", "hrs", "hr", "h"}},
      {"minutes", "minute", "mins", "min", 60, {"minutes", "minute", "mins", "min", "min."}},
      {"seconds", "second", "secs", "sec", 1, {"seconds", "second", "secs", "sec", "s"}},
  };
  return table;
}

const TimeUnit* time_unit_by_alias(std::string_view w) {
  for (const auto& u : time_units())
    for (auto a : u.aliases)
      if (a == w) return &u;
  return nullptr;
}

const TimeUnit* time_unit_by_name(std::string_view plural) {
  for (const auto& u : time_units())
    if (u.plural == plural) return &u;
  return nullptr;
}

struct MeasureUnit {
  std::string_view plural;
  std::string_view singular;
  std::string_view abbrev;
  std::vector<std::string_view> aliases;
  std::string_view alt_plural;  // alternate spelling, e.g. "metres"
};

const std::vector<MeasureUnit>& measure_units() {
  static const std::vector<MeasureUnit> table = {
      {"square miles", "square mile", "sq mi", {"square miles", "square mile", "sq mi", "sq. mi."}, ""},
      {"square kilometers", "square kilometer", "sq km",
       {"square kilometers", "square kilometer", "square kilometres", "square kilometre", "sq km", "km2"},
       "square kilometres"},
      {"miles per hour", "mile per hour", "mph", {"miles per hour", "mph"}, ""},
      {"kilometers per hour", "kilometer per hour", "km/h",
       {"kilometers per hour", "kilometres per hour", "km/h", "kph"}, "kilometres per hour"},
      {"miles", "mile", "mi", {"miles", "mile", "mi"}, ""},
      {"feet", "foot", "ft", {"feet", "foot", "ft"}, ""},
      {"inches", "inch", "in", {"inches", "inch", "in"}, ""},
      {"yards", "yard", "yd", {"yards", "yard", "yd", "yds"}, ""},
      {"kilometers", "kilometer", "km", {"kilometers", "kilometer", "kilometres", "kilometre", "km"}, "kilometres"},
      {"centimeters", "centimeter", "cm", {"centimeters", "centimeter", "centimetres", "centimetre", "cm"}, "centimetres"},
      {"millimeters", "millimeter", "mm", {"millimeters", "millimeter", "millimetres", "millimetre", "mm"}, "millimetres"},
      {"meters", "meter", "m", {"meters", "meter", "metres", "metre", "m"}, "metres"},
      {"kilograms", "kilogram", "kg", {"kilograms", "kilogram", "kilogrammes", "kg", "kgs"}, ""},
      {"grams", "gram", "g", {"grams", "gram", "grammes", "g"}, ""},
      {"pounds", "pound", "lb", {"lb", "lbs", "pounds", "pound"}, ""},
      {"ounces", "ounce", "oz", {"ounces", "ounce", "oz"}, ""},
      {"tons", "ton", "t", {"tons", "ton", "tonnes", "tonne"}, ""},
      {"acres", "acre", "acres", {"acres", "acre"}, ""},
      {"hectares", "hectare", "ha", {"hectares", "hectare", "ha"}, ""},
      {"liters", "liter", "L", {"liters", "liter", "litres", "litre", "l"}, "litres"},
      {"gallons", "gallon", "gal", {"gallons", "gallon", "gal"}, ""},
      {"megahertz", "megahertz", "MHz", {"megahertz", "mhz"}, ""},
      {"gigahertz", "gigahertz", "GHz", {"gigahertz", "ghz"}, ""},
      {"leagues", "league", "leagues", {"leagues", "league"}, ""},
  };
  return table;
}

const MeasureUnit* measure_unit_by_alias(std::string_view w, bool allow_pounds) {
  for (const auto& u : measure_units()) {
    for (auto a : u.aliases) {
      if (a != w) continue;
      if (!allow_pounds && (a == "pounds" || a == "pound")) return nullptr;
      return &u;
    }
  }
  return nullptr;
}

const MeasureUnit* measure_unit_by_name(std::string_view plural) {
  for (const auto& u : measure_units())
    if (u.plural == plural) return &u;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Number scanning.

struct Scan {
  Rational value;
  std::size_t end = 0;
  bool digits = false;
  bool magnitude = false;
};

std::optional<Rational> parse_digits(std::string_view s, std::size_t& pos) {
  auto digit_at = [&s](std::size_t k) { return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])) != 0; };
  std::size_t i = pos;
  std::string intpart;
  while (digit_at(i)) intpart.push_back(s[i++]);
  if (intpart.empty()) return std::nullopt;
  // A comma counts as a thousands separator only before exactly three digits.
  bool grouped = false;
  while (i < s.size() && s[i] == ',' && digit_at(i + 1) && digit_at(i + 2) && digit_at(i + 3) && !digit_at(i + 4)) {
    if (!grouped && intpart.size() > 3) return std::nullopt;
    grouped = true;
    intpart.append(s.substr(i + 1, 3));
    i += 4;
  }
  std::string frac;
  if (i + 1 < s.size() && s[i] == '.' && digit_at(i + 1)) {
    ++i;
    while (digit_at(i)) frac.push_back(s[i++]);
  }
  if (intpart.size() + frac.size() > 15) return std::nullopt;
  Rational value(std::stoll(intpart));
  if (!frac.empty()) value += Rational(std::stoll(frac), pow10(static_cast<int>(frac.size())));
  pos = i;
  return value;
}

bool is_word_byte(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::optional<Scan> scan_number(std::string_view s, std::size_t pos) {
  Scan out;
  if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    std::size_t i = pos;
    auto v = parse_digits(s, i);
    if (!v) return std::nullopt;
    out.value = *v;
    out.end = i;
    out.digits = true;
  } else {
    // Longest run of words that parses as a number word.
    std::size_t i = pos;
    std::optional<Scan> best;
    while (i < s.size() && is_word_byte(s[i])) {
      while (i < s.size() && is_word_byte(s[i])) ++i;
      if (auto v = try_words_to_number(s.substr(pos, i - pos))) {
        best = Scan{Rational(*v), i, false, false};
      }
      if (i < s.size() && (s[i] == ' ' || s[i] == '-') && i + 1 < s.size() && is_word_byte(s[i + 1])) {
        ++i;
      } else {
        break;
      }
    }
    if (!best) return std::nullopt;
    out = *best;
  }

  // Optional magnitude word.
  std::size_t j = out.end;
  while (j < s.size() && s[j] == ' ') ++j;
  static const std::array<std::pair<std::string_view, int>, 4> kMagnitudes = {
      {{"thousand", 3}, {"million", 6}, {"billion", 9}, {"trillion", 12}}};
  for (auto [word, exp] : kMagnitudes) {
    if (starts_with(s.substr(j), word) && (j + word.size() == s.size() || !is_word_byte(s[j + word.size()]))) {
      double approx = boost::rational_cast<double>(out.value) * std::pow(10.0, exp);
      if (approx >= 1e15) return std::nullopt;
      out.value *= pow10(exp);
      out.end = j + word.size();
      out.magnitude = true;
      break;
    }
  }
  return out;
}

std::string trim_copy(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// ---------------------------------------------------------------------------
// Dates.

std::optional<int> month_from_token(std::string tok) {
  if (!tok.empty() && tok.back() == '.') tok.pop_back();
  if (tok == "sept") tok = "sep";
  for (int m = 0; m < 12; ++m) {
    std::string full = lower(kMonthNames[m]);
    std::string abbr = lower(kMonthAbbrevs[m]);
    if (tok == full || tok == abbr) return m + 1;
  }
  return std::nullopt;
}

std::optional<ParsedDate> parse_date(const std::string& s, NumericHint hint) {
  static const std::string kMon =
      "(january|february|march|april|may|june|july|august|september|october|november|december|"
      "jan|feb|mar|apr|jun|jul|aug|sept|sep|oct|nov|dec)\\.?";
  static const std::regex kMonthDayYear("^" + kMon + " (\\d{1,2})(?:st|nd|rd|th)?,? (\\d{4})$");
  static const std::regex kDayMonthYear("^(\\d{1,2})(?:st|nd|rd|th)?,? (?:of )?" + kMon + ",? (\\d{4})$");
  static const std::regex kMonthYear("^" + kMon + ",? (?:of )?(\\d{4})$");
  static const std::regex kMonthDay("^" + kMon + " (\\d{1,2})(?:st|nd|rd|th)?$");
  static const std::regex kDayMonth("^(\\d{1,2})(?:st|nd|rd|th)?,? (?:of )?" + kMon + "$");
  static const std::regex kYearMonthDay("^(\\d{4}),? " + kMon + " (\\d{1,2})$");
  static const std::regex kIso("^(\\d{4})-(\\d{2})-(\\d{2})$");
  static const std::regex kYear("^(\\d{4})$");

  std::smatch m;
  ParsedDate d;
  if (std::regex_match(s, m, kMonthDayYear)) {
    d = {std::stoi(m[3]), month_from_token(m[1]), std::stoi(m[2])};
  } else if (std::regex_match(s, m, kDayMonthYear)) {
    d = {std::stoi(m[3]), month_from_token(m[2]), std::stoi(m[1])};
  } else if (std::regex_match(s, m, kMonthYear)) {
    d = {std::stoi(m[2]), month_from_token(m[1]), std::nullopt};
  } else if (std::regex_match(s, m, kMonthDay)) {
    d = {std::nullopt, month_from_token(m[1]), std::stoi(m[2])};
  } else if (std::regex_match(s, m, kDayMonth)) {
    d = {std::nullopt, month_from_token(m[2]), std::stoi(m[1])};
  } else if (std::regex_match(s, m, kYearMonthDay)) {
    d = {std::stoi(m[1]), month_from_token(m[2]), std::stoi(m[3])};
  } else if (std::regex_match(s, m, kIso)) {
    d = {std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3])};
  } else if (std::regex_match(s, m, kYear) && (hint == NumericHint::none || hint == NumericHint::date)) {
    d = {std::stoi(m[1]), std::nullopt, std::nullopt};
  } else {
    return std::nullopt;
  }
  if (d.year && (*d.year < 1000 || *d.year > 2999)) return std::nullopt;
  if (!d.valid()) return std::nullopt;
  return d;
}

// ---------------------------------------------------------------------------
// Numbers.

std::optional<ParsedNumber> parse_duration(std::string_view s, const Scan& first) {
  struct Part {
    Rational value;
    const TimeUnit* unit;
  };
  std::vector<Part> parts;
  Scan cur = first;
  std::size_t pos = first.end;
  while (true) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    std::size_t w = pos;
    while (w < s.size() && (is_word_byte(s[w]) || s[w] == '.')) ++w;
    std::string word(s.substr(pos, w - pos));
    const TimeUnit* unit = time_unit_by_alias(word);
    if (!unit && !word.empty() && word.back() == '.') {
      word.pop_back();
      unit = time_unit_by_alias(word);
    }
    if (!unit) return std::nullopt;
    if (!parts.empty() && unit->seconds >= parts.back().unit->seconds) return std::nullopt;
    parts.push_back({cur.value, unit});
    pos = w;
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == ',')) ++pos;
    if (pos == s.size()) break;
    if (starts_with(s.substr(pos), "and ")) pos += 4;
    auto next = scan_number(s, pos);
    if (!next || next->magnitude) return std::nullopt;
    cur = *next;
    pos = next->end;
  }
  if (parts.size() > 1) {
    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
      if (!is_integer(parts[i].value)) return std::nullopt;
  }
  const TimeUnit* smallest = parts.back().unit;
  Rational total(0);
  for (const auto& p : parts) total += p.value * Rational(p.unit->seconds, smallest->seconds);
  ParsedNumber out;
  out.value = total;
  out.kind = NumberKind::duration;
  out.unit = std::string(smallest->plural);
  return out;
}

NumericParse parse_number(const std::string& s, NumericHint hint) {
  // Currency symbol prefix.
  for (const auto& c : currencies()) {
    if (!starts_with(s, c.symbol)) continue;
    std::size_t pos = c.symbol.size();
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return NotNumeric{};
    auto scan = scan_number(s, pos);
    if (!scan || trim_copy(s.substr(scan->end)) != "") return NotNumeric{};
    return ParsedNumber{scan->value, NumberKind::money, std::nullopt, std::string(c.symbol)};
  }

  if (auto ord = try_ordinal_words_to_number(s)) {
    return ParsedNumber{Rational(*ord), NumberKind::ordinal, std::nullopt, std::nullopt};
  }

  auto scan = scan_number(s, 0);
  if (!scan) return NotNumeric{};
  std::string rest = trim_copy(s.substr(scan->end));

  if (rest.empty()) return ParsedNumber{scan->value, NumberKind::cardinal, std::nullopt, std::nullopt};

  if (scan->digits && !scan->magnitude && is_integer(scan->value) && scan->end < s.size() &&
      s[scan->end] != ' ' && (rest == "st" || rest == "nd" || rest == "rd" || rest == "th")) {
    return ParsedNumber{scan->value, NumberKind::ordinal, std::nullopt, std::nullopt};
  }

  if (rest == "%" || rest == "percent" || rest == "percents" || rest == "per cent") {
    return ParsedNumber{scan->value, NumberKind::percent, std::nullopt, std::nullopt};
  }

  const bool pounds_as_weight = hint == NumericHint::measured;
  if (const Currency* c = currency_by_word(rest); c && !(pounds_as_weight && c->word == "pounds")) {
    return ParsedNumber{scan->value, NumberKind::money, std::nullopt, std::string(c->symbol)};
  }

  if (!scan->magnitude) {
    if (auto d = parse_duration(s, *scan)) return *d;
  }

  if (const MeasureUnit* u = measure_unit_by_alias(rest, true)) {
    return ParsedNumber{scan->value, NumberKind::measured, std::string(u->plural), std::nullopt};
  }
  return NotNumeric{};
}

// ---------------------------------------------------------------------------
// Rendering helpers.

std::string group_digits(const std::string& digits) {
  std::string out;
  int count = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (count != 0 && count % 3 == 0) out.push_back(',');
    out.push_back(*it);
    ++count;
  }
  return {out.rbegin(), out.rend()};
}

std::string render(const Rational& v, bool group = true) {
  if (auto s = format_decimal(v, group)) return *s;
  // Non-terminating values are rendered to three decimals; callers avoid this path.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", boost::rational_cast<double>(v));
  return buf;
}

std::optional<int> small_integer(const Rational& v) {
  if (!is_integer(v) || v.numerator() < 0 || v.numerator() > kMaxWordNumber) return std::nullopt;
  return static_cast<int>(v.numerator());
}

/// "5 million" style rendering for values >= 1e6 whose mantissa has at most
/// `max_decimals` decimals. Returns {mantissa, magnitude word}.
std::optional<std::pair<Rational, std::string_view>> magnitude_split(const Rational& v, int max_decimals = 2) {
  if (v < Rational(1000000)) return std::nullopt;
  Rational m;
  std::string_view word;
  if (v >= Rational(pow10(12))) {
    m = v / pow10(12);
    word = "trillion";
  } else if (v >= Rational(pow10(9))) {
    m = v / pow10(9);
    word = "billion";
  } else {
    m = v / pow10(6);
    word = "million";
  }
  auto scaled = m * pow10(max_decimals);
  if (!is_integer(scaled)) return std::nullopt;
  return std::make_pair(m, word);
}

struct Approx {
  std::string_view prefix;
  Rational value;
};

std::vector<Approx> approximations(const Rational& v) {
  std::vector<Approx> out;
  if (v <= Rational(0)) return out;
  for (int digits : {2, 1}) {
    Rational r = round_significant(v, digits);
    out.push_back({"about", r});
    out.push_back({"approximately", r});
    if (r > v) out.push_back({"almost", r});
  }
  return out;
}

std::string pluralize(const Rational& v, std::string_view singular, std::string_view plural) {
  return std::string(v == Rational(1) ? singular : plural);
}

VariantSet expand_cardinal(const ParsedNumber& p) {
  VariantSet out(render(p.value), "cardinal");
  if (is_integer(p.value) && p.value >= Rational(1000)) out.add(render(p.value, false), "digits");
  if (auto n = small_integer(p.value)) out.add(number_to_words(*n), "words");
  if (auto mag = magnitude_split(p.value)) {
    out.add(render(mag->first) + " " + std::string(mag->second), "magnitude");
    if (auto n = small_integer(mag->first)) out.add(number_to_words(*n) + " " + std::string(mag->second), "words");
  }
  for (const auto& a : approximations(p.value)) {
    std::string body = render(a.value);
    if (auto mag = magnitude_split(a.value)) body = render(mag->first) + " " + std::string(mag->second);
    out.add(std::string(a.prefix) + " " + body, "approximation");
  }
  return out;
}

VariantSet expand_ordinal(const ParsedNumber& p) {
  auto n = p.value.numerator();
  VariantSet out(std::to_string(n) + std::string(ordinal_suffix(n)), "ordinal");
  if (n >= 1 && n <= kMaxWordNumber) out.add(ordinal_words(static_cast<int>(n)), "words");
  return out;
}

VariantSet expand_percent(const ParsedNumber& p) {
  std::string num = render(p.value);
  VariantSet out(num + "%", "percent");
  out.add(num + " percent", "percent-word");
  if (auto n = small_integer(p.value)) out.add(number_to_words(*n) + " percent", "words");
  for (const auto& a : approximations(p.value)) {
    out.add(std::string(a.prefix) + " " + render(a.value) + "%", "approximation");
  }
  return out;
}

VariantSet expand_money(const ParsedNumber& p) {
  const Currency* c = currency_by_symbol(p.currency.value_or("$"));
  if (!c) c = &currencies().front();
  const std::string sym(c->symbol);
  const std::string word(c->word);
  const std::string grouped = render(p.value);

  VariantSet out;
  if (auto mag = magnitude_split(p.value)) {
    std::string m = render(mag->first) + " " + std::string(mag->second);
    out = VariantSet(sym + m, "money");
    out.add(m + " " + word, "currency-word");
    if (auto n = small_integer(mag->first))
      out.add(number_to_words(*n) + " " + std::string(mag->second) + " " + word, "words");
    out.add(sym + grouped, "digits");
    out.add(grouped + " " + word, "digits");
  } else {
    out = VariantSet(sym + grouped, "money");
    out.add(grouped + " " + word, "currency-word");
    if (auto n = small_integer(p.value)) out.add(number_to_words(*n) + " " + word, "words");
  }
  for (const auto& a : approximations(p.value)) {
    std::string body = render(a.value);
    if (auto mag = magnitude_split(a.value)) body = render(mag->first) + " " + std::string(mag->second);
    out.add(std::string(a.prefix) + " " + sym + body, "approximation");
  }
  return out;
}

VariantSet expand_duration(const ParsedNumber& p) {
  const TimeUnit* unit = time_unit_by_name(p.unit.value_or("minutes"));
  if (!unit) unit = time_unit_by_name("minutes");
  const TimeUnit* hours = time_unit_by_name("hours");
  const TimeUnit* minutes = time_unit_by_name("minutes");

  const std::string num = render(p.value);
  VariantSet out(num + " " + pluralize(p.value, unit->singular, unit->plural), "duration");
  out.add(num + " " + pluralize(p.value, unit->abbrev_singular, unit->abbrev), "abbreviation");
  if (auto n = small_integer(p.value))
    out.add(number_to_words(*n) + " " + pluralize(p.value, unit->singular, unit->plural), "words");

  const Rational total = p.value * unit->seconds;
  if (is_integer(total)) {
    const std::int64_t secs = total.numerator();
    if (secs >= 3600 && secs % 60 == 0) {
      const Rational h((secs / 3600));
      const Rational m((secs % 3600) / 60);
      const std::string hs = render(h);
      const std::string ms = render(m);
      if (m == Rational(0)) {
        if (unit != hours) {
          out.add(hs + " " + pluralize(h, "hour", "hours"), "unit-conversion");
          out.add(hs + " " + pluralize(h, "hr", "hrs"), "unit-conversion");
        }
      } else {
        const std::string hour_word = pluralize(h, "hour", "hours");
        const std::string hr_word = pluralize(h, "hr", "hrs");
        const std::string min_word = pluralize(m, "minute", "minutes");
        const std::string mn_word = pluralize(m, "min", "mins");
        out.add(hs + " " + hour_word + " and " + ms + " " + min_word, "unit-conversion");
        out.add(hs + " " + hour_word + " " + ms + " " + min_word, "unit-conversion");
        out.add(hs + " " + hr_word + " and " + ms + " " + mn_word, "unit-conversion");
        out.add(hs + " " + hr_word + " " + ms + " " + mn_word, "unit-conversion");
        out.add(hs + hr_word + " and " + ms + " " + mn_word, "unit-conversion");
      }
    }
    if (unit != minutes && secs >= 60 && secs % 60 == 0) {
      const Rational m(secs / 60);
      out.add(render(m) + " " + pluralize(m, "minute", "minutes"), "unit-conversion");
      out.add(render(m) + " " + pluralize(m, "min", "mins"), "unit-conversion");
    }
    if (unit->seconds == 1 && secs > 60 && secs < 3600 && secs % 60 != 0) {
      const Rational m(secs / 60);
      const Rational s(secs % 60);
      out.add(render(m) + " " + pluralize(m, "minute", "minutes") + " and " + render(s) + " " +
                  pluralize(s, "second", "seconds"),
              "unit-conversion");
      out.add(render(m) + " " + pluralize(m, "min", "mins") + " " + render(s) + " " + pluralize(s, "sec", "secs"),
              "unit-conversion");
    }
  }
  if (unit != hours && total >= Rational(3600)) {
    Rational h = total / 3600;
    if (!is_integer(h) && is_integer(h * 100)) {
      out.add(render(h) + " hours", "unit-conversion");
      out.add(render(h) + " hrs", "unit-conversion");
    }
  }
  for (const auto& a : approximations(p.value)) {
    out.add(std::string(a.prefix) + " " + render(a.value) + " " + std::string(unit->plural), "approximation");
  }
  return out;
}

VariantSet expand_measured(const ParsedNumber& p) {
  const MeasureUnit* u = measure_unit_by_name(p.unit.value_or(""));
  const std::string num = render(p.value);
  if (!u) return VariantSet(num + (p.unit ? " " + *p.unit : std::string()), "measured");
  const std::string name = pluralize(p.value, u->singular, u->plural);
  VariantSet out(num + " " + name, "measured");
  out.add(num + " " + std::string(u->abbrev), "abbreviation");
  if (!u->alt_plural.empty() && p.value != Rational(1)) out.add(num + " " + std::string(u->alt_plural), "spelling");
  if (is_integer(p.value) && p.value >= Rational(1000)) out.add(render(p.value, false) + " " + name, "digits");
  if (auto n = small_integer(p.value)) out.add(number_to_words(*n) + " " + name, "words");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(NumberKind k) noexcept {
  switch (k) {
    case NumberKind::cardinal: return "cardinal";
    case NumberKind::ordinal: return "ordinal";
    case NumberKind::percent: return "percent";
    case NumberKind::money: return "money";
    case NumberKind::duration: return "duration";
    case NumberKind::measured: return "measured";
  }
  return "cardinal";
}

std::string_view month_name(int month) { return kMonthNames.at(static_cast<std::size_t>(month - 1)); }
std::string_view month_abbrev(int month) { return kMonthAbbrevs.at(static_cast<std::size_t>(month - 1)); }

int days_in_month(int month, std::optional<int> year) noexcept {
  static constexpr std::array<int, 12> kDays = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return 0;
  if (month == 2 && year) {
    int y = *year;
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[static_cast<std::size_t>(month - 1)];
}

bool ParsedDate::valid() const noexcept {
  if (!year && !month && !day) return false;
  if (month && (*month < 1 || *month > 12)) return false;
  if (day) {
    if (!month) return false;
    if (*day < 1 || *day > days_in_month(*month, year)) return false;
  }
  return true;
}

bool ParsedNumber::valid() const noexcept {
  if (value < Rational(0)) return false;
  switch (kind) {
    case NumberKind::percent: return !unit;
    case NumberKind::money: return currency.has_value();
    case NumberKind::duration: return unit && time_unit_by_name(*unit) != nullptr;
    default: return true;
  }
}

NumericHint hint_for(EntityType t) noexcept {
  switch (t) {
    case EntityType::DATE: return NumericHint::date;
    case EntityType::MONEY: return NumericHint::money;
    case EntityType::QUANTITY: return NumericHint::measured;
    case EntityType::CARDINAL:
    case EntityType::ORDINAL:
    case EntityType::PERCENT:
    case EntityType::TIME: return NumericHint::number;
    default: return NumericHint::none;
  }
}

NumericParse parse_numeric(std::string_view text, NumericHint hint) {
  std::string s = collapse_ws(lower(text));
  while (!s.empty()) {
    if (auto d = parse_date(s, hint)) return *d;
    NumericParse n = parse_number(s, hint);
    if (!std::holds_alternative<NotNumeric>(n)) return n;
    // Retry without trailing sentence punctuation ("1966." or "138 minutes,").
    char last = s.back();
    if (last != '.' && last != ',' && last != ';' && last != '!' && last != '?') break;
    s.pop_back();
    while (!s.empty() && s.back() == ' ') s.pop_back();
  }
  return NotNumeric{};
}

// ---------------------------------------------------------------------------

VariantSet::VariantSet(std::string_view source, std::string_view generator) { add(source, generator); }

bool VariantSet::add(std::string_view text, std::string_view generator) {
  std::string key = normalize(text, NormalizationMode::light);
  if (key.empty()) return false;
  for (const auto& k : keys_)
    if (k == key) return false;
  keys_.push_back(std::move(key));
  entries_.emplace_back(text);
  provenance_.emplace_back(generator);
  return true;
}

void VariantSet::append(const VariantSet& other) {
  for (std::size_t i = 0; i < other.entries_.size(); ++i) add(other.entries_[i], other.provenance_[i]);
}

void VariantSet::truncate(std::size_t cap) {
  if (entries_.size() <= cap) return;
  entries_.resize(cap);
  provenance_.resize(cap);
  keys_.resize(cap);
}

bool VariantSet::contains(std::string_view text) const {
  std::string key = normalize(text, NormalizationMode::light);
  for (const auto& k : keys_)
    if (k == key) return true;
  return false;
}

std::optional<std::string> format_decimal(const Rational& value, bool group_thousands) {
  std::int64_t num = value.numerator();
  std::int64_t den = value.denominator();
  bool negative = num < 0;
  if (negative) num = -num;

  std::int64_t d = den;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return std::nullopt;
  int k = std::max(twos, fives);
  std::int64_t scale = pow10(k);
  std::int64_t scaled = num * (scale / den);
  std::string whole = std::to_string(scaled / scale);
  std::string out = group_thousands ? group_digits(whole) : whole;
  if (k > 0) {
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(k) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  }
  return negative ? "-" + out : out;
}

Rational round_significant(const Rational& value, int digits) {
  if (value <= Rational(0) || digits < 1) return value;
  int e = 0;
  while (value >= pow10r(e + 1)) ++e;
  while (value < pow10r(e)) --e;
  Rational scale = pow10r(e - digits + 1);
  Rational shifted = value / scale + Rational(1, 2);
  std::int64_t n = shifted.numerator() / shifted.denominator();
  return Rational(n) * scale;
}

VariantSet approximate_forms(const Rational& value) {
  VariantSet out(render(value), "value");
  for (const auto& a : approximations(value)) out.add(std::string(a.prefix) + " " + render(a.value), "approximation");
  return out;
}

VariantSet expand_date(const ParsedDate& d) {
  const auto y = d.year ? std::to_string(*d.year) : std::string();
  if (d.month && d.day) {
    const std::string full(month_name(*d.month));
    const std::string abbr(month_abbrev(*d.month));
    const std::string day = std::to_string(*d.day);
    const std::string dayth = day + std::string(ordinal_suffix(*d.day));
    if (d.year) {
      VariantSet out(full + " " + day + ", " + y, "month-day-year");
      out.add(day + " " + full + " " + y, "day-month-year");
      out.add(day + " " + full + ", " + y, "day-month-year");
      out.add(abbr + " " + day + ", " + y, "abbreviation");
      out.add(abbr + ". " + day + ", " + y, "abbreviation");
      out.add(day + " " + abbr + " " + y, "abbreviation");
      out.add(day + " " + abbr + "., " + y, "abbreviation");
      out.add(full + " " + dayth + ", " + y, "ordinal-day");
      out.add(dayth + " " + full + " " + y, "ordinal-day");
      out.add(abbr + " " + dayth + ", " + y, "ordinal-day");
      out.add(full + " " + y, "month-year");
      out.add(abbr + " " + y, "month-year");
      out.add(y, "year");
      return out;
    }
    VariantSet out(full + " " + day, "month-day");
    out.add(day + " " + full, "day-month");
    out.add(abbr + " " + day, "abbreviation");
    out.add(full + " " + dayth, "ordinal-day");
    out.add(dayth + " " + full, "ordinal-day");
    out.add(abbr + " " + dayth, "ordinal-day");
    return out;
  }
  if (d.month) {
    const std::string full(month_name(*d.month));
    const std::string abbr(month_abbrev(*d.month));
    if (!d.year) {
      VariantSet out(full, "month");
      out.add(abbr, "abbreviation");
      return out;
    }
    VariantSet out(full + " " + y, "month-year");
    out.add(abbr + " " + y, "abbreviation");
    out.add(full + ", " + y, "month-year");
    out.add(abbr + ". " + y, "abbreviation");
    out.add(y, "year");
    return out;
  }
  return VariantSet(y, "year");
}

VariantSet expand_number(const ParsedNumber& p) {
  switch (p.kind) {
    case NumberKind::cardinal: return expand_cardinal(p);
    case NumberKind::ordinal: return expand_ordinal(p);
    case NumberKind::percent: return expand_percent(p);
    case NumberKind::money: return expand_money(p);
    case NumberKind::duration: return expand_duration(p);
    case NumberKind::measured: return expand_measured(p);
  }
  return VariantSet(render(p.value), "number");
}

VariantSet rule_expand(std::string_view answer, EntityType t, std::size_t cap) {
  VariantSet out(answer, "source");
  if (!is_numeric(t)) return out;
  NumericParse parsed = parse_numeric(answer, hint_for(t));
  if (const auto* d = std::get_if<ParsedDate>(&parsed)) {
    out.append(expand_date(*d));
  } else if (const auto* n = std::get_if<ParsedNumber>(&parsed)) {
    out.append(expand_number(*n));
  }
  out.truncate(std::max<std::size_t>(cap, 1));
  return out;
}

}  // namespace entqa
