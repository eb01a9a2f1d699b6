#include "hamse/rational.h"

#include <charconv>

namespace hamse {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(*num, *den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) return std::nullopt;
    for (char c : frac)
      if (c < '0' || c > '9') return std::nullopt;
    bool negative = !whole.empty() && whole.front() == '-';
    auto w = whole.empty() || whole == "-" ? std::optional<std::int64_t>(0) : parse_int(whole);
    auto f = parse_int(frac);
    if (!w || !f) return std::nullopt;
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational magnitude = Rational(negative ? -*w : *w) + Rational(*f, scale);
    return negative ? -magnitude : magnitude;
  }
  auto v = parse_int(text);
  if (!v) return std::nullopt;
  return Rational(*v);
}

std::optional<std::string> to_decimal_string(const Rational& r) {
  std::int64_t den = r.denominator();
  int twos = 0, fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1) return std::nullopt;
  int digits = std::max(twos, fives);
  bool negative = r < 0;
  Rational a = negative ? -r : r;
  std::int64_t whole = a.numerator() / a.denominator();
  Rational frac = a - whole;
  std::string out = (negative ? "-" : "") + std::to_string(whole);
  if (digits == 0) return out + ".0";
  out += '.';
  for (int i = 0; i < digits; ++i) {
    frac *= 10;
    std::int64_t d = frac.numerator() / frac.denominator();
    out += static_cast<char>('0' + d);
    frac -= d;
  }
  return out;
}

}  // namespace hamse
